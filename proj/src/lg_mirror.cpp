#include "dpgamma/lg_mirror.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace dpgamma {

void LaurentPoly::add_term(const std::vector<int>& exponent, const Real& coeff) {
    if (exponent.size() != n_) throw std::invalid_argument("exponent vector has wrong length");
    Real& c = terms_[exponent];
    c += coeff;
    if (c == 0) terms_.erase(exponent);
}

namespace {

template <class C>
C ipow(const C& z, int k) {
    C r(1), b = z;
    unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
    while (e) {
        if (e & 1U) r *= b;
        e >>= 1U;
        if (e) b *= b;
    }
    return k < 0 ? C(1) / r : r;
}

template <class C>
C monomial(const std::vector<C>& z, const std::vector<int>& b) {
    C v(1);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (b[i] != 0) v *= ipow(z[i], b[i]);
    return v;
}

// Solve a x = y in place by Gaussian elimination with partial pivoting; false if singular.
template <class C, class R>
bool solve(std::vector<std::vector<C>> a, std::vector<C>& y, R (*mag)(const C&)) {
    const std::size_t n = y.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (mag(a[i][c]) > mag(a[p][c])) p = i;
        if (mag(a[p][c]) == R(0)) return false;
        std::swap(a[p], a[c]);
        std::swap(y[p], y[c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            const C f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            y[i] -= f * y[c];
        }
    }
    for (std::size_t c = n; c-- > 0;) {
        for (std::size_t j = c + 1; j < n; ++j) y[c] -= a[c][j] * y[j];
        y[c] /= a[c][c];
    }
    return true;
}

double mag_d(const std::complex<double>& z) { return std::abs(z); }
Real mag_r(const Complex& z) { return abs(z); }
Real mag_real(const Real& x) { return abs(x); }

// Toric gradient F_i = z_i df/dz_i and its Jacobian dF_i/dz_j.
template <class C>
void toric_system(const LaurentPoly& f, const std::vector<std::pair<std::vector<int>, C>>& terms, const std::vector<C>& z,
                  std::vector<C>& F, std::vector<std::vector<C>>& J) {
    const std::size_t n = f.nvars();
    F.assign(n, C(0));
    J.assign(n, std::vector<C>(n, C(0)));
    for (const auto& [b, c] : terms) {
        const C m = c * monomial(z, b);
        for (std::size_t i = 0; i < n; ++i) {
            if (b[i] == 0) continue;
            F[i] += C(static_cast<double>(b[i])) * m;
            for (std::size_t j = 0; j < n; ++j)
                if (b[j] != 0) J[i][j] += C(static_cast<double>(b[i] * b[j])) * m / z[j];
        }
    }
}

template <class C>
std::vector<std::pair<std::vector<int>, C>> typed_terms(const LaurentPoly& f) {
    std::vector<std::pair<std::vector<int>, C>> out;
    for (const auto& [b, c] : f.terms()) {
        if constexpr (std::is_same_v<C, std::complex<double>>)
            out.emplace_back(b, C(c.template convert_to<double>()));
        else
            out.emplace_back(b, C(c));
    }
    return out;
}

long cross(const std::vector<int>& o, const std::vector<int>& a, const std::vector<int>& b) {
    return static_cast<long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long>(a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

Complex LaurentPoly::eval(const std::vector<Complex>& z) const {
    if (z.size() != n_) throw std::invalid_argument("point has wrong dimension");
    Complex v(0);
    for (const auto& [b, c] : terms_) v += Complex(c) * monomial(z, b);
    return v;
}

Real LaurentPoly::eval_log(const std::vector<Real>& u) const {
    Real v = 0;
    for (const auto& [b, c] : terms_) {
        Real e = 0;
        for (std::size_t i = 0; i < n_; ++i) e += b[i] * u[i];
        v += c * exp(e);
    }
    return v;
}

std::string LaurentPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [b, c] = *it;
        os << (first ? "" : " + ");
        first = false;
        if (c != 1) os << c.str(6) << '*';
        std::string num, den;
        for (std::size_t i = 0; i < n_; ++i) {
            if (b[i] == 0) continue;
            std::string v = "z" + std::to_string(i + 1);
            if (std::abs(b[i]) != 1) v += "^" + std::to_string(std::abs(b[i]));
            (b[i] > 0 ? num : den) += (b[i] > 0 ? (num.empty() ? "" : "*") : (den.empty() ? "" : "*")) + v;
        }
        if (num.empty()) num = "1";
        os << num;
        if (!den.empty()) os << "/(" << den << ')';
    }
    return os.str();
}

LaurentPoly builtin_potential(SurfaceId s) {
    LaurentPoly f(2);
    auto add = [&](int a, int b) { f.add_term({a, b}, Real(1)); };
    switch (s) {
        case SurfaceId::P2:
            add(1, 0), add(0, 1), add(-1, -1);
            break;
        case SurfaceId::P1xP1:
            add(1, 0), add(-1, 0), add(0, 1), add(0, -1);
            break;
        case SurfaceId::X3:
            add(1, 1);
            [[fallthrough]];
        case SurfaceId::X2:
            add(0, -1);
            [[fallthrough]];
        case SurfaceId::X1:
            add(1, 0), add(0, 1), add(-1, 0), add(-1, -1);
            break;
        default: throw NoMirrorAvailable(surface_name(s) + " is not toric; no Laurent mirror is built in");
    }
    return f;
}

LaurentPoly builtin_potential(const std::vector<int>& weights) {
    if (weights.size() < 2 || weights[0] != 1) throw std::invalid_argument("weights must be a full vector (1, w_1, .., w_N) with N >= 1");
    for (int w : weights)
        if (w <= 0) throw std::invalid_argument("weights must be positive");
    const std::size_t n = weights.size() - 1;
    LaurentPoly f(n);
    std::vector<int> last(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        f.add_term(e, Real(1));
        last[i] = -weights[i + 1];
    }
    f.add_term(last, Real(1));
    return f;
}

std::size_t expected_critical_count(const LaurentPoly& f) {
    std::vector<std::vector<int>> pts;
    for (const auto& [b, c] : f.terms()) pts.push_back(b);
    const std::size_t n = f.nvars();
    if (n == 1) {
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
        return static_cast<std::size_t>((*hi)[0] - (*lo)[0]);
    }
    if (pts.size() == n + 1) {
        std::vector<std::vector<Real>> a(n, std::vector<Real>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = pts[i + 1][j] - pts[0][j];
        Real det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && a[p][c] == 0) ++p;
            if (p == n) return 0;
            if (p != c) std::swap(a[p], a[c]), det = -det;
            det *= a[c][c];
            for (std::size_t i = c + 1; i < n; ++i) {
                const Real fct = a[i][c] / a[c][c];
                for (std::size_t j = c; j < n; ++j) a[i][j] -= fct * a[c][j];
            }
        }
        return static_cast<std::size_t>(llround(abs(det)));
    }
    if (n == 2) {
        std::sort(pts.begin(), pts.end());
        std::vector<std::vector<int>> hull(2 * pts.size());
        std::size_t k = 0;
        for (const auto& p : pts) {
            while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
            hull[k++] = p;
        }
        for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
            while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
            hull[k++] = pts[i];
        }
        hull.resize(k - 1);
        long twice_area = 0;
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const auto& p = hull[i];
            const auto& q = hull[(i + 1) % hull.size()];
            twice_area += static_cast<long>(p[0]) * q[1] - static_cast<long>(q[0]) * p[1];
        }
        return static_cast<std::size_t>(std::labs(twice_area));
    }
    throw std::invalid_argument("Newton polytope volume only implemented for n <= 2 or simplices");
}

ConifoldReport conifold_point(const LaurentPoly& f, const Real& tol) {
    const std::size_t n = f.nvars();
    for (const auto& [b, c] : f.terms())
        if (c <= 0) throw NotProper("conifold search needs positive coefficients");
    {
        std::vector<std::vector<Real>> a;
        for (const auto& [b, c] : f.terms()) a.emplace_back(b.begin(), b.end());
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
            std::size_t p = rank;
            while (p < a.size() && a[p][col] == 0) ++p;
            if (p == a.size()) continue;
            std::swap(a[p], a[rank]);
            for (std::size_t i = rank + 1; i < a.size(); ++i) {
                const Real fct = a[i][col] / a[rank][col];
                for (std::size_t j = col; j < n; ++j) a[i][j] -= fct * a[rank][j];
            }
            ++rank;
        }
        if (rank < n) throw NotProper("exponent vectors do not span R^n");
    }
    std::vector<Real> u(n, Real(0));
    ConifoldReport rep;
    const Real stop = pow(Real(10), -static_cast<int>(kWorkingDigits) + 8);
    auto grad_hess = [&](const std::vector<Real>& x, std::vector<Real>& g, std::vector<std::vector<Real>>& h) {
        g.assign(n, Real(0));
        h.assign(n, std::vector<Real>(n, Real(0)));
        for (const auto& [b, c] : f.terms()) {
            Real e = 0;
            for (std::size_t i = 0; i < n; ++i) e += b[i] * x[i];
            const Real m = c * exp(e);
            for (std::size_t i = 0; i < n; ++i) {
                g[i] += b[i] * m;
                for (std::size_t j = 0; j < n; ++j) h[i][j] += b[i] * b[j] * m;
            }
        }
    };
    std::vector<Real> g;
    std::vector<std::vector<Real>> h;
    for (rep.iterations = 0; rep.iterations < 200; ++rep.iterations) {
        grad_hess(u, g, h);
        Real gn = 0;
        for (const auto& x : g) gn = std::max(gn, Real(abs(x)));
        if (gn < stop) break;
        std::vector<Real> step(g);
        for (auto& x : step) x = -x;
        if (!solve(h, step, mag_real)) throw NotProper("singular Hessian in log coordinates");
        const Real g0 = f.eval_log(u);
        Real t = 1;
        std::vector<Real> trial(n);
        for (int ls = 0; ls < 60; ++ls, t /= 2) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + t * step[i];
            if (f.eval_log(trial) <= g0) break;
        }
        u = trial;
        for (const auto& x : u)
            if (abs(x) > 50) throw NotProper("minimizer escapes to infinity");
    }
    for (const auto& x : u)
        if (abs(x) > 50) throw NotProper("minimizer escapes to infinity");
    grad_hess(u, g, h);
    rep.gradient_norm = 0;
    for (const auto& x : g) rep.gradient_norm = std::max(rep.gradient_norm, Real(abs(x)));
    // Cholesky pivots certify positive definiteness.
    bool pd = true;
    rep.min_hessian_pivot = std::numeric_limits<double>::max();
    std::vector<std::vector<Real>> l(n, std::vector<Real>(n, Real(0)));
    for (std::size_t j = 0; j < n && pd; ++j) {
        Real s = h[j][j];
        for (std::size_t k = 0; k < j; ++k) s -= l[j][k] * l[j][k];
        if (!(s > 0)) {
            pd = false;
            rep.min_hessian_pivot = s;
            break;
        }
        rep.min_hessian_pivot = std::min(rep.min_hessian_pivot, s);
        l[j][j] = sqrt(s);
        for (std::size_t i = j + 1; i < n; ++i) {
            Real t = h[i][j];
            for (std::size_t k = 0; k < j; ++k) t -= l[i][k] * l[j][k];
            l[i][j] = t / l[j][j];
        }
    }
    rep.z_con.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.z_con[i] = exp(u[i]);
    rep.T_con = f.eval_log(u);
    rep.certified = pd && rep.gradient_norm <= tol;
    return rep;
}

std::vector<CriticalPoint> critical_points(const LaurentPoly& f, std::uint64_t seed, const Real& tol, std::size_t starts) {
    const std::size_t n = f.nvars();
    if (n == 0 || n > 3) throw std::invalid_argument("critical_points supports 1 <= n <= 3 variables");
    if (starts < kDefaultStarts) throw std::invalid_argument("at least 200 starts are required");
    const std::size_t expected = expected_critical_count(f);
    using CD = std::complex<double>;
    const auto td = typed_terms<CD>(f);
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double pi = 3.14159265358979323846;

    std::vector<std::vector<CD>> roots;
    std::vector<CD> F;
    std::vector<std::vector<CD>> J;
    for (std::size_t s = 0; s < starts; ++s) {
        std::vector<CD> z(n);
        for (auto& x : z) {
            const double rad = -1.5 + 3.0 * uniform();
            const double ang = -pi + 2 * pi * uniform();
            x = std::polar(std::exp(rad), ang);
        }
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            toric_system(f, td, z, F, J);
            std::vector<CD> delta(F);
            if (!solve(J, delta, mag_d)) break;
            // Deflation: Newton step for m(z) F(z), m = prod_k (|z - r_k|^-2 + 1).
            double sdot = 0;
            for (const auto& r : roots) {
                double d2 = 0;
                for (std::size_t i = 0; i < n; ++i) d2 += std::norm(z[i] - r[i]);
                const double g = 1.0 / d2 + 1.0;
                double ip = 0;
                for (std::size_t i = 0; i < n; ++i) ip += std::real(std::conj(z[i] - r[i]) * delta[i]);
                sdot += -2.0 * ip / (d2 * d2) / g;
            }
            const double scale = 1.0 / (1.0 + sdot);
            double step = 0, size = 0;
            for (std::size_t i = 0; i < n; ++i) {
                z[i] -= scale * delta[i];
                step = std::max(step, std::abs(scale * delta[i]));
                size = std::max(size, std::abs(z[i]));
            }
            bool escaped = false;
            for (const auto& x : z) escaped = escaped || std::abs(x) > 1e8 || std::abs(x) < 1e-8 || !std::isfinite(std::abs(x));
            if (escaped) break;
            if (step < 1e-13 * (1 + size)) {
                converged = true;
                break;
            }
        }
        if (!converged) continue;
        toric_system(f, td, z, F, J);
        double res = 0;
        for (const auto& x : F) res = std::max(res, std::abs(x));
        if (res > 1e-8) continue;
        bool fresh = true;
        for (const auto& r : roots) {
            double d = 0;
            for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(z[i] - r[i]));
            fresh = fresh && d > 1e-7;
        }
        if (fresh) roots.push_back(z);
    }

    const auto tr = typed_terms<Complex>(f);
    const Real polish_stop = pow(Real(10), -static_cast<int>(kWorkingDigits) + 5);
    std::vector<CriticalPoint> out;
    std::vector<Complex> Fh;
    std::vector<std::vector<Complex>> Jh;
    for (const auto& r : roots) {
        std::vector<Complex> z;
        for (const auto& x : r) z.emplace_back(Real(x.real()), Real(x.imag()));
        for (int it = 0; it < 40; ++it) {
            toric_system(f, tr, z, Fh, Jh);
            std::vector<Complex> delta(Fh);
            if (!solve(Jh, delta, mag_r)) break;
            Real step = 0, size = 0;
            for (std::size_t i = 0; i < n; ++i) {
                z[i] -= delta[i];
                step = std::max(step, Real(abs(delta[i])));
                size = std::max(size, Real(abs(z[i])));
            }
            if (step < polish_stop * (1 + size)) break;
        }
        bool dup = false;
        for (const auto& c : out) {
            Real d = 0;
            for (std::size_t i = 0; i < n; ++i) d = std::max(d, Real(abs(c.point[i] - z[i])));
            dup = dup || d <= 10 * tol;
        }
        if (!dup) out.push_back({z, f.eval(z)});
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (real(a.value) != real(b.value)) return real(a.value) > real(b.value);
        if (imag(a.value) != imag(b.value)) return imag(a.value) > imag(b.value);
        for (std::size_t i = 0; i < a.point.size(); ++i) {
            if (real(a.point[i]) != real(b.point[i])) return real(a.point[i]) < real(b.point[i]);
            if (imag(a.point[i]) != imag(b.point[i])) return imag(a.point[i]) < imag(b.point[i]);
        }
        return false;
    });
    if (out.size() < expected)
        throw IncompleteEnumeration("found " + std::to_string(out.size()) + " of " + std::to_string(expected) + " critical points");
    return out;
}

WpsClosedForm wps_closed_form(const std::vector<int>& weights) {
    if (weights.empty()) throw std::invalid_argument("weights must be nonempty");
    WpsClosedForm w;
    Real log_prod = 0;
    for (int x : weights) {
        if (x <= 0) throw std::invalid_argument("weights must be positive");
        w.index += x;
        log_prod += x * log(Real(x));
    }
    const Real k = exp(log_prod / w.index);  // (prod w^w)^{1/r}
    w.c = w.index / k;
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    for (int j = 0; j < w.index; ++j) {
        const Complex xi(cos(two_pi * j / w.index), sin(two_pi * j / w.index));
        std::vector<Complex> p;
        for (std::size_t i = 1; i < weights.size(); ++i) p.push_back(xi * Complex(Real(weights[i]) / k));
        w.points.push_back(std::move(p));
    }
    return w;
}

BModelOReport bmodel_o_check(const LaurentPoly& f, const Real& tol, std::uint64_t seed) {
    BModelOReport rep;
    const auto crit = critical_points(f, seed, tol);
    rep.conifold = conifold_point(f, tol);
    rep.T_con = rep.conifold.T_con;
    rep.cond1 = true;
    std::size_t over = 0;
    bool at_con = false;
    for (const auto& c : crit) {
        rep.critical_values.push_back(c.value);
        rep.cond1 = rep.cond1 && abs(c.value) <= rep.T_con + tol;
        if (abs(c.value - Complex(rep.T_con)) <= tol) {
            ++over;
            Real d = 0;
            for (std::size_t i = 0; i < c.point.size(); ++i) d = std::max(d, Real(abs(c.point[i] - Complex(rep.conifold.z_con[i]))));
            at_con = d <= 10 * tol;
        }
    }
    rep.cond2 = over == 1 && at_con;
    return rep;
}

std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) minv[j] = cur, way[j] = j0;
                if (minv[j] < delta) delta = minv[j], j1 = j;
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j])
                    u[p[j]] += delta, v[j] -= delta;
                else
                    minv[j] -= delta;
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<std::size_t> assign(n);
    for (std::size_t j = 1; j <= n; ++j) assign[p[j] - 1] = j - 1;
    return assign;
}

SpectrumMatch mirror_spectrum_match(SurfaceId s, const Real& tol, std::uint64_t seed) {
    const LaurentPoly f = builtin_potential(s);
    const auto spec = spectrum(builtin_operator(s), tol);
    std::vector<Complex> eig;
    std::vector<unsigned> mult;
    for (const auto& e : spec.eigenvalues)
        for (unsigned k = 0; k < e.multiplicity; ++k) eig.push_back(e.value);
    const auto crit = critical_points(f, seed, tol);
    SpectrumMatch m;
    if (crit.size() != eig.size()) return m;
    std::vector<std::vector<double>> cost(eig.size(), std::vector<double>(crit.size()));
    for (std::size_t i = 0; i < eig.size(); ++i)
        for (std::size_t j = 0; j < crit.size(); ++j) cost[i][j] = abs(eig[i] - crit[j].value).convert_to<double>();
    const auto assign = hungarian(cost);
    for (std::size_t i = 0; i < eig.size(); ++i) {
        const Complex& u = crit[assign[i]].value;
        m.pairs.emplace_back(eig[i], u);
        m.max_deviation = std::max(m.max_deviation, Real(abs(eig[i] - u)));
    }
    m.multiplicities_align = true;
    for (const auto& e : spec.eigenvalues) {
        unsigned near = 0;
        for (const auto& c : crit)
            if (abs(c.value - e.value) <= tol) ++near;
        m.multiplicities_align = m.multiplicities_align && near == e.multiplicity;
    }
    m.matched = m.max_deviation <= tol && m.multiplicities_align;
    return m;
}

}  // namespace dpgamma
