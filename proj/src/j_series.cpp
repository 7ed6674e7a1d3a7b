#include "dpgamma/j_series.hpp"

#include "dpgamma/lg_mirror.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>

namespace dpgamma {

int CIModel::ambient_dim() const {
    int n = 0;
    for (const auto& f : factors) n += f.dim();
    return n;
}

std::vector<int> CIModel::index_form() const {
    std::vector<int> k;
    for (const auto& f : factors) k.push_back(std::accumulate(f.weights.begin(), f.weights.end(), 0));
    for (const auto& row : degrees)
        for (std::size_t i = 0; i < k.size(); ++i) k[i] -= row[i];
    return k;
}

namespace {

CIModel checked(CIModel m) {
    for (const auto& row : m.degrees)
        if (row.size() != m.factors.size()) throw std::invalid_argument("degree row has wrong length");
    for (int k : m.index_form())
        if (k < 1) throw IndexNotPositive(m.name + " has a non-positive index component");
    return m;
}

std::string weights_name(const std::vector<int>& w) {
    std::string s = "P(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

}  // namespace

CIModel ci_model(SurfaceId s) {
    const AmbientFactor p1{{1, 1}}, p2{{1, 1, 1}};
    CIModel m;
    m.name = surface_name(s);
    m.surface = s;
    switch (s) {
        case SurfaceId::X1:
            m.factors = {p1, p2};
            m.degrees = {{1, 1}};
            break;
        case SurfaceId::X2:
            m.factors = {p1, p1, p2};
            m.degrees = {{1, 0, 1}, {0, 1, 1}};
            break;
        case SurfaceId::X3:
            m.factors = {p2, p2};
            m.degrees = {{1, 1}, {1, 1}};
            break;
        case SurfaceId::X5:
            m.factors = {{{1, 1, 1, 1, 1}}};
            m.degrees = {{2}, {2}};
            break;
        case SurfaceId::X6:
            m.factors = {{{1, 1, 1, 1}}};
            m.degrees = {{3}};
            break;
        case SurfaceId::X7:
            m.factors = {{{1, 1, 1, 2}}};
            m.degrees = {{4}};
            break;
        case SurfaceId::X8:
            m.factors = {{{1, 1, 2, 3}}};
            m.degrees = {{6}};
            break;
        case SurfaceId::X4:
            throw UnsupportedModel("X4 sits in Gr(2,5); no Lefschetz model for that ambient");
        default: throw UnsupportedModel(surface_name(s) + " has no complete-intersection model here");
    }
    return checked(m);
}

CIModel wps_model(const std::vector<int>& weights) {
    if (weights.size() < 2) throw std::invalid_argument("weights must be a full vector (1, w_1, .., w_N)");
    for (int w : weights)
        if (w <= 0) throw std::invalid_argument("weights must be positive");
    CIModel m;
    m.name = weights_name(weights);
    m.factors = {{weights}};
    return checked(m);
}

Real& AmbientClass::quad(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return c2[i * m - i * (i - 1) / 2 + (j - i)];
}

const Real& AmbientClass::quad(std::size_t i, std::size_t j) const { return const_cast<AmbientClass*>(this)->quad(i, j); }

AmbientClass& AmbientClass::operator+=(const AmbientClass& o) {
    c0 += o.c0;
    for (std::size_t i = 0; i < c1.size(); ++i) c1[i] += o.c1[i];
    for (std::size_t i = 0; i < c2.size(); ++i) c2[i] += o.c2[i];
    return *this;
}

AmbientClass& AmbientClass::operator*=(const Real& s) {
    c0 *= s;
    for (auto& x : c1) x *= s;
    for (auto& x : c2) x *= s;
    return *this;
}

Real AmbientClass::max_abs() const {
    Real v = abs(c0);
    for (const auto& x : c1) v = std::max(v, Real(abs(x)));
    for (const auto& x : c2) v = std::max(v, Real(abs(x)));
    return v;
}

namespace {

// Linear factor block prod_{k=1}^{form.d} (form.h + k), in the numerator (+1) or denominator (-1).
struct Block {
    int sign;
    std::vector<int> form;
};

std::vector<Block> blocks(const CIModel& m) {
    std::vector<Block> out;
    for (const auto& row : m.degrees) out.push_back({+1, row});
    for (std::size_t i = 0; i < m.factors.size(); ++i)
        for (int w : m.factors[i].weights) {
            std::vector<int> f(m.factors.size(), 0);
            f[i] = w;
            out.push_back({-1, f});
        }
    return out;
}

void kill_nilpotent(const CIModel& m, AmbientClass& x) {
    for (std::size_t i = 0; i < m.factors.size(); ++i)
        if (m.factors[i].dim() < 2) x.quad(i, i) = 0;
}

AmbientClass multiply(const CIModel& m, const AmbientClass& a, const AmbientClass& b) {
    AmbientClass c(a.m);
    c.c0 = a.c0 * b.c0;
    for (std::size_t i = 0; i < a.m; ++i) c.c1[i] = a.c0 * b.c1[i] + a.c1[i] * b.c0;
    for (std::size_t i = 0; i < a.m; ++i)
        for (std::size_t j = i; j < a.m; ++j) {
            Real v = a.c0 * b.quad(i, j) + a.quad(i, j) * b.c0 + a.c1[i] * b.c1[j];
            if (i != j) v += a.c1[j] * b.c1[i];
            c.quad(i, j) = v;
        }
    kill_nilpotent(m, c);
    return c;
}

// exp(L + Q) mod degree 3, L = sum lam_i h_i, Q = sum_{i<=j} q_ij h_i h_j.
void add_exp(AmbientClass& acc, const Real& s, const std::vector<Real>& lam, const std::vector<Real>& q) {
    acc.c0 += s;
    const std::size_t m = lam.size();
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        acc.c1[i] += s * lam[i];
        for (std::size_t j = i; j < m; ++j, ++k) acc.c2[k] += s * (q[k] + (i == j ? lam[i] * lam[i] / 2 : lam[i] * lam[j]));
    }
}

void enumerate_degrees(const std::vector<int>& kappa, std::size_t i, int rem, std::vector<int>& d,
                       std::vector<std::vector<int>>& out) {
    if (i + 1 == kappa.size()) {
        if (rem % kappa[i] == 0) {
            d[i] = rem / kappa[i];
            out.push_back(d);
        }
        return;
    }
    for (int di = 0; di * kappa[i] <= rem; ++di) {
        d[i] = di;
        enumerate_degrees(kappa, i + 1, rem - di * kappa[i], d, out);
    }
}

int dot(const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Tables {
    std::vector<Real> fact{Real(1)}, h1{Real(0)}, h2{Real(0)};
    void grow(std::size_t n) {
        while (fact.size() <= n) {
            const Real k(static_cast<double>(fact.size()));
            fact.push_back(fact.back() * k);
            h1.push_back(h1.back() + 1 / k);
            h2.push_back(h2.back() + 1 / (k * k));
        }
    }
};

Tables& tables() {
    static thread_local Tables t;
    return t;
}

}  // namespace

JSeries::JSeries(CIModel model) : model_(std::move(model)) {
    std::vector<std::vector<int>> ds;
    std::vector<int> d(model_.factors.size());
    enumerate_degrees(model_.index_form(), 0, 1, d, ds);
    const auto bl = blocks(model_);
    for (const auto& deg : ds) {
        Rat term(1);
        for (const auto& b : bl) {
            BigInt f(1);
            for (int k = 2; k <= dot(b.form, deg); ++k) f *= k;
            term = b.sign > 0 ? Rat(term * f) : Rat(term / f);
        }
        c0_ += term;
    }
}

void JSeries::extend(std::size_t n) {
    const std::size_t m = model_.factors.size();
    const auto kappa = model_.index_form();
    const auto bl = blocks(model_);
    Tables& tab = tables();
    while (coeffs_.size() <= n) {
        const int k = static_cast<int>(coeffs_.size());
        std::vector<std::vector<int>> ds;
        std::vector<int> d(m);
        enumerate_degrees(kappa, 0, k, d, ds);
        int top = 0;
        for (const auto& deg : ds)
            for (const auto& b : bl) top = std::max(top, dot(b.form, deg));
        tab.grow(static_cast<std::size_t>(top));

        // Identical blocks are merged; per-count scalars, log-derivative and quadratic parts are tabulated.
        struct Group {
            int sign, mult;
            std::vector<int> form;
            std::vector<Real> scale, lin, quad_diag, quad_off;
            std::vector<std::pair<std::size_t, int>> vars;
            std::vector<std::tuple<std::size_t, int, bool>> pairs;  // (index into q, form_i form_j, diagonal)
        };
        std::vector<Group> groups;
        for (const auto& b : bl) {
            auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.sign == b.sign && g.form == b.form; });
            if (it != groups.end()) {
                ++it->mult;
                continue;
            }
            Group g{b.sign, 1, b.form, {}, {}, {}, {}, {}, {}};
            std::size_t idx = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (b.form[i] != 0) g.vars.emplace_back(i, b.form[i]);
                for (std::size_t j = i; j < m; ++j, ++idx) {
                    const int ff = b.form[i] * b.form[j];
                    if (ff != 0 && !(i == j && model_.factors[i].dim() < 2)) g.pairs.emplace_back(idx, ff, i == j);
                }
            }
            groups.push_back(std::move(g));
        }
        for (auto& g : groups) {
            for (std::size_t c = 0; c <= static_cast<std::size_t>(top); ++c) {
                const Real f = pow(tab.fact[c], g.mult);
                g.scale.push_back(g.sign > 0 ? f : Real(1 / f));
                g.lin.push_back(g.sign * g.mult * tab.h1[c]);
                g.quad_off.push_back(-g.sign * g.mult * tab.h2[c]);
                g.quad_diag.push_back(g.quad_off.back() / 2);
            }
        }
        std::vector<char> live(m * (m + 1) / 2, 1);
        for (std::size_t i = 0; i < m; ++i)
            if (model_.factors[i].dim() < 2) live[i * m - i * (i - 1) / 2] = 0;

        auto sum_range = [&](std::size_t lo, std::size_t hi, AmbientClass& acc) {
            std::vector<Real> lam(m), q(m * (m + 1) / 2);
            Real s, v;
            for (std::size_t t = lo; t < hi; ++t) {
                const auto& deg = ds[t];
                s = 1;
                for (auto& x : lam) x = 0;
                for (auto& x : q) x = 0;
                for (const auto& g : groups) {
                    const auto c = static_cast<std::size_t>(dot(g.form, deg));
                    if (c == 0) continue;
                    s *= g.scale[c];
                    for (const auto& [i, w] : g.vars) {
                        if (w == 1)
                            lam[i] += g.lin[c];
                        else
                            lam[i] += w * g.lin[c];
                    }
                    for (const auto& [idx, ff, diag] : g.pairs) {
                        const Real& base = diag ? g.quad_diag[c] : g.quad_off[c];
                        if (ff == 1)
                            q[idx] += base;
                        else
                            q[idx] += ff * base;
                    }
                }
                acc.c0 += s;
                std::size_t k = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    v = s * lam[i];
                    acc.c1[i] += v;
                    for (std::size_t j = i; j < m; ++j, ++k) {
                        if (!live[k]) continue;
                        acc.c2[k] += s * q[k];
                        acc.c2[k] += i == j ? Real(v * lam[i] / 2) : Real(v * lam[j]);
                    }
                }
            }
        };

        AmbientClass total(m);
        constexpr std::size_t chunk = 2048;
        const std::size_t nchunks = (ds.size() + chunk - 1) / chunk;
        if (nchunks <= 1) {
            sum_range(0, ds.size(), total);
        } else {
            // Fixed chunking keeps the summation order independent of the thread count.
            std::vector<AmbientClass> part(nchunks, AmbientClass(m));
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t c; (c = next++) < nchunks;) sum_range(c * chunk, std::min(ds.size(), (c + 1) * chunk), part[c]);
            };
            const unsigned nt = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(nchunks)));
            std::vector<std::thread> pool;
            for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
            for (const auto& p : part) total += p;
        }
        kill_nilpotent(model_, total);
        coeffs_.push_back(std::move(total));
    }
}

const AmbientClass& JSeries::coefficient(std::size_t n) {
    extend(n);
    return coeffs_[n];
}

JSeries lefschetz_series(const CIModel& model, std::size_t n_max) {
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
    JSeries s(model);
    s.coefficient(n_max);
    return s;
}

Evaluation evaluate(JSeries& series, const Real& t, int guard_digits, std::size_t n_max) {
    if (!(t > 0)) throw std::invalid_argument("t must be positive");
    if (guard_digits > static_cast<int>(kWorkingDigits) - 5)
        throw PrecisionExhausted(std::to_string(guard_digits) + " guard digits exceed working precision");
    const CIModel& model = series.model();
    const std::size_t m = model.factors.size();
    const Real eps = pow(Real(10), -guard_digits);
    AmbientClass sum(m);
    Real tp(1), last(0);
    int ok = 0;
    Evaluation ev;
    for (std::size_t n = 0;; ++n) {
        if (n > n_max && n_max == 0) {
            ev.terms = 1;
            break;
        }
        if (n > n_max)
            throw PrecisionExhausted("term budget " + std::to_string(n_max) + " exhausted at t = " + t.str(6));
        AmbientClass term = series.coefficient(n);
        term *= tp;
        sum += term;
        tp *= t;
        const Real mag = term.max_abs();
        if (mag == 0) continue;
        if (last > 0) {
            const Real q = mag / last;
            ok = (q < Real("0.9") && mag * q / (1 - q) * 10 <= eps * sum.max_abs()) ? ok + 1 : 0;
        }
        last = mag;
        if (ok >= 2) {
            ev.terms = n + 1;
            break;
        }
    }
    const auto kappa = model.index_form();
    const Real lt = log(t);
    std::vector<Real> lam(m);
    for (std::size_t i = 0; i < m; ++i) lam[i] = kappa[i] * lt;
    AmbientClass pre(m);
    add_exp(pre, Real(1), lam, std::vector<Real>(m * (m + 1) / 2, Real(0)));
    kill_nilpotent(model, pre);
    ev.value = multiply(model, pre, sum);
    ev.value *= exp(-Real(series.c0()) * t);
    return ev;
}

AmbientClass ambient_gamma(const CIModel& model) {
    const std::size_t m = model.factors.size();
    std::vector<Real> lam(m), q(m * (m + 1) / 2);
    for (const auto& b : blocks(model)) {
        // log Gamma(1 + x) = -C x + zeta(2) x^2 / 2; ambient factors multiply, equations divide.
        std::size_t idx = 0;
        for (std::size_t i = 0; i < m; ++i) {
            lam[i] += b.sign * euler_gamma() * b.form[i];
            for (std::size_t j = i; j < m; ++j, ++idx) {
                const int ff = b.form[i] * b.form[j];
                q[idx] -= b.sign * (i == j ? zeta2() * ff / 2 : zeta2() * ff);
            }
        }
    }
    AmbientClass g(m);
    add_exp(g, Real(1), lam, q);
    kill_nilpotent(model, g);
    return g;
}

namespace {

using Mono = std::vector<int>;
using Sparse = std::map<Mono, Real>;

Sparse fundamental_class(const CIModel& model) {
    const std::size_t m = model.factors.size();
    Sparse y{{Mono(m, 0), Real(1)}};
    for (const auto& row : model.degrees) {
        Sparse next;
        for (const auto& [mono, c] : y)
            for (std::size_t i = 0; i < m; ++i) {
                if (row[i] == 0) continue;
                Mono e = mono;
                if (++e[i] > model.factors[i].dim()) continue;
                next[e] += c * row[i];
            }
        y = std::move(next);
    }
    return y;
}

std::vector<Mono> test_classes(const CIModel& model) {
    const std::size_t m = model.factors.size();
    std::vector<Mono> all{Mono(m, 0)};
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Mono> next;
        for (const auto& e : all)
            for (int k = 0; k <= model.factors[i].dim(); ++k) {
                Mono f = e;
                f[i] = k;
                next.push_back(f);
            }
        all = std::move(next);
    }
    std::vector<Mono> out;
    const int dy = model.dim();
    for (int deg = std::max(0, dy - 2); deg <= dy; ++deg)
        for (const auto& e : all)
            if (std::accumulate(e.begin(), e.end(), 0) == deg) out.push_back(e);
    return out;
}

}  // namespace

std::vector<std::string> test_class_names(const CIModel& model) {
    std::vector<std::string> names;
    const bool single = model.factors.size() == 1;
    for (const auto& e : test_classes(model)) {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += single ? "h" : "h" + std::to_string(i + 1);
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        names.push_back(s.empty() ? "1" : s);
    }
    return names;
}

std::vector<Real> pair_components(const CIModel& model, const AmbientClass& x) {
    const std::size_t m = model.factors.size();
    Sparse xs;
    xs[Mono(m, 0)] = x.c0;
    for (std::size_t i = 0; i < m; ++i) {
        Mono e(m, 0);
        e[i] = 1;
        xs[e] = x.c1[i];
        for (std::size_t j = i; j < m; ++j) {
            Mono f = e;
            ++f[j];
            xs[f] = x.quad(i, j);
        }
    }
    const Sparse y = fundamental_class(model);
    Mono top(m);
    Real volume(1);
    for (std::size_t i = 0; i < m; ++i) {
        top[i] = model.factors[i].dim();
        for (int w : model.factors[i].weights) volume /= w;
    }
    std::vector<Real> out;
    for (const auto& a : test_classes(model)) {
        Real s = 0;
        for (const auto& [mu, c] : xs) {
            Mono need(m);
            bool ok = true;
            for (std::size_t i = 0; i < m; ++i) ok = ok && (need[i] = top[i] - a[i] - mu[i]) >= 0;
            if (!ok) continue;
            const auto it = y.find(need);
            if (it != y.end()) s += c * it->second;
        }
        out.push_back(s * volume);
    }
    return out;
}

std::size_t auto_term_budget(const Real& growth, const Real& t) {
    const Real kt = growth * t;
    return static_cast<std::size_t>(ceil(kt + 16 * sqrt(kt) + 100).convert_to<double>());
}

GammaLimitReport gamma_limit_report(const CIModel& model, const Real& rho, const std::vector<Real>& t_grid,
                                    const GammaLimitOptions& opt) {
    if (t_grid.empty()) throw std::invalid_argument("t grid is empty");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("t grid must be increasing");
    GammaLimitReport rep;
    rep.model = model.name;
    rep.rho = rho;
    rep.term_budget = opt.term_budget;
    rep.threshold = opt.threshold;
    rep.components = test_class_names(model);
    rep.gamma_components = pair_components(model, ambient_gamma(model));
    Real gmax = 0;
    for (const auto& g : rep.gamma_components) gmax = std::max(gmax, Real(abs(g)));
    for (const auto& g : rep.gamma_components) rep.used.push_back(abs(g) > gmax * Real("1e-20"));

    JSeries series(model);
    rep.c0 = series.c0();
    const Real noise("1e-30");
    const Real half_dim = Real(model.dim()) / 2;
    std::vector<std::pair<Real, Real>> growth;  // (t, log t^{dim/2} |J_0|)
    rep.complete = true;
    for (const auto& t : t_grid) {
        GammaLimitPoint p;
        p.t = t;
        try {
            const Evaluation ev = evaluate(series, t, opt.guard_digits, opt.term_budget);
            p.terms = ev.terms;
            const auto v = pair_components(model, ev.value);
            const Real scale = pow(t, half_dim) * exp(-rho * t);
            for (std::size_t i = 0; i < v.size(); ++i) p.ratios.push_back(rep.used[i] ? Real(v[i] * scale / rep.gamma_components[i]) : Real(0));
            Real d = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j)
                    if (rep.used[i] && rep.used[j] && i != j) d = std::max(d, Real(abs(p.ratios[i] / p.ratios[j] - 1)));
            p.dispersion = std::max(d, noise);
            if (ev.value.c0 > 0) growth.emplace_back(t, log(pow(t, half_dim) * ev.value.c0));
        } catch (const PrecisionExhausted&) {
            p.exhausted = true;
            rep.complete = false;
        }
        rep.points.push_back(std::move(p));
    }
    rep.monotone = true;
    const GammaLimitPoint* prev = nullptr;
    for (const auto& p : rep.points) {
        if (p.exhausted) continue;
        if (prev && p.dispersion > prev->dispersion) rep.monotone = false;
        prev = &p;
    }
    rep.final_dispersion = rep.points.back().exhausted ? Real(1) : rep.points.back().dispersion;
    // Least-squares slope of log(t^{dim/2} J_0) over the large-t end of the grid.
    std::vector<std::pair<Real, Real>> fit;
    for (const auto& g : growth)
        if (g.first >= 20) fit.push_back(g);
    if (fit.size() < 2) fit = growth;
    if (fit.size() >= 2) {
        Real mt = 0, my = 0;
        for (const auto& [t, y] : fit) mt += t, my += y;
        mt /= fit.size(), my /= fit.size();
        Real sxy = 0, sxx = 0;
        for (const auto& [t, y] : fit) sxy += (t - mt) * (y - my), sxx += (t - mt) * (t - mt);
        rep.growth_rate = sxy / sxx;
    }
    return rep;
}

GammaLimitReport gamma_limit_report(SurfaceId s, const std::vector<Real>& t_grid, const GWTable* table,
                                    const GammaLimitOptions& opt) {
    const CIModel model = ci_model(s);
    std::optional<GWTable> own;
    if (!table && blowup_rank(s) >= 4) {
        own = load_table(default_table_path());
        table = &*own;
    }
    const Real rho = verify_conjecture_o(s, table, opt.tol).certificate.rho;
    return gamma_limit_report(model, rho, t_grid, opt);
}

GammaLimitReport gamma_limit_report(const std::vector<int>& weights, const std::vector<Real>& t_grid,
                                    const GammaLimitOptions& opt) {
    const CIModel model = wps_model(weights);
    return gamma_limit_report(model, wps_closed_form(weights).c, t_grid, opt);
}

}  // namespace dpgamma
