#include "dpgamma/spectra.hpp"

#include <algorithm>

namespace dpgamma {

namespace {

Rat fine_width() { return Rat(1, BigInt(mp::pow(BigInt(10), 50))); }

struct Horner {
    Complex value;
    Complex slope;
};

Horner horner(const std::vector<Complex>& a, const Complex& z) {
    Complex v = a.back(), d(0);
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        d = d * z + v;
        v = v * z + a[k];
    }
    return {v, d};
}

std::vector<Complex> complex_coeffs(const RatPoly& p) {
    std::vector<Complex> a;
    a.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) a.emplace_back(Real(c));
    return a;
}


}  // namespace

std::vector<Complex> polynomial_roots(const RatPoly& p) {
    const int n = p.degree();
    if (n < 1) return {};
    const auto a = complex_coeffs(p.monic());
    Real bound = 0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, Real(abs(a[static_cast<std::size_t>(k)])));
    bound = std::min(bound + 1, Real(2) * pow(bound + 1, Real(1) / n));
    std::vector<Complex> z(static_cast<std::size_t>(n));
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    for (int k = 0; k < n; ++k) {
        const Real ang = two_pi * k / n + Real("0.4");
        z[static_cast<std::size_t>(k)] = Complex(bound * cos(ang), bound * sin(ang));
    }
    const Real eps = pow(Real(10), -static_cast<int>(kWorkingDigits) + 3);
    for (int iter = 0; iter < 2000; ++iter) {
        Real worst = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            const auto h = horner(a, z[k]);
            if (h.value == Complex(0)) continue;
            const Complex ratio = h.value / h.slope;
            Complex s(0);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) s += Complex(1) / (z[k] - z[j]);
            const Complex w = ratio / (Complex(1) - ratio * s);
            z[k] -= w;
            worst = std::max(worst, Real(abs(w) / (1 + abs(z[k]))));
        }
        if (worst < eps) break;
    }
    return z;
}

SpectrumReport spectrum(const QMatrix& m, const Real& tol) {
    if (!(tol > 0)) throw std::invalid_argument("spectrum tolerance must be positive");
    SpectrumReport rep;
    rep.characteristic = char_poly(m);
    const auto factors = squarefree_decompose(rep.characteristic);
    const Rat width = fine_width();
    for (const auto& [f, mult] : factors) {
        const auto seq = sturm_sequence(f);
        const auto real_ivs = isolate_real_roots(f, width);
        for (const auto& iv : real_ivs) {
            Eigenvalue e;
            e.value = Complex(Real(iv.midpoint()));
            e.multiplicity = mult;
            e.is_real = true;
            e.interval = iv;
            rep.eigenvalues.push_back(e);
        }
        const std::size_t nonreal = static_cast<std::size_t>(f.degree()) - real_ivs.size();
        if (nonreal == 0) continue;
        auto roots = polynomial_roots(f);
        std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) { return imag(x) > imag(y); });
        const auto a = complex_coeffs(f);
        std::vector<Eigenvalue> found;
        for (std::size_t k = 0; k < nonreal / 2; ++k) {
            Complex z = roots[k];
            for (int it = 0; it < 3; ++it) {
                const auto h = horner(a, z);
                if (h.value == Complex(0)) break;
                z -= h.value / h.slope;
            }
            const auto h = horner(a, z);
            const Real radius = h.value == Complex(0) ? Real(0) : Real(f.degree() * abs(h.value) / abs(h.slope));
            if (!(radius <= tol) || !(abs(imag(z)) > radius))
                throw ConvergenceFailure("non-real eigenvalue not certified to tolerance");
            Eigenvalue e;
            e.value = z;
            e.multiplicity = mult;
            e.radius = radius;
            found.push_back(e);
            e.value = conj(z);
            found.push_back(e);
        }
        for (std::size_t i = 0; i < found.size(); ++i)
            for (std::size_t j = i + 1; j < found.size(); ++j)
                if (!(abs(found[i].value - found[j].value) > found[i].radius + found[j].radius))
                    throw ConvergenceFailure("overlapping inclusion disks for non-real eigenvalues");
        rep.eigenvalues.insert(rep.eigenvalues.end(), found.begin(), found.end());
    }
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
        const Real ax = abs(x.value), ay = abs(y.value);
        if (ax != ay) return ax > ay;
        if (real(x.value) != real(y.value)) return real(x.value) > real(y.value);
        return imag(x.value) > imag(y.value);
    });

    Real max_mod = 0;
    for (const auto& e : rep.eigenvalues) max_mod = std::max(max_mod, Real(abs(e.value)));
    const Eigenvalue* top_real = nullptr;
    for (const auto& e : rep.eigenvalues)
        if (e.is_real && (!top_real || e.interval->hi > top_real->interval->hi)) top_real = &e;
    rep.rho = max_mod;
    if (top_real && top_real->interval->lo >= 0 && top_real->interval->hi > 0 && real(top_real->value) + tol >= max_mod) {
        rep.rho_is_eigenvalue = true;
        rep.rho_multiplicity = top_real->multiplicity;
        rep.rho = real(top_real->value);
    }
    return rep;
}

PropertyOCertificate property_o_certificate(const QMatrix& m, unsigned fano_index, const Real& tol) {
    if (fano_index == 0) throw std::invalid_argument("Fano index must be positive");
    const auto sr = spectrum(m, tol);
    PropertyOCertificate cert;
    cert.fano_index = fano_index;
    cert.rho = sr.rho;
    cert.rho_is_eigenvalue = sr.rho_is_eigenvalue;
    cert.rho_multiplicity = sr.rho_multiplicity;
    cert.rho_simple = sr.rho_is_eigenvalue && sr.rho_multiplicity == 1;
    const Real rho = sr.rho;
    for (const auto& e : sr.eigenvalues)
        if (abs(e.value) >= rho - tol) cert.modulus_rho_eigenvalues.push_back(e.value);
    if (!sr.rho_is_eigenvalue) return cert;

    const Eigenvalue* top = nullptr;
    for (const auto& e : sr.eigenvalues)
        if (e.is_real && (!top || e.interval->hi > top->interval->hi)) top = &e;
    const auto factors = squarefree_decompose(sr.characteristic);
    auto factor_of = [&](const Eigenvalue& e) -> const RatPoly& {
        for (const auto& sf : factors)
            if (sf.multiplicity == e.multiplicity && sturm_count(sturm_sequence(sf.factor), e.interval->lo, e.interval->hi) == 1 &&
                (e.interval->lo != e.interval->hi || sf.factor.eval(e.interval->lo) == 0))
                return sf.factor;
        throw Inconclusive("cannot attribute real eigenvalue to a squarefree factor");
    };
    auto contains = [](const RatPoly& g, const RootInterval& iv) {
        if (g.degree() < 1) return false;
        if (iv.lo == iv.hi) return g.eval(iv.lo) == 0;
        return sturm_count(sturm_sequence(g), iv.lo, iv.hi) == 1;
    };

    const Real rho_s = pow(rho, static_cast<int>(fano_index));
    bool ok = true;
    for (const auto& e : sr.eigenvalues) {
        if (abs(e.value) < rho - tol) continue;
        if (&e == top) continue;
        if (e.is_real) {
            // Decide lambda = -rho exactly: rho must be a root of gcd(f_rho(x), f_e(-x)),
            // and -rho must fall in the isolating interval of e.
            const RatPoly& frho = factor_of(*top);
            const RatPoly& fe = factor_of(e);
            const RatPoly g = poly_gcd(frho, fe.reflect());
            const RootInterval neg{-top->interval->hi, -top->interval->lo};
            const bool is_neg_rho = contains(g, *top->interval) && !(neg.hi < e.interval->lo) && !(e.interval->hi < neg.lo);
            if (!is_neg_rho) throw Inconclusive("real eigenvalue within tolerance of -rho but not equal; shrink tol");
            if (fano_index % 2 == 1) ok = false;
        } else {
            const Real dev = abs(pow(e.value, static_cast<int>(fano_index)) - Complex(rho_s));
            if (!(dev <= tol * rho_s)) throw Inconclusive("eigenvalue of modulus within tol of rho violates lambda^s = rho^s; shrink tol");
        }
    }
    cert.part2_holds = ok;
    cert.holds = cert.rho_is_eigenvalue && cert.rho_simple && cert.part2_holds;
    return cert;
}

}  // namespace dpgamma
