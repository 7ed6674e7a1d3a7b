#include "dpgamma/gamma_class.hpp"

#include <numeric>

namespace dpgamma {

std::vector<std::string> cohomology_basis(SurfaceId s) {
    switch (s) {
        case SurfaceId::P2: return {"1", "h", "pt"};
        case SurfaceId::P1xP1: return {"1", "h1", "h2", "pt"};
        default: {
            std::vector<std::string> b{"1", "H"};
            for (int i = 1; i <= blowup_rank(s); ++i) b.push_back("E" + std::to_string(i));
            b.push_back("pt");
            return b;
        }
    }
}

ChernData chern_data(SurfaceId s) {
    ChernData c;
    c.c1.surface = s;
    c.c1.basis = cohomology_basis(s);
    c.c1.coeffs.assign(c.c1.basis.size(), Real(0));
    switch (s) {
        case SurfaceId::P2:
            c.c1.coeffs[1] = 3;
            c.c1_squared = 9;
            c.c2_coefficient = 3;
            break;
        case SurfaceId::P1xP1:
            c.c1.coeffs[1] = 2;
            c.c1.coeffs[2] = 2;
            c.c1_squared = 8;
            c.c2_coefficient = 4;
            break;
        default: {
            const int r = blowup_rank(s);
            c.c1.coeffs[1] = 3;
            for (int i = 0; i < r; ++i) c.c1.coeffs[static_cast<std::size_t>(2 + i)] = -1;
            c.c1_squared = 9 - r;
            c.c2_coefficient = 3 + r;
        }
    }
    return c;
}

// exp(-C c_1 + zeta(2) ch_2) on a surface, ch_2 = (c_1^2 - 2 c_2)/2.
CohClass gamma_surface(SurfaceId s) {
    const ChernData ch = chern_data(s);
    CohClass g = ch.c1;
    const Real& ce = euler_gamma();
    for (auto& x : g.coeffs) x *= -ce;
    g.coeffs[0] = 1;
    const Real ch2 = Real(ch.c1_squared - 2 * ch.c2_coefficient) / 2;
    g.coeffs.back() = ce * ce / 2 * ch.c1_squared + zeta2() * ch2;
    return g;
}

TruncPoly operator*(const TruncPoly& x, const TruncPoly& y) {
    return {x.a0 * y.a0, x.a0 * y.a1 + x.a1 * y.a0, x.a0 * y.a2 + x.a1 * y.a1 + x.a2 * y.a0};
}

TruncPoly trunc_exp(const Real& l1, const Real& l2) { return {Real(1), l1, l2 + l1 * l1 / 2}; }

namespace {

void check_weights(const std::vector<int>& w) {
    for (int x : w)
        if (x <= 0) throw std::invalid_argument("weights must be positive");
}

// log Gamma(1 + x) = -C x + zeta(2) x^2 / 2 + O(x^3).
TruncPoly log_gamma_sum(const std::vector<int>& w, int sign) {
    long s1 = 0, s2 = 0;
    for (int x : w) {
        s1 += x;
        s2 += static_cast<long>(x) * x;
    }
    return {Real(0), -euler_gamma() * s1 * sign, zeta2() * s2 / 2 * sign};
}

}  // namespace

TruncPoly gamma_wps_untwisted(const std::vector<int>& weights) {
    check_weights(weights);
    const TruncPoly l = log_gamma_sum(weights, 1);
    return trunc_exp(l.a1, l.a2);
}

OrbifoldGamma gamma_wps(const std::vector<int>& weights) { return {gamma_wps_untwisted(weights), TwistedSectors::NotComputed}; }

TruncPoly gamma_hypersurface_ambient(const std::vector<int>& weights, int d) {
    check_weights(weights);
    if (d < 0) throw std::invalid_argument("hypersurface degree must be nonnegative");
    if (d == 0) return gamma_wps_untwisted(weights);
    for (int w : weights)
        if (d % w != 0) throw std::invalid_argument("degree must be divisible by every weight");
    const int index = std::accumulate(weights.begin(), weights.end(), 0) - d;
    if (index < 1) throw IndexNotPositive("Fano index " + std::to_string(index) + " of the hypersurface is not positive");
    const TruncPoly up = log_gamma_sum(weights, 1), down = log_gamma_sum({d}, -1);
    return trunc_exp(up.a1 + down.a1, up.a2 + down.a2);
}

}  // namespace dpgamma
