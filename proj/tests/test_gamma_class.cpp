#include "dpgamma/gamma_class.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

using namespace dpgamma;

namespace {

const Real kTight("1e-45");

Real ceu() { return boost::math::constants::euler<Real>(); }
Real z2() {
    const Real pi = boost::math::constants::pi<Real>();
    return pi * pi / 6;
}

// Taylor coefficients of prod Gamma(1 + w h) / Gamma(1 + d h) by central differences.
TruncPoly numeric_gamma_product(const std::vector<int>& weights, int d) {
    const Real h("1e-12");
    auto f = [&](const Real& x) {
        Real v = 1;
        for (int w : weights) v *= boost::math::tgamma(Real(1) + w * x);
        if (d) v /= boost::math::tgamma(Real(1) + d * x);
        return v;
    };
    const Real fp = f(h), fm = f(-h);
    TruncPoly out;
    out.a1 = (fp - fm) / (2 * h);
    out.a2 = (fp + fm - 2) / (2 * h * h);
    return out;
}

Real coeff(const CohClass& c, const std::string& name) {
    for (std::size_t i = 0; i < c.basis.size(); ++i)
        if (c.basis[i] == name) return c.coeffs[i];
    FAIL("no basis element " << name);
    return 0;
}

}  // namespace

TEST_CASE("stored constants agree with independent evaluations") {
    CHECK(abs(euler_gamma() - ceu()) < Real("1e-58"));
    CHECK(abs(zeta2() - z2()) < Real("1e-58"));
    // Partial sums of 1/k^2 with the Euler-Maclaurin tail 1/N - 1/(2N^2) + 1/(6N^3).
    Real s = 0;
    const int n = 2000;
    for (int k = 1; k < n; ++k) s += Real(1) / (Real(k) * k);
    const Real N(n);
    s += 1 / N + 1 / (2 * N * N) + 1 / (6 * N * N * N) - 1 / (30 * pow(N, 5));
    CHECK(abs(s - zeta2()) < Real("1e-20"));
}

TEST_CASE("cohomology bases and Chern data") {
    CHECK(cohomology_basis(SurfaceId::P2).size() == 3);
    CHECK(cohomology_basis(SurfaceId::P1xP1).size() == 4);
    for (int r = 1; r <= 8; ++r) {
        const auto s = blowup(r);
        CHECK(cohomology_basis(s).size() == static_cast<std::size_t>(r) + 3);
        const auto cd = chern_data(s);
        CHECK(cd.c1_squared == 9 - r);
        CHECK(cd.c2_coefficient == 3 + r);
    }
    CHECK(chern_data(SurfaceId::P1xP1).c2_coefficient == 4);
    CHECK(chern_data(SurfaceId::P2).c2_coefficient == 3);
    CHECK(chern_data(SurfaceId::P2).c1_squared == 9);
}

TEST_CASE("surface Gamma classes") {
    const Real c = ceu(), z = z2();
    for (auto s : all_surfaces()) {
        const auto g = gamma_surface(s);
        const auto cd = chern_data(s);
        CHECK(abs(g.coeffs.front() - 1) < kTight);
        // Linear part is -C_eu c_1.
        for (std::size_t i = 1; i + 1 < g.coeffs.size(); ++i)
            CHECK(abs(g.coeffs[i] + c * cd.c1.coeffs[i]) < kTight);
        const Real pt = c * c * cd.c1_squared / 2 + z * (cd.c1_squared - 2 * cd.c2_coefficient) / 2;
        CHECK(abs(g.coeffs.back() - pt) < kTight);
    }
    const auto x6 = gamma_surface(SurfaceId::X6);
    CHECK(abs(coeff(x6, "H") + 3 * c) < kTight);
    CHECK(abs(coeff(x6, "E1") - c) < kTight);
    for (int r = 1; r <= 8; ++r) {
        const Real pt = (9 - r) * c * c / 2 + z * (3 - 3 * r) / 2;
        CHECK(abs(gamma_surface(blowup(r)).coeffs.back() - pt) < kTight);
    }
}

TEST_CASE("truncated polynomial helpers") {
    const TruncPoly e = trunc_exp(2, 3);
    CHECK(abs(e.a1 - 2) < kTight);
    CHECK(abs(e.a2 - 5) < kTight);
    const TruncPoly p = e * trunc_exp(-2, -3);
    CHECK(abs(p.a0 - 1) < kTight);
    CHECK(abs(p.a1) < kTight);
    CHECK(abs(p.a2) < kTight);
}

TEST_CASE("weighted projective Gamma classes") {
    const Real c = ceu(), z = z2();
    const TruncPoly p2 = gamma_wps_untwisted({1, 1, 1});
    CHECK(abs(p2.a1 + 3 * c) < kTight);
    CHECK(abs(p2.a2 - (9 * c * c / 2 + 3 * z / 2)) < kTight);
    CHECK(abs(gamma_wps_untwisted({1, 1, 1, 2}).a1 + 5 * c) < kTight);
    const TruncPoly one = gamma_wps_untwisted({});
    CHECK(one.a0 == 1);
    CHECK(one.a1 == 0);
    CHECK(one.a2 == 0);
    CHECK(gamma_wps({1, 1, 2, 3}).twisted == TwistedSectors::NotComputed);

    for (const auto& w : std::vector<std::vector<int>>{{1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 3}, {1, 2, 2, 5}}) {
        const TruncPoly g = gamma_wps_untwisted(w), o = numeric_gamma_product(w, 0);
        CHECK(abs(g.a1 - o.a1) < Real("1e-20"));
        CHECK(abs(g.a2 - o.a2) < Real("1e-20"));
    }
}

TEST_CASE("Gamma classes are multiplicative over concatenated weights") {
    const std::vector<int> a{1, 1, 2}, b{3, 1};
    std::vector<int> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const TruncPoly lhs = gamma_wps_untwisted(ab), rhs = gamma_wps_untwisted(a) * gamma_wps_untwisted(b);
    CHECK(abs(lhs.a1 - rhs.a1) < kTight);
    CHECK(abs(lhs.a2 - rhs.a2) < kTight);
}

TEST_CASE("hypersurface Gamma classes") {
    const Real c = ceu();
    CHECK(abs(gamma_hypersurface_ambient({1, 1, 1, 2}, 4).a1 + c) < kTight);
    CHECK(abs(gamma_hypersurface_ambient({1, 1, 2, 3}, 6).a1 + c) < kTight);
    const TruncPoly d0 = gamma_hypersurface_ambient({1, 1, 2, 3}, 0), u = gamma_wps_untwisted({1, 1, 2, 3});
    CHECK(abs(d0.a1 - u.a1) < kTight);
    CHECK(abs(d0.a2 - u.a2) < kTight);
    const TruncPoly x6 = gamma_hypersurface_ambient({1, 1, 1, 1}, 3), o = numeric_gamma_product({1, 1, 1, 1}, 3);
    CHECK(abs(x6.a2 - o.a2) < Real("1e-20"));
}

TEST_CASE("quartic in P(1,1,1,2) restricts to the surface Gamma class of X7") {
    const TruncPoly amb = gamma_hypersurface_ambient({1, 1, 1, 2}, 4);
    const CohClass surf = gamma_surface(SurfaceId::X7);
    // h restricts to c_1 = 3H - sum E_i and h^2 to c_1^2 = 2 pt.
    CHECK(abs(coeff(surf, "H") - 3 * amb.a1) < Real("1e-30"));
    for (int i = 1; i <= 7; ++i) CHECK(abs(coeff(surf, "E" + std::to_string(i)) + amb.a1) < Real("1e-30"));
    CHECK(abs(coeff(surf, "pt") - 2 * amb.a2) < Real("1e-30"));
    CHECK(abs(amb.a1 + ceu()) < Real("1e-30"));
}
