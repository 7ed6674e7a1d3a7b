#include "dpgamma/lg_mirror.hpp"
#include "dpgamma/spectra.hpp"

#include <boost/math/constants/constants.hpp>
#include <doctest.h>

#include <algorithm>

using namespace dpgamma;

namespace {

const Real kTol("1e-9");

LaurentPoly x_plus_inverse() {
    LaurentPoly f(1);
    f.add_term({1}, 1);
    f.add_term({-1}, 1);
    return f;
}

Complex root_of_unity(int k, int n) {
    const Real a = 2 * boost::math::constants::pi<Real>() * k / n;
    return Complex(cos(a), sin(a));
}

bool contains(const std::vector<Complex>& v, const Complex& z, const Real& tol) {
    return std::any_of(v.begin(), v.end(), [&](const Complex& u) { return abs(u - z) <= tol; });
}

}  // namespace

TEST_CASE("Laurent polynomial basics") {
    LaurentPoly f(2);
    f.add_term({1, 0}, 2);
    f.add_term({1, 0}, -2);
    f.add_term({-1, -1}, 3);
    CHECK(f.terms().size() == 1);
    CHECK(abs(f.eval({Complex(2), Complex(3)}) - Complex(Real(1) / 2)) < kTol);
    CHECK(abs(f.eval_log({Real(0), Real(0)}) - 3) < kTol);
    CHECK_THROWS(f.add_term({1}, 1));
}

TEST_CASE("builtin potentials") {
    CHECK(builtin_potential(SurfaceId::X1).terms().size() == 4);
    CHECK(builtin_potential(SurfaceId::X3).terms().size() == 6);
    const auto x3 = builtin_potential(SurfaceId::X3);
    for (const auto& e : std::vector<std::vector<int>>{{1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, 1}})
        CHECK(x3.terms().count(e) == 1);
    const auto p2 = builtin_potential(std::vector<int>{1, 1, 1});
    CHECK(p2.terms() == builtin_potential(SurfaceId::P2).terms());
    CHECK_THROWS_AS(builtin_potential(SurfaceId::X5), NoMirrorAvailable);
    CHECK(expected_critical_count(builtin_potential(SurfaceId::P2)) == 3);
    CHECK(expected_critical_count(builtin_potential(SurfaceId::P1xP1)) == 4);
    CHECK(expected_critical_count(builtin_potential(SurfaceId::X3)) == 6);
    CHECK(expected_critical_count(builtin_potential(std::vector<int>{1, 1, 1, 2})) == 5);
    CHECK(expected_critical_count(x_plus_inverse()) == 2);
}

TEST_CASE("conifold points") {
    const auto p2 = conifold_point(builtin_potential(SurfaceId::P2), kTol);
    CHECK(p2.certified);
    CHECK(abs(p2.T_con - 3) < kTol);
    for (const auto& z : p2.z_con) CHECK(abs(z - 1) < kTol);

    const auto one = conifold_point(x_plus_inverse(), kTol);
    CHECK(abs(one.T_con - 2) < kTol);
    CHECK(abs(one.z_con[0] - 1) < kTol);

    const Real rho1 = spectrum(builtin_operator(SurfaceId::X1), kTol).rho;
    CHECK(abs(conifold_point(builtin_potential(SurfaceId::X1), kTol).T_con - rho1) < Real("1e-8"));

    LaurentPoly improper(1);
    improper.add_term({1}, 1);
    CHECK_THROWS_AS(conifold_point(improper, kTol), NotProper);
}

TEST_CASE("critical points of the P2 mirror") {
    const auto cps = critical_points(builtin_potential(SurfaceId::P2), 42, kTol);
    REQUIRE(cps.size() == 3);
    std::vector<Complex> vals;
    for (const auto& cp : cps) vals.push_back(cp.value);
    for (int k = 0; k < 3; ++k) CHECK(contains(vals, Complex(3) * root_of_unity(k, 3), kTol));
}

TEST_CASE("critical values are deterministic in the seed") {
    const auto f = builtin_potential(SurfaceId::X2);
    const auto a = critical_points(f, 7, kTol), b = critical_points(f, 7, kTol);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(abs(a[i].value - b[i].value) == 0);
}

TEST_CASE("T_con is the largest real critical value") {
    for (auto s : {SurfaceId::P2, SurfaceId::P1xP1, SurfaceId::X1, SurfaceId::X2, SurfaceId::X3}) {
        const auto f = builtin_potential(s);
        const Real t = conifold_point(f, kTol).T_con;
        Real best = -1;
        for (const auto& cp : critical_points(f, 42, kTol))
            if (abs(cp.value.imag()) < Real("1e-8")) best = std::max(best, Real(cp.value.real()));
        CHECK(abs(best - t) < Real("1e-8"));
    }
}

TEST_CASE("weighted projective closed form") {
    const auto a = wps_closed_form({1, 1, 1, 2});
    CHECK(a.index == 5);
    CHECK(abs(a.c - 5 / pow(Real(4), Real(1) / 5)) < kTol);
    CHECK(abs(a.c - Real("3.789291")) < Real("1e-6"));
    CHECK(a.points.size() == 5);
    const auto f = builtin_potential(std::vector<int>{1, 1, 1, 2});
    for (std::size_t k = 0; k < a.points.size(); ++k)
        CHECK(abs(f.eval(a.points[k]) - Complex(a.c) * root_of_unity(static_cast<int>(k), 5)) < kTol);

    const auto b = wps_closed_form({1, 1, 2, 3});
    CHECK(abs(b.c - 7 / pow(Real(108), Real(1) / 7)) < kTol);
    CHECK(abs(b.c - Real("3.5859")) < Real("1e-4"));
    CHECK(abs(wps_closed_form({1, 1, 1}).c - 3) < kTol);
}

TEST_CASE("weighted projective critical values have modulus c") {
    for (const auto& w : std::vector<std::vector<int>>{{1, 1, 1, 2}, {1, 1, 2, 3}}) {
        const auto f = builtin_potential(w);
        const auto cps = critical_points(f, 42, kTol);
        const Real c = wps_closed_form(w).c;
        CHECK(cps.size() == expected_critical_count(f));
        for (const auto& cp : cps) CHECK(abs(abs(cp.value) - c) < Real("1e-8"));
        CHECK(bmodel_o_check(f, kTol).holds());
    }
}

TEST_CASE("B-model Property O conditions") {
    CHECK(bmodel_o_check(builtin_potential(SurfaceId::X1), kTol).holds());
    const auto one = bmodel_o_check(x_plus_inverse(), kTol);
    CHECK(one.holds());
    CHECK(one.critical_values.size() == 2);
}

TEST_CASE("mirror spectra match the quantum operators") {
    for (auto s : {SurfaceId::P2, SurfaceId::P1xP1, SurfaceId::X1, SurfaceId::X2, SurfaceId::X3}) {
        const auto m = mirror_spectrum_match(s, Real("1e-8"));
        CHECK_MESSAGE(m.matched, surface_name(s));
        CHECK(m.multiplicities_align);
        CHECK(m.max_deviation <= Real("1e-8"));
        CHECK(m.pairs.size() == builtin_operator(s).size());
    }
}

TEST_CASE("Hungarian assignment") {
    const std::vector<std::vector<double>> cost{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
    const auto a = hungarian(cost);
    double total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += cost[i][a[i]];
    CHECK(total == 5);
    // Brute force over all permutations.
    std::vector<std::size_t> p{0, 1, 2};
    double best = 1e9;
    do {
        double s = 0;
        for (std::size_t i = 0; i < 3; ++i) s += cost[i][p[i]];
        best = std::min(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(total == best);
}
