#include "golden.hpp"

#include "dpgamma/quantum_operator.hpp"

#include <doctest.h>

using namespace dpgamma;

namespace {

const GWTable& bundled() {
    static const GWTable t = load_table(default_table_path());
    return t;
}

}  // namespace

TEST_CASE("surface names round trip") {
    for (auto s : all_surfaces()) CHECK(parse_surface(surface_name(s)) == s);
    CHECK_FALSE(parse_surface("bogus").has_value());
    CHECK(all_surfaces().size() == 10);
    CHECK(fano_index(SurfaceId::P2) == 3);
    CHECK(fano_index(SurfaceId::P1xP1) == 2);
    CHECK(fano_index(SurfaceId::X5) == 1);
    CHECK(blowup(6) == SurfaceId::X6);
    CHECK(blowup_rank(SurfaceId::P2) == -1);
}

TEST_CASE("builtin operators") {
    CHECK(builtin_operator(SurfaceId::X1) == golden::x1());
    CHECK(builtin_operator(SurfaceId::X2) == golden::x2());
    CHECK(builtin_operator(SurfaceId::X3) == golden::x3());
    CHECK(builtin_operator(SurfaceId::P2) == QMatrix{{0, 0, 3}, {3, 0, 0}, {0, 3, 0}});
    for (auto s : {SurfaceId::P2, SurfaceId::P1xP1, SurfaceId::X1, SurfaceId::X2, SurfaceId::X3})
        CHECK(operator_basis(s).size() == builtin_operator(s).size());
    CHECK_THROWS_AS(builtin_operator(SurfaceId::X5), NotBuiltin);
}

TEST_CASE("tilde operators reproduce the printed ones") {
    CHECK(tilde_operator(1) == golden::x1_standard());
    CHECK(tilde_operator(2) == golden::x2_standard());
    CHECK(tilde_operator(3) == golden::x3_standard());
    for (int r = 1; r <= 3; ++r) {
        const auto qt = quantum_table(r);
        CHECK(similarity(tilde_operator(r), qt.base_change) == builtin_operator(blowup(r)));
        CHECK(char_poly(tilde_operator(r)) == char_poly(builtin_operator(blowup(r))));
        // c_1 = 3H - sum E_i acting by quantum multiplication.
        QMatrix c1 = Rat(3) * qt.h_times;
        for (const auto& e : qt.e_times) c1 = c1 - e;
        CHECK(c1 == tilde_operator(r));
    }
}

TEST_CASE("quantum products commute") {
    for (int r = 1; r <= 3; ++r) {
        const auto qt = quantum_table(r);
        for (const auto& e : qt.e_times) CHECK(e * qt.h_times == qt.h_times * e);
        for (const auto& a : qt.e_times)
            for (const auto& b : qt.e_times) CHECK(a * b == b * a);
    }
}

TEST_CASE("diagonal entries") {
    CHECK(diagonal_entry(4) == -3);
    CHECK(diagonal_entry(5) == -4);
    CHECK(diagonal_entry(6) == -6);
    CHECK(diagonal_entry(7) == -12);
    CHECK(diagonal_entry(8) == -60);
}

TEST_CASE("off-diagonal entries vanish") {
    CHECK(off_diagonal_entry(8, 1, 2) == 0);
    CHECK(off_diagonal_entry(4, 1, 2) == 0);
    CHECK(off_diagonal_entry(5, 2, 1) == 0);
    for (int r = 4; r <= 8; ++r)
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j)
                if (i != j) CHECK(off_diagonal_entry(r, i, j) == 0);
    CHECK_THROWS_AS(off_diagonal_entry(5, 1, 1), IndexOutOfRange);
}

TEST_CASE("assembled operators") {
    for (int r = 4; r <= 8; ++r) {
        const QMatrix m = assemble(r, bundled());
        const std::size_t n = static_cast<std::size_t>(r) + 3;
        REQUIRE(m.size() == n);
        for (std::size_t i = 0; i < n; ++i) CHECK(m(i, 0) == (i == 1 ? 1 : 0));
        CHECK(m(n - 1, 1) == 9 - r);
        for (std::size_t j = 2; j < n - 1; ++j) CHECK(m(n - 1, j) == 1);
        CHECK(m(n - 1, n - 1) == 0);
        for (std::size_t i = 2; i < n - 1; ++i)
            for (std::size_t j = 2; j < n - 1; ++j) CHECK(m(i, j) == (i == j ? diagonal_entry(r) : Rat(0)));
        for (std::size_t j = 3; j < n - 1; ++j) {
            CHECK(m(0, j) == m(0, 2));
            CHECK(m(1, j) == m(1, 2));
        }
        CHECK(has_blowup_template(m, static_cast<std::size_t>(r)));
        CHECK(structural_checks(m, r).all_hold());
    }
    CHECK(assemble(4, bundled())(2, 2) == -3);
}

TEST_CASE("m22 equals the weighted exceptional fold") {
    for (int r = 4; r <= 7; ++r) {
        Rat fold = 0;
        for (const auto& a : exceptional_classes(r)) fold += Rat(a.d0, 3);
        CHECK(assemble(r, bundled())(1, 1) == fold);
    }
    CHECK(anticanonical_weight(bundled()) == 12);
}

TEST_CASE("structural checks") {
    const auto rep = structural_checks(golden::x3(), 3);
    CHECK(rep.all_hold());
    CHECK(rep.column_sums_positive);
    const auto neg = structural_checks(-golden::x3(), 3);
    CHECK_FALSE(neg.column_sums_positive);
    CHECK_FALSE(neg.all_hold());
    const auto r6 = structural_checks(assemble(6, bundled()), 6);
    CHECK(r6.all_hold());
    REQUIRE(r6.d_r.has_value());
    CHECK(*r6.d_r == -6);
}

TEST_CASE("Property O holds for every surface") {
    const Real tol("1e-9");
    for (auto s : all_surfaces()) {
        const auto v = verify_conjecture_o(s, &bundled(), tol);
        CHECK_MESSAGE(v.certificate.holds, surface_name(s));
        CHECK(v.evidence_consistent);
        CHECK(v.basis.size() == v.matrix.size());
    }
    CHECK_THROWS_AS(verify_conjecture_o(SurfaceId::X4, nullptr, tol), MissingEntry);
    const auto x2 = verify_conjecture_o(SurfaceId::X2, nullptr, tol);
    REQUIRE(x2.gpf.has_value());
    CHECK(x2.gpf->k == std::optional<unsigned>(2));
    const auto p1 = verify_conjecture_o(SurfaceId::P1xP1, nullptr, tol);
    CHECK(p1.certificate.fano_index == 2);
    CHECK(p1.certificate.modulus_rho_eigenvalues.size() == 2);
    const auto x8 = verify_conjecture_o(SurfaceId::X8, &bundled(), tol);
    CHECK(x8.certificate.holds);
    REQUIRE(x8.structural.has_value());
    CHECK(x8.structural->all_hold());
}
