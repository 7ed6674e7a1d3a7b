#include "dpgamma/quantum_operator.hpp"

#include "dpgamma/picard_lattice.hpp"

namespace dpgamma {

const std::vector<SurfaceId>& all_surfaces() {
    static const std::vector<SurfaceId> v{SurfaceId::P2, SurfaceId::P1xP1, SurfaceId::X1, SurfaceId::X2, SurfaceId::X3,
                                          SurfaceId::X4, SurfaceId::X5, SurfaceId::X6, SurfaceId::X7, SurfaceId::X8};
    return v;
}

std::string surface_name(SurfaceId s) {
    switch (s) {
        case SurfaceId::P2: return "P2";
        case SurfaceId::P1xP1: return "P1xP1";
        default: return "X" + std::to_string(blowup_rank(s));
    }
}

std::optional<SurfaceId> parse_surface(const std::string& s) {
    for (auto id : all_surfaces())
        if (surface_name(id) == s) return id;
    return std::nullopt;
}

int blowup_rank(SurfaceId s) {
    switch (s) {
        case SurfaceId::P2:
        case SurfaceId::P1xP1: return -1;
        default: return static_cast<int>(s) - static_cast<int>(SurfaceId::X1) + 1;
    }
}

SurfaceId blowup(int r) {
    if (r < 1 || r > 8) throw std::invalid_argument("X_r needs 1 <= r <= 8");
    return static_cast<SurfaceId>(static_cast<int>(SurfaceId::X1) + r - 1);
}

unsigned fano_index(SurfaceId s) {
    if (s == SurfaceId::P2) return 3;
    if (s == SurfaceId::P1xP1) return 2;
    return 1;
}

std::vector<std::string> operator_basis(SurfaceId s) {
    switch (s) {
        case SurfaceId::P2: return {"1", "h", "h^2"};
        case SurfaceId::P1xP1: return {"1", "h1", "h2", "pt"};
        case SurfaceId::X1: return {"1", "H-E1", "E1", "pt"};
        case SurfaceId::X2: return {"1", "2H-E1-E2", "E1", "E2", "pt"};
        default: {
            const int r = blowup_rank(s);
            std::vector<std::string> b{"1", "c1"};
            for (int i = 1; i <= r; ++i) b.push_back("E" + std::to_string(i));
            b.push_back("pt");
            return b;
        }
    }
}

namespace {

using Vec = std::vector<Rat>;

// Cohomology of X_r (r <= 3) over [1, H, E_1..E_r, pt].
struct SmallBlowup {
    int r;
    std::size_t n() const { return static_cast<std::size_t>(r + 3); }
    Vec zero() const { return Vec(n()); }
    Vec unit() const { auto v = zero(); v[0] = 1; return v; }
    Vec h() const { auto v = zero(); v[1] = 1; return v; }
    Vec e(int i) const { auto v = zero(); v[static_cast<std::size_t>(i + 1)] = 1; return v; }
    Vec pt() const { auto v = zero(); v[n() - 1] = 1; return v; }
    Vec line(int i, int j) const { return sum({h(), scale(e(i), -1), scale(e(j), -1)}); }
    static Vec scale(Vec v, const Rat& s) { for (auto& x : v) x *= s; return v; }
    static Vec sum(std::initializer_list<Vec> vs) {
        Vec out(vs.begin()->size());
        for (const auto& v : vs)
            for (std::size_t k = 0; k < v.size(); ++k) out[k] += v[k];
        return out;
    }
    static void add(Vec& acc, const Vec& v) { for (std::size_t k = 0; k < v.size(); ++k) acc[k] += v[k]; }

    // The printed tables for X_1, X_2, X_3 at q = 1 share these rules; the conic class
    // 2H - E_1 - E_2 - E_3 only exists for r = 3.
    Vec h_h() const {
        Vec v = pt();
        for (int i = 1; i <= r; ++i)
            for (int j = i + 1; j <= r; ++j) add(v, line(i, j));
        add(v, scale(unit(), r));
        return v;
    }
    Vec h_e(int i) const {
        Vec v = unit();
        for (int j = 1; j <= r; ++j)
            if (j != i) add(v, line(i, j));
        return v;
    }
    Vec h_pt() const {
        Vec v = scale(unit(), r == 3 ? 3 : 1);
        for (int i = 1; i <= r; ++i) add(v, sum({h(), scale(e(i), -1)}));
        return v;
    }
    Vec e_e(int i, int j) const {
        if (i != j) return line(i, j);
        Vec v = sum({scale(pt(), -1), e(i), unit()});
        for (int k = 1; k <= r; ++k)
            if (k != i) add(v, line(i, k));
        return v;
    }
    Vec e_pt(int i) const {
        Vec v = sum({h(), scale(e(i), -1)});
        if (r == 3) add(v, unit());
        return v;
    }
};

QMatrix from_columns(const std::vector<Vec>& cols) {
    QMatrix m(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols.size(); ++i) m(i, j) = cols[j][i];
    return m;
}

}  // namespace

QuantumTable quantum_table(int r) {
    if (r < 1 || r > 3) throw NotBuiltin("quantum tables are tabulated for 1 <= r <= 3");
    SmallBlowup x{r};
    QuantumTable t;
    t.r = r;
    t.basis = {"1", "H"};
    for (int i = 1; i <= r; ++i) t.basis.push_back("E" + std::to_string(i));
    t.basis.push_back("pt");

    std::vector<Vec> hc{x.h(), x.h_h()};
    for (int i = 1; i <= r; ++i) hc.push_back(x.h_e(i));
    hc.push_back(x.h_pt());
    t.h_times = from_columns(hc);
    for (int i = 1; i <= r; ++i) {
        std::vector<Vec> ec{x.e(i), x.h_e(i)};
        for (int j = 1; j <= r; ++j) ec.push_back(x.e_e(i, j));
        ec.push_back(x.e_pt(i));
        t.e_times.push_back(from_columns(ec));
    }

    std::vector<Vec> pc;
    for (std::size_t k = 0; k < x.n(); ++k) {
        Vec v = x.zero();
        v[k] = 1;
        pc.push_back(v);
    }
    // Second basis vector: H - E_1, 2H - E_1 - E_2, c_1 = 3H - E_1 - E_2 - E_3.
    Vec second = SmallBlowup::scale(x.h(), r);
    for (int i = 1; i <= r; ++i) SmallBlowup::add(second, SmallBlowup::scale(x.e(i), -1));
    pc[1] = second;
    t.base_change = from_columns(pc);
    t.preferred_basis = operator_basis(blowup(r));
    return t;
}

QMatrix tilde_operator(int r) {
    const QuantumTable t = quantum_table(r);
    QMatrix m = Rat(3) * t.h_times;
    for (const auto& e : t.e_times) m = m - e;
    return m;
}

QMatrix builtin_operator(SurfaceId s) {
    switch (s) {
        case SurfaceId::P2:
            // h*h = h^2, h*h^2 = q.
            return QMatrix{{0, 0, 3}, {3, 0, 0}, {0, 3, 0}};
        case SurfaceId::P1xP1:
            // h1*h1 = q1, h2*h2 = q2, h1*h2 = pt, c_1 = 2h1 + 2h2.
            return QMatrix{{0, 2, 2, 0}, {2, 0, 0, 2}, {2, 0, 0, 2}, {0, 2, 2, 0}};
        case SurfaceId::X1:
        case SurfaceId::X2:
        case SurfaceId::X3: {
            const int r = blowup_rank(s);
            return similarity(tilde_operator(r), quantum_table(r).base_change);
        }
        default: throw NotBuiltin(surface_name(s) + " has no tabulated quantum product; use assemble with a GW table");
    }
}

namespace {

void check_assembly_rank(int r) {
    if (r < 4 || r > 8) throw std::invalid_argument("r must lie in [4, 8]");
}

Rat third(int d0) { return Rat(d0, 3); }

}  // namespace

Rat diagonal_entry(int r) {
    check_assembly_rank(r);
    Rat s = 0;
    for (const auto& a : classes_of_degree(r, 1)) {
        const int ae = a.d[static_cast<std::size_t>(r - 1)];
        s += ae * (third(a.d0) - ae);
    }
    return s;
}

Rat off_diagonal_entry(int r, int i, int j) {
    check_assembly_rank(r);
    if (i < 1 || i > r || j < 1 || j > r || i == j) throw IndexOutOfRange("off-diagonal entry needs distinct indices in [1, r]");
    Rat s = 0;
    for (const auto& a : classes_of_degree(r, 1)) {
        const int ai = a.d[static_cast<std::size_t>(i - 1)], aj = a.d[static_cast<std::size_t>(j - 1)];
        s += ai * (third(a.d0) - aj);
    }
    return s;
}

Rat anticanonical_weight(const GWTable& table) { return invariant(table, 8, DivClass::anticanonical(8), GWKind::N0); }

// Entry (i, j) is sum_A <c_1, phi^i, phi_j>_A with phi = [1, c_1, E_1..E_r, pt] and dual
// basis [pt, H/3, H/3 - E_1, .., H/3 - E_r, 1]; the insertion degrees fix c_1 . A.
QMatrix assemble(int r, const GWTable& table) {
    check_assembly_rank(r);
    const std::size_t n = static_cast<std::size_t>(r) + 3, last = n - 1;
    const auto ur = static_cast<std::size_t>(r);
    QMatrix m(n);
    m(1, 0) = 1;
    m(last, 1) = 9 - r;
    for (std::size_t j = 0; j < ur; ++j) m(last, 2 + j) = 1;

    for (const auto& a : classes_of_degree(r, 1)) {
        const Rat w = invariant(table, r, a, GWKind::N0);
        if (w == 0) continue;
        const Rat h3 = third(a.d0);
        m(1, 1) += h3 * w;
        for (std::size_t j = 0; j < ur; ++j) m(1, 2 + j) += a.d[j] * h3 * w;
        for (std::size_t i = 0; i < ur; ++i) {
            const Rat dual = h3 - a.d[i];
            m(2 + i, 1) += dual * w;
            for (std::size_t j = 0; j < ur; ++j) m(2 + i, 2 + j) += dual * a.d[j] * w;
        }
    }
    for (const auto& a : classes_of_degree(r, 2)) {
        const Rat w = invariant(table, r, a, GWKind::PT);
        if (w == 0) continue;
        const Rat h3 = third(a.d0);
        m(0, 1) += 4 * w;
        for (std::size_t j = 0; j < ur; ++j) m(0, 2 + j) += 2 * a.d[j] * w;
        m(1, last) += 2 * h3 * w;
        for (std::size_t i = 0; i < ur; ++i) m(2 + i, last) += 2 * (h3 - a.d[i]) * w;
    }
    for (const auto& a : classes_of_degree(r, 3)) m(0, last) += 3 * invariant(table, r, a, GWKind::PTPT);

    const Rat dr = diagonal_entry(r);
    for (std::size_t i = 0; i < ur; ++i) {
        if (m(2 + i, 1) != 0 || m(2 + i, last) != 0)
            throw TemplateMismatch("E-block row " + std::to_string(i + 3) + " has nonzero entries outside the block");
        for (std::size_t j = 0; j < ur; ++j)
            if (m(2 + i, 2 + j) != (i == j ? dr : Rat(0)))
                throw TemplateMismatch("E-block of the assembled operator is not d_r * I");
        if (m(0, 2 + i) != m(0, 2) || m(1, 2 + i) != m(1, 2))
            throw TemplateMismatch("rows 1-2 are not constant across the E-columns");
    }
    return m;
}

bool StructuralReport::all_hold() const {
    bool ok = column_sums_positive && row2_nonnegative && square_nonnegative && square_rows_positive && square_dominance;
    for (const auto& b : {row1_shift_positive, row2_shift_positive, square_exceeds_dr2})
        if (b) ok = ok && *b;
    return ok;
}

StructuralReport structural_checks(const QMatrix& m, int r) {
    if (r < 3 || r > 8 || m.size() != static_cast<std::size_t>(r) + 3) throw TemplateMismatch("structural checks need an (r+3)x(r+3) blowup operator");
    const std::size_t n = m.size(), last = n - 1;
    StructuralReport rep;
    rep.column_sums_positive = true;
    for (std::size_t j = 0; j < n; ++j) rep.column_sums_positive = rep.column_sums_positive && m.column_sum(j) > 0;
    rep.row2_nonnegative = true;
    for (std::size_t j = 0; j < n; ++j) rep.row2_nonnegative = rep.row2_nonnegative && m(1, j) >= 0;
    const QMatrix sq = m * m;
    rep.square_nonnegative = is_nonnegative(sq);
    rep.square_rows_positive = true;
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, last})
        for (std::size_t j = 0; j < n; ++j) rep.square_rows_positive = rep.square_rows_positive && sq(i, j) > 0;
    rep.square_dominance = true;
    for (std::size_t i = 2; i < last; ++i) {
        Rat s = 0;
        for (std::size_t k = 2; k < last; ++k) s += sq(i, k);
        rep.square_dominance = rep.square_dominance && sq(1, 1) > s;
    }
    if (r >= 4) {
        const Rat dr = m(2, 2);
        rep.d_r = dr;
        bool first = true, second = true;
        for (std::size_t j = 2; j < last; ++j) {
            first = first && m(0, j) + dr > 0;
            second = second && (9 - r) * m(1, j) + dr > 0;
        }
        rep.row1_shift_positive = first;
        rep.row2_shift_positive = second;
        rep.square_exceeds_dr2 = sq(1, 1) > dr * dr;
    }
    return rep;
}

SurfaceVerification verify_conjecture_o(SurfaceId s, const GWTable* table, const Real& tol) {
    SurfaceVerification v;
    v.surface = s;
    v.basis = operator_basis(s);
    const int r = blowup_rank(s);
    if (r >= 4) {
        if (!table) throw MissingEntry(surface_name(s) + " needs a Gromov-Witten table");
        v.matrix = assemble(r, *table);
        if (r == 8) v.anticanonical_weight = anticanonical_weight(*table);
    } else {
        v.matrix = builtin_operator(s);
    }
    if (r >= 3) {
        v.structural = structural_checks(v.matrix, r);
        v.conjugation = conjugate_search(v.matrix, static_cast<std::size_t>(r));
        if (v.conjugation->found) v.gpf = gpf_check(v.conjugation->conjugated);
    } else {
        v.gpf = gpf_check(v.matrix);
    }
    v.certificate = property_o_certificate(v.matrix, fano_index(s), tol);
    if (v.gpf && v.gpf->holds() && !v.certificate.rho_simple) v.evidence_consistent = false;
    return v;
}

}  // namespace dpgamma
