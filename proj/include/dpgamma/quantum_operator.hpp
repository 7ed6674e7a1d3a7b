#pragma once

#include "dpgamma/exact_linalg.hpp"
#include "dpgamma/gw_tables.hpp"
#include "dpgamma/pf_toolkit.hpp"
#include "dpgamma/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dpgamma {

enum class SurfaceId { P2, P1xP1, X1, X2, X3, X4, X5, X6, X7, X8 };

const std::vector<SurfaceId>& all_surfaces();
std::string surface_name(SurfaceId s);
std::optional<SurfaceId> parse_surface(const std::string& s);
int blowup_rank(SurfaceId s);  // r for X_r, -1 otherwise
SurfaceId blowup(int r);
unsigned fano_index(SurfaceId s);
std::vector<std::string> operator_basis(SurfaceId s);  // basis of the matrix returned by the pipeline

// Quantum products at q = 1 for X_1..X_3 over [1, H, E_1..E_r, pt]: column j of
// h_times (resp. e_times[i]) is H * (basis_j) (resp. E_{i+1} * basis_j).
struct QuantumTable {
    int r = 0;
    std::vector<std::string> basis;
    QMatrix h_times{QMatrix::identity(2)};
    std::vector<QMatrix> e_times;
    QMatrix base_change{QMatrix::identity(2)};  // columns: preferred basis in terms of the standard one
    std::vector<std::string> preferred_basis;
};

QuantumTable quantum_table(int r);    // 1 <= r <= 3
QMatrix tilde_operator(int r);        // c_1 * over [1, H, E_1..E_r, pt]
QMatrix builtin_operator(SurfaceId s);

Rat diagonal_entry(int r);
Rat off_diagonal_entry(int r, int i, int j);

QMatrix assemble(int r, const GWTable& table);
Rat anticanonical_weight(const GWTable& table);  // N0(c_1) on X_8

struct StructuralReport {
    bool column_sums_positive = false;
    bool row2_nonnegative = false;
    bool square_nonnegative = false;
    bool square_rows_positive = false;  // rows 1, 2, r+3 of M^2
    bool square_dominance = false;      // m22^(2) > sum_{k=3}^{r+2} m_ik^(2), 3 <= i <= r+2
    std::optional<Rat> d_r;
    std::optional<bool> row1_shift_positive;  // m_{1,j+2} + d_r > 0
    std::optional<bool> row2_shift_positive;  // (9-r) m_{2,j+2} + d_r > 0
    std::optional<bool> square_exceeds_dr2;   // m22^(2) > d_r^2
    bool all_hold() const;
};

StructuralReport structural_checks(const QMatrix& m, int r);

struct SurfaceVerification {
    SurfaceId surface = SurfaceId::P2;
    std::vector<std::string> basis;
    QMatrix matrix{QMatrix::identity(2)};
    PropertyOCertificate certificate;
    std::optional<GpfWitness> gpf;  // on the matrix for P2, P1xP1, X1, X2; on the conjugate for r >= 3
    std::optional<ConjugationWitness> conjugation;
    std::optional<StructuralReport> structural;
    std::optional<Rat> anticanonical_weight;
    bool evidence_consistent = true;  // gpf success implies exact simplicity of rho
};

SurfaceVerification verify_conjecture_o(SurfaceId s, const GWTable* table, const Real& tol);

}  // namespace dpgamma
