#pragma once

#include "dpgamma/exact_linalg.hpp"

#include <optional>
#include <vector>

namespace dpgamma {

struct GpfWitness {
    bool column_sums_positive = false;
    std::optional<unsigned> k;                  // smallest k <= k_max with T^k nonnegative and irreducible
    std::optional<std::size_t> primitive_row;  // 0-based row of T^k with all entries positive
    bool holds() const { return column_sums_positive && k.has_value(); }
};

struct ConjugationChecks {
    bool column_sums_positive = false;
    bool square_positive = false;
};

struct ConjugationWitness {
    bool found = false;
    Rat a, b, c;
    QMatrix transform{QMatrix::identity(2)};
    QMatrix conjugated{QMatrix::identity(2)};  // transform * M * transform^{-1}
    ConjugationChecks checks;
    std::size_t grid_points_tried = 0;
};

bool is_nonnegative(const QMatrix& m);
bool is_positive(const QMatrix& m);
bool is_irreducible(const QMatrix& m);
std::vector<std::vector<std::size_t>> strongly_connected_components(const QMatrix& m);

GpfWitness gpf_check(const QMatrix& t, unsigned k_max = 8);
std::optional<std::size_t> primitivity_row_check(const QMatrix& m);

// P = (a-1)E_22 + I + b * sum_{k=3}^{r+2} E_k2 in 1-based indices.
QMatrix conjugation_transform(std::size_t r, const Rat& a, const Rat& b);
bool has_blowup_template(const QMatrix& m, std::size_t r);
ConjugationWitness conjugate_search(const QMatrix& m, std::size_t r);

}  // namespace dpgamma
