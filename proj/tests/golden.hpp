#pragma once

#include "dpgamma/exact_linalg.hpp"

#include <random>
#include <vector>

namespace golden {

using dpgamma::QMatrix;
using dpgamma::Rat;

inline Rat q(long n, long d = 1) { return Rat(n, d); }

// c_1 * over [1, H, E_1, pt] and [1, H - E_1, E_1, pt].
inline QMatrix x1_standard() { return {{0, 2, 2, 3}, {3, 0, 0, 2}, {-1, 0, -1, -2}, {0, 3, 1, 0}}; }
inline QMatrix x1() { return {{0, 0, 2, 3}, {3, 0, 0, 2}, {2, 1, -1, 0}, {0, 2, 1, 0}}; }
inline QMatrix x1_base_change() { return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, 0, 1}}; }

inline QMatrix x2_standard() {
    return {{0, 4, 2, 2, 3}, {3, 1, 1, 1, 4}, {-1, -1, -2, -1, -2}, {-1, -1, -1, -2, -2}, {0, 3, 1, 1, 0}};
}
inline QMatrix x2() {
    return {{0, 4, 2, 2, 3},
            {q(3, 2), 0, q(1, 2), q(1, 2), 2},
            {q(1, 2), 1, q(-3, 2), q(-1, 2), 0},
            {q(1, 2), 1, q(-1, 2), q(-3, 2), 0},
            {0, 4, 1, 1, 0}};
}

inline QMatrix x3_standard() {
    return {{0, 6, 2, 2, 2, 6},      {3, 3, 2, 2, 2, 6},      {-1, -2, -3, -1, -1, -2},
            {-1, -2, -1, -3, -1, -2}, {-1, -2, -1, -1, -3, -2}, {0, 3, 1, 1, 1, 0}};
}
inline QMatrix x3() {
    return {{0, 12, 2, 2, 2, 6},
            {1, 1, q(2, 3), q(2, 3), q(2, 3), 2},
            {0, 0, q(-7, 3), q(-1, 3), q(-1, 3), 0},
            {0, 0, q(-1, 3), q(-7, 3), q(-1, 3), 0},
            {0, 0, q(-1, 3), q(-1, 3), q(-7, 3), 0},
            {0, 6, 1, 1, 1, 0}};
}

inline QMatrix x1_cubed() { return {{26, 1, 7, 28}, {28, 26, 1, 8}, {7, 21, 5, 1}, {1, 7, 21, 26}}; }
inline QMatrix x2_squared() {
    return {{8, 16, 1, 1, 8},
            {q(1, 2), 15, 4, 4, q(9, 2)},
            {q(1, 2), 0, 4, 3, q(7, 2)},
            {q(1, 2), 0, 3, 4, q(7, 2)},
            {7, 2, 0, 0, 8}};
}
inline QMatrix x3_squared() {
    return {{12, 48, 8, 8, 8, 24},
            {1, 25, q(8, 3), q(8, 3), q(8, 3), 8},
            {0, 0, q(17, 3), q(5, 3), q(5, 3), 0},
            {0, 0, q(5, 3), q(17, 3), q(5, 3), 0},
            {0, 0, q(5, 3), q(5, 3), q(17, 3), 0},
            {6, 6, 1, 1, 1, 12}};
}

// Determinant by Laplace expansion along the first row; independent of the library's elimination.
inline Rat cofactor_det(const std::vector<std::vector<Rat>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<Rat>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Rat> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        const Rat c = a[0][j] * cofactor_det(minor);
        s += (j % 2 == 0) ? c : Rat(-c);
    }
    return s;
}

// det(x I - M) by cofactor expansion.
inline Rat char_value_oracle(const QMatrix& m, const Rat& x) {
    std::vector<std::vector<Rat>> a(m.size(), std::vector<Rat>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = (i == j ? x : Rat(0)) - m(i, j);
    return cofactor_det(a);
}

inline QMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int lo, int hi, int den = 1) {
    std::uniform_int_distribution<int> u(lo, hi), d(1, den);
    QMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(u(rng), d(rng));
    return m;
}

// Positive matrix with one entry pushed negative and its column sum kept.
inline QMatrix perturbed_positive(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> u(1, 6);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    QMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
    const std::size_t j = idx(rng), i1 = idx(rng), i2 = (i1 + 1) % n;
    const Rat shift = m(i1, j) + Rat(1, u(rng));
    m(i1, j) -= shift;
    m(i2, j) += shift;
    return m;
}

}  // namespace golden
