#include "dpgamma/pf_toolkit.hpp"

#include <algorithm>
#include <functional>

namespace dpgamma {

bool is_nonnegative(const QMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m(i, j) < 0) return false;
    return true;
}

bool is_positive(const QMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m(i, j) <= 0) return false;
    return true;
}

// Tarjan on the support digraph i -> j iff m(i, j) != 0.
std::vector<std::vector<std::size_t>> strongly_connected_components(const QMatrix& m) {
    const std::size_t n = m.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < n; ++w) {
            if (m(v, w) == 0) continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);
    return comps;
}

bool is_irreducible(const QMatrix& m) { return strongly_connected_components(m).size() == 1; }

namespace {

std::optional<std::size_t> positive_row(const QMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        bool all = true;
        for (std::size_t j = 0; j < m.size() && all; ++j) all = m(i, j) > 0;
        if (all) return i;
    }
    return std::nullopt;
}

}  // namespace

GpfWitness gpf_check(const QMatrix& t, unsigned k_max) {
    if (k_max == 0) throw std::invalid_argument("k_max must be positive");
    GpfWitness w;
    w.column_sums_positive = true;
    for (std::size_t j = 0; j < t.size(); ++j) w.column_sums_positive = w.column_sums_positive && t.column_sum(j) > 0;
    QMatrix p = t;
    for (unsigned k = 1; k <= k_max; ++k) {
        if (k > 1) p = p * t;
        if (is_nonnegative(p) && is_irreducible(p)) {
            w.k = k;
            w.primitive_row = positive_row(p);
            break;
        }
    }
    return w;
}

std::optional<std::size_t> primitivity_row_check(const QMatrix& m) {
    if (!is_nonnegative(m)) throw NotNonnegative("matrix has a negative entry");
    if (!is_irreducible(m)) throw NotIrreducible("support digraph is not strongly connected");
    return positive_row(m);
}

QMatrix conjugation_transform(std::size_t r, const Rat& a, const Rat& b) {
    QMatrix p = QMatrix::identity(r + 3);
    p(1, 1) = a;
    for (std::size_t k = 2; k < r + 2; ++k) p(k, 1) = b;
    return p;
}

// Shape needed by the conjugation argument: first column e_2, rows of the E-block vanish
// outside the block, last row (0, 9-r, 1, ..., 1, 0).
bool has_blowup_template(const QMatrix& m, std::size_t r) {
    const std::size_t n = r + 3;
    if (r < 3 || m.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, 0) != (i == 1 ? 1 : 0)) return false;
    for (std::size_t i = 2; i < n - 1; ++i)
        if (m(i, 1) != 0 || m(i, n - 1) != 0) return false;
    if (m(n - 1, 1) != Rat(9 - static_cast<long>(r)) || m(n - 1, n - 1) != 0) return false;
    for (std::size_t j = 2; j < n - 1; ++j)
        if (m(n - 1, j) != 1) return false;
    return true;
}

ConjugationWitness conjugate_search(const QMatrix& m, std::size_t r) {
    if (!has_blowup_template(m, r)) throw TemplateMismatch("matrix lacks the blowup operator shape for r = " + std::to_string(r));
    ConjugationWitness w;
    for (long a = 2; a <= 16; a *= 2) {
        for (unsigned e = 1; e <= 20; ++e) {
            const Rat b(1, BigInt(1) << e);
            ++w.grid_points_tried;
            const QMatrix p = conjugation_transform(r, Rat(a), b);
            const QMatrix c = p * m * *inverse(p);
            bool cols = true;
            for (std::size_t j = 0; j < c.size() && cols; ++j) cols = c.column_sum(j) > 0;
            if (!cols) continue;
            if (!is_positive(c * c)) continue;
            w.found = true;
            w.a = a;
            w.b = b;
            w.c = Rat(1, a);
            w.transform = p;
            w.conjugated = c;
            w.checks = {true, true};
            return w;
        }
    }
    return w;
}

}  // namespace dpgamma
