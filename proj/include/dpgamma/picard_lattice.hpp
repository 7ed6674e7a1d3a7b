#pragma once

#include <compare>
#include <string>
#include <vector>

namespace dpgamma {

// A = d0 H - sum d_i E_i on X_r (blowup of P^2 in r general points).
struct DivClass {
    int r = 0;
    int d0 = 0;
    std::vector<int> d;

    DivClass() = default;
    DivClass(int r_, int d0_, std::vector<int> d_);
    static DivClass zero(int r);
    static DivClass hyperplane(int r);
    static DivClass exceptional(int r, int i);  // E_i, 1-based
    static DivClass anticanonical(int r);        // c_1 = 3H - sum E_i

    DivClass operator+(const DivClass& o) const;
    DivClass operator-(const DivClass& o) const;
    DivClass operator*(int k) const;
    auto operator<=>(const DivClass&) const = default;

    std::string to_string() const;  // "d0,d1,...,dr"
};

int intersect(const DivClass& a, const DivClass& b);
int anticanonical_degree(const DivClass& a);  // c_1 . A

std::vector<DivClass> exceptional_classes(int r);
std::vector<DivClass> effective_generators(int r);  // exceptional classes, plus c_1 when r = 8

DivClass cremona(const DivClass& a);
DivClass swap(const DivClass& a, int j);  // exchanges d_j and d_{j+1}, 1-based

bool is_effective(const DivClass& a);
// Sums of k generators, deduplicated and sorted. Cached per (r, k).
const std::vector<DivClass>& classes_of_degree(int r, int k);

}  // namespace dpgamma
