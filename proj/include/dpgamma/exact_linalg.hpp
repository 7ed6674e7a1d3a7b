#pragma once

#include "dpgamma/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace dpgamma {

// Dense square matrix of rationals, 2 <= n <= 16. Indices are 0-based.
class QMatrix {
public:
    static constexpr std::size_t kMaxDim = 16;

    explicit QMatrix(std::size_t n);
    QMatrix(std::initializer_list<std::initializer_list<Rat>> rows);
    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

    std::size_t size() const { return n_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Rat trace() const;
    Rat column_sum(std::size_t j) const;
    std::vector<Rat> row(std::size_t i) const;

    QMatrix operator-() const;
    friend QMatrix operator+(const QMatrix& x, const QMatrix& y);
    friend QMatrix operator-(const QMatrix& x, const QMatrix& y);
    friend QMatrix operator*(const QMatrix& x, const QMatrix& y);
    friend QMatrix operator*(const Rat& s, const QMatrix& x);
    friend bool operator==(const QMatrix& x, const QMatrix& y) = default;

    std::string to_string() const;

private:
    std::size_t n_;
    std::vector<Rat> a_;
};

// Univariate polynomial over Q, coefficients lowest degree first, trimmed.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs);
    RatPoly(std::initializer_list<Rat> coeffs) : RatPoly(std::vector<Rat>(coeffs)) {}
    static RatPoly monomial(const Rat& c, unsigned k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coefficients() const { return c_; }
    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
    const Rat& leading() const { return c_.back(); }

    Rat eval(const Rat& x) const;
    template <class T>
    T eval_as(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(Real(*it));
        return acc;
    }

    RatPoly derivative() const;
    RatPoly monic() const;
    RatPoly reflect() const;  // p(-x)

    friend RatPoly operator+(const RatPoly& p, const RatPoly& q);
    friend RatPoly operator-(const RatPoly& p, const RatPoly& q);
    friend RatPoly operator*(const RatPoly& p, const RatPoly& q);
    friend bool operator==(const RatPoly& p, const RatPoly& q) = default;

    std::string to_string(char var = 'x') const;

private:
    void trim();
    std::vector<Rat> c_;
};

// Alias; coefficients are rational.
using IntPoly = RatPoly;

struct PolyDivision {
    RatPoly quotient;
    RatPoly remainder;
};
PolyDivision divmod(const RatPoly& a, const RatPoly& b);
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);  // monic, gcd(0,0) = 0

struct SquarefreeFactor {
    RatPoly factor;  // monic, squarefree, non-constant
    unsigned multiplicity;
};
std::vector<SquarefreeFactor> squarefree_decompose(const RatPoly& p);
RatPoly squarefree_part(const RatPoly& p);

// Root in the half-open interval (lo, hi]; lo == hi marks an exactly known root.
struct RootInterval {
    Rat lo;
    Rat hi;
    Rat width() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / 2; }
};

std::vector<RatPoly> sturm_sequence(const RatPoly& p);
std::size_t sturm_count(const std::vector<RatPoly>& seq, const Rat& a, const Rat& b);  // distinct roots in (a, b]
std::size_t count_real_roots(const RatPoly& p);  // distinct real roots

Rat default_isolation_width();  // 1e-15
std::vector<RootInterval> isolate_real_roots(const RatPoly& p);
std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rat& width);
RootInterval refine_root(const std::vector<RatPoly>& sturm, RootInterval iv, const Rat& width);

Rat determinant(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);
QMatrix similarity(const QMatrix& m, const QMatrix& p);  // p^{-1} m p
QMatrix mat_pow(const QMatrix& m, unsigned k);
RatPoly char_poly(const QMatrix& m);

std::string rat_string(const Rat& q);

}  // namespace dpgamma
