#include "dpgamma/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dpgamma {

namespace {

void check_dim(std::size_t n) {
    if (n < 2 || n > QMatrix::kMaxDim)
        throw std::invalid_argument("QMatrix dimension must lie in [2, 16], got " + std::to_string(n));
}

void check_same(const QMatrix& x, const QMatrix& y) {
    if (x.size() != y.size()) throw std::invalid_argument("QMatrix dimension mismatch");
}

int sign(const Rat& q) { return q.sign(); }

}  // namespace

std::string rat_string(const Rat& q) { return q.str(); }

QMatrix::QMatrix(std::size_t n) : n_(n), a_(n * n) { check_dim(n); }

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) : n_(rows.size()) {
    check_dim(n_);
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) throw std::invalid_argument("QMatrix rows must be square");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    QMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw std::invalid_argument("QMatrix rows must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Rat QMatrix::trace() const {
    Rat t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

Rat QMatrix::column_sum(std::size_t j) const {
    Rat s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j);
    return s;
}

std::vector<Rat> QMatrix::row(std::size_t i) const {
    return {a_.begin() + static_cast<long>(i * n_), a_.begin() + static_cast<long>((i + 1) * n_)};
}

QMatrix QMatrix::operator-() const {
    QMatrix r(*this);
    for (auto& x : r.a_) x = -x;
    return r;
}

QMatrix operator+(const QMatrix& x, const QMatrix& y) {
    check_same(x, y);
    QMatrix r(x);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
}

QMatrix operator-(const QMatrix& x, const QMatrix& y) {
    check_same(x, y);
    QMatrix r(x);
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    check_same(x, y);
    const std::size_t n = x.n_;
    QMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Rat& xik = x(i, k);
            if (xik == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

QMatrix operator*(const Rat& s, const QMatrix& x) {
    QMatrix r(x);
    for (auto& v : r.a_) v *= s;
    return r;
}

std::string QMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j).str();
        os << ']';
    }
    os << ']';
    return os.str();
}

RatPoly::RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::monomial(const Rat& c, unsigned k) {
    std::vector<Rat> v(k + 1);
    v[k] = c;
    return RatPoly(std::move(v));
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return {};
    std::vector<Rat> v(c_);
    const Rat lc = leading();
    for (auto& x : v) x /= lc;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::reflect() const {
    std::vector<Rat> v(c_);
    for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
    return RatPoly(std::move(v));
}

RatPoly operator+(const RatPoly& p, const RatPoly& q) {
    std::vector<Rat> v(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = p.coeff(k) + q.coeff(k);
    return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& p, const RatPoly& q) {
    std::vector<Rat> v(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = p.coeff(k) - q.coeff(k);
    return RatPoly(std::move(v));
}

RatPoly operator*(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rat> v(p.c_.size() + q.c_.size() - 1);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
        for (std::size_t j = 0; j < q.c_.size(); ++j) v[i + j] += p.c_[i] * q.c_[j];
    return RatPoly(std::move(v));
}

std::string RatPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rat& c = c_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0 || a != 1) os << a.str();
        if (k > 0) {
            if (a != 1) os << '*';
            os << var;
            if (k > 1) os << '^' << k;
        }
    }
    return os.str();
}

PolyDivision divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rat> r = a.coefficients();
    const int db = b.degree();
    if (a.degree() < db) return {RatPoly{}, a};
    std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1));
    for (int k = a.degree(); k >= db; --k) {
        const Rat c = r[static_cast<std::size_t>(k)] / b.leading();
        q[static_cast<std::size_t>(k - db)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * b.coeff(static_cast<std::size_t>(j));
    }
    r.resize(static_cast<std::size_t>(db));
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

// Yun's algorithm.
std::vector<SquarefreeFactor> squarefree_decompose(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_decompose of zero polynomial");
    std::vector<SquarefreeFactor> out;
    if (p.degree() == 0) return out;
    const RatPoly f = p.monic();
    const RatPoly df = f.derivative();
    RatPoly a = poly_gcd(f, df);
    RatPoly b = divmod(f, a).quotient;
    RatPoly c = divmod(df, a).quotient;
    RatPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        RatPoly g = poly_gcd(b, d);
        if (g.degree() > 0) out.push_back({g, i});
        b = divmod(b, g).quotient;
        c = divmod(d, g).quotient;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 0) return p.monic();
    return divmod(p.monic(), poly_gcd(p, p.derivative())).quotient;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
    std::vector<RatPoly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    RatPoly q = p.derivative();
    while (!q.is_zero()) {
        seq.push_back(q);
        RatPoly r = divmod(seq[seq.size() - 2], q).remainder;
        q = RatPoly{} - r;
    }
    return seq;
}

namespace {

std::size_t variations_at(const std::vector<RatPoly>& seq, const Rat& x) {
    std::size_t v = 0;
    int prev = 0;
    for (const auto& s : seq) {
        int sg = sign(s.eval(x));
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++v;
        prev = sg;
    }
    return v;
}

std::size_t variations_at_infinity(const std::vector<RatPoly>& seq, bool positive) {
    std::size_t v = 0;
    int prev = 0;
    for (const auto& s : seq) {
        int sg = sign(s.leading());
        if (!positive && s.degree() % 2 == 1) sg = -sg;
        if (prev != 0 && sg != prev) ++v;
        prev = sg;
    }
    return v;
}

Rat cauchy_bound(const RatPoly& p) {
    Rat m = 0;
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rat(abs(p.coeff(static_cast<std::size_t>(k)) / p.leading())));
    return m + 1;
}

}  // namespace

std::size_t sturm_count(const std::vector<RatPoly>& seq, const Rat& a, const Rat& b) {
    if (seq.empty()) return 0;
    const std::size_t va = variations_at(seq, a), vb = variations_at(seq, b);
    return va > vb ? va - vb : 0;
}

std::size_t count_real_roots(const RatPoly& p) {
    auto seq = sturm_sequence(squarefree_part(p));
    return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

Rat default_isolation_width() { return Rat(1, BigInt(mp::pow(BigInt(10), 15))); }

RootInterval refine_root(const std::vector<RatPoly>& sturm, RootInterval iv, const Rat& width) {
    while (iv.lo != iv.hi && iv.width() > width) {
        const Rat mid = iv.midpoint();
        if (sturm.front().eval(mid) == 0) return {mid, mid};
        if (sturm_count(sturm, iv.lo, mid) > 0)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

std::vector<RootInterval> isolate_real_roots(const RatPoly& p) { return isolate_real_roots(p, default_isolation_width()); }

std::vector<RootInterval> isolate_real_roots(const RatPoly& p, const Rat& width) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots of zero polynomial");
    std::vector<RootInterval> out;
    if (p.degree() == 0) return out;
    const RatPoly s = squarefree_part(p);
    const auto seq = sturm_sequence(s);
    const Rat bound = cauchy_bound(s);
    std::vector<RootInterval> stack{{-bound, bound}};
    while (!stack.empty()) {
        RootInterval iv = stack.back();
        stack.pop_back();
        const std::size_t n = sturm_count(seq, iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(refine_root(seq, iv, width));
            continue;
        }
        const Rat mid = iv.midpoint();
        stack.push_back({mid, iv.hi});
        stack.push_back({iv.lo, mid});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.hi < y.hi; });
    return out;
}

Rat determinant(const QMatrix& m) {
    const std::size_t n = m.size();
    QMatrix a(m);
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            const Rat f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
    const std::size_t n = m.size();
    QMatrix a(m), inv = QMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        const Rat d = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            const Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

QMatrix similarity(const QMatrix& m, const QMatrix& p) {
    auto pinv = inverse(p);
    if (!pinv) throw SingularTransform("transform matrix has zero determinant");
    return *pinv * m * p;
}

QMatrix mat_pow(const QMatrix& m, unsigned k) {
    if (k == 0) throw std::invalid_argument("mat_pow exponent must be positive");
    QMatrix result = QMatrix::identity(m.size());
    QMatrix base = m;
    while (k) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k) base = base * base;
    }
    return result;
}

// Faddeev-LeVerrier: N_k = M N_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M N_k)/k.
RatPoly char_poly(const QMatrix& m) {
    const std::size_t n = m.size();
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    QMatrix nk(n);
    for (std::size_t k = 1; k <= n; ++k) {
        nk = m * nk;
        for (std::size_t i = 0; i < n; ++i) nk(i, i) += c[n - k + 1];
        c[n - k] = -(m * nk).trace() / static_cast<long>(k);
    }
    return RatPoly(std::move(c));
}

}  // namespace dpgamma
