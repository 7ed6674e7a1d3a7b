#include "dpgamma/picard_lattice.hpp"

#include "dpgamma/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_set>

namespace dpgamma {

namespace {

void check_r(int r) {
    if (r < 0 || r > 8) throw std::invalid_argument("r must lie in [0, 8]");
}

void check_same(const DivClass& a, const DivClass& b) {
    if (a.r != b.r) throw MixedSurfaces("classes live on X_" + std::to_string(a.r) + " and X_" + std::to_string(b.r));
}

// Coefficients of classes of c_1-degree <= 4 stay well inside [-32, 31].
std::uint64_t pack(const DivClass& a) {
    std::uint64_t key = static_cast<std::uint64_t>(a.d0 + 32);
    for (int x : a.d) key = (key << 6) | static_cast<std::uint64_t>(x + 32);
    return key;
}

DivClass unpack(std::uint64_t key, int r) {
    std::vector<int> d(static_cast<std::size_t>(r));
    for (int i = r - 1; i >= 0; --i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(key & 63U) - 32;
        key >>= 6;
    }
    return DivClass(r, static_cast<int>(key & 63U) - 32, std::move(d));
}

}  // namespace

DivClass::DivClass(int r_, int d0_, std::vector<int> d_) : r(r_), d0(d0_), d(std::move(d_)) {
    check_r(r);
    if (static_cast<int>(d.size()) != r) throw std::invalid_argument("DivClass needs exactly r exceptional coefficients");
}

DivClass DivClass::zero(int r) { return DivClass(r, 0, std::vector<int>(static_cast<std::size_t>(r), 0)); }

DivClass DivClass::hyperplane(int r) { return DivClass(r, 1, std::vector<int>(static_cast<std::size_t>(r), 0)); }

DivClass DivClass::exceptional(int r, int i) {
    if (i < 1 || i > r) throw IndexOutOfRange("E_" + std::to_string(i) + " on X_" + std::to_string(r));
    DivClass e = zero(r);
    e.d[static_cast<std::size_t>(i - 1)] = -1;
    return e;
}

DivClass DivClass::anticanonical(int r) { return DivClass(r, 3, std::vector<int>(static_cast<std::size_t>(r), 1)); }

DivClass DivClass::operator+(const DivClass& o) const {
    check_same(*this, o);
    DivClass s = *this;
    s.d0 += o.d0;
    for (std::size_t i = 0; i < d.size(); ++i) s.d[i] += o.d[i];
    return s;
}

DivClass DivClass::operator-(const DivClass& o) const {
    check_same(*this, o);
    DivClass s = *this;
    s.d0 -= o.d0;
    for (std::size_t i = 0; i < d.size(); ++i) s.d[i] -= o.d[i];
    return s;
}

DivClass DivClass::operator*(int k) const {
    DivClass s = *this;
    s.d0 *= k;
    for (auto& x : s.d) x *= k;
    return s;
}

std::string DivClass::to_string() const {
    std::string s = std::to_string(d0);
    for (int x : d) s += "," + std::to_string(x);
    return s;
}

int intersect(const DivClass& a, const DivClass& b) {
    check_same(a, b);
    int v = a.d0 * b.d0;
    for (std::size_t i = 0; i < a.d.size(); ++i) v -= a.d[i] * b.d[i];
    return v;
}

int anticanonical_degree(const DivClass& a) { return 3 * a.d0 - std::accumulate(a.d.begin(), a.d.end(), 0); }

std::vector<DivClass> exceptional_classes(int r) {
    if (r < 1 || r > 8) throw std::invalid_argument("exceptional_classes needs 1 <= r <= 8");
    std::vector<DivClass> out;
    const auto ur = static_cast<std::size_t>(r);
    auto subsets = [&](std::size_t size, auto&& emit) {
        std::vector<bool> mask(ur, false);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(std::min(size, ur)), true);
        if (size > ur) return;
        do {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < ur; ++i)
                if (mask[i]) idx.push_back(i);
            emit(idx);
        } while (std::prev_permutation(mask.begin(), mask.end()));
    };
    auto with = [&](int d0, int base, const std::vector<std::size_t>& idx, int val) {
        DivClass c(r, d0, std::vector<int>(ur, base));
        for (auto i : idx) c.d[i] = val;
        return c;
    };
    for (int i = 1; i <= r; ++i) out.push_back(DivClass::exceptional(r, i));
    subsets(2, [&](const auto& idx) { out.push_back(with(1, 0, idx, 1)); });
    subsets(5, [&](const auto& idx) { out.push_back(with(2, 0, idx, 1)); });
    subsets(7, [&](const auto& idx) {
        for (auto k : idx) {
            DivClass c = with(3, 0, idx, 1);
            c.d[k] = 2;
            out.push_back(c);
        }
    });
    if (r == 8) {
        subsets(3, [&](const auto& idx) { out.push_back(with(4, 1, idx, 2)); });
        subsets(2, [&](const auto& idx) { out.push_back(with(5, 2, idx, 1)); });
        subsets(1, [&](const auto& idx) { out.push_back(with(6, 2, idx, 3)); });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<DivClass> effective_generators(int r) {
    auto g = exceptional_classes(r);
    if (r == 8) g.push_back(DivClass::anticanonical(8));
    return g;
}

DivClass cremona(const DivClass& a) {
    if (a.r < 3) throw NeedsThreePoints("Cremona involution needs r >= 3");
    const int s = a.d0 - a.d[0] - a.d[1] - a.d[2];
    DivClass b = a;
    b.d0 = 2 * a.d0 - a.d[0] - a.d[1] - a.d[2];
    for (std::size_t k = 0; k < 3; ++k) b.d[k] = s + a.d[k];
    return b;
}

DivClass swap(const DivClass& a, int j) {
    if (j < 1 || j > a.r - 1) throw IndexOutOfRange("swap index " + std::to_string(j) + " on X_" + std::to_string(a.r));
    DivClass b = a;
    std::swap(b.d[static_cast<std::size_t>(j - 1)], b.d[static_cast<std::size_t>(j)]);
    return b;
}

const std::vector<DivClass>& classes_of_degree(int r, int k) {
    if (k < 1 || k > 3) throw DegreeTooLarge("classes_of_degree supports 1 <= k <= 3, got " + std::to_string(k));
    if (r < 1 || r > 8) throw std::invalid_argument("classes_of_degree needs 1 <= r <= 8");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<const std::vector<DivClass>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{r, k}];
    if (slot) return *slot;
    const auto gens = effective_generators(r);
    std::unordered_set<std::uint64_t> keys;
    if (k == 1) {
        for (const auto& g : gens) keys.insert(pack(g));
    } else {
        // Built under the same lock; degree k-1 is computed inline to avoid re-entrancy.
        std::vector<std::uint64_t> prev;
        for (const auto& g : gens) prev.push_back(pack(g));
        for (int level = 2; level <= k; ++level) {
            std::unordered_set<std::uint64_t> next;
            for (auto key : prev) {
                const DivClass base = unpack(key, r);
                for (const auto& g : gens) next.insert(pack(base + g));
            }
            prev.assign(next.begin(), next.end());
        }
        keys.insert(prev.begin(), prev.end());
    }
    std::vector<DivClass> out;
    out.reserve(keys.size());
    for (auto key : keys) out.push_back(unpack(key, r));
    std::sort(out.begin(), out.end());
    slot = std::make_unique<const std::vector<DivClass>>(std::move(out));
    return *slot;
}

bool is_effective(const DivClass& a) {
    if (a.r < 3 || a.r > 8) throw std::invalid_argument("is_effective needs 3 <= r <= 8");
    const int k = anticanonical_degree(a);
    if (k > 4) throw DegreeTooLarge("c_1-degree " + std::to_string(k) + " exceeds 4");
    if (k <= 0) return k == 0 && a == DivClass::zero(a.r);
    auto in = [](const std::vector<DivClass>& v, const DivClass& x) { return std::binary_search(v.begin(), v.end(), x); };
    if (k <= 3) return in(classes_of_degree(a.r, k), a);
    const auto& deg3 = classes_of_degree(a.r, 3);
    for (const auto& g : effective_generators(a.r))
        if (in(deg3, a - g)) return true;
    return false;
}

}  // namespace dpgamma
