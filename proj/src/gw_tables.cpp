#include "dpgamma/gw_tables.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dpgamma {

int kind_degree(GWKind k) {
    switch (k) {
        case GWKind::N0: return 1;
        case GWKind::PT: return 2;
        case GWKind::PTPT: return 3;
    }
    return 0;
}

std::string kind_name(GWKind k) {
    switch (k) {
        case GWKind::N0: return "N0";
        case GWKind::PT: return "PT";
        case GWKind::PTPT: return "PTPT";
    }
    return "?";
}

GWKind parse_kind(const std::string& s) {
    if (s == "N0") return GWKind::N0;
    if (s == "PT") return GWKind::PT;
    if (s == "PTPT") return GWKind::PTPT;
    throw ParseError("unknown invariant kind '" + s + "'");
}

const GWEntry* GWTable::find(int r, const DivClass& cls, GWKind kind) const {
    auto it = entries_.find({r, cls, kind});
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<DivClass> symmetry_orbit(const DivClass& a) {
    std::set<DivClass> seen{a};
    std::vector<DivClass> todo{a};
    while (!todo.empty()) {
        DivClass x = todo.back();
        todo.pop_back();
        std::vector<DivClass> next;
        for (int j = 1; j < x.r; ++j) next.push_back(swap(x, j));
        if (x.r >= 3) next.push_back(cremona(x));
        for (auto& y : next)
            if (seen.insert(y).second) todo.push_back(std::move(y));
    }
    return {seen.begin(), seen.end()};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    if (t.empty()) throw ParseError(where + ": empty integer field");
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw ParseError(where + ": bad integer '" + t + "'");
    }
    if (pos != t.size()) throw ParseError(where + ": bad integer '" + t + "'");
    return v;
}

Rat parse_value(const std::string& s, const std::string& where) {
    const auto parts = split(trim(s), '/');
    if (parts.size() != 2) throw ParseError(where + ": value must be num/den");
    for (const auto& p : parts) {
        const std::string t = trim(p);
        if (t.empty() || t.find_first_not_of("-0123456789") != std::string::npos)
            throw ParseError(where + ": value must be an exact rational, got '" + s + "'");
    }
    const BigInt num(trim(parts[0])), den(trim(parts[1]));
    if (den <= 0) throw ParseError(where + ": denominator must be positive");
    return Rat(num, den);
}

void check_seed(const GWTable& t, int r, const DivClass& cls, GWKind kind, const Rat& expected, const std::string& label) {
    const GWEntry* e = t.find(r, cls, kind);
    if (!e) throw SeedMismatch("r=" + std::to_string(r) + ": base value " + label + " absent");
    if (e->value != expected)
        throw SeedMismatch("r=" + std::to_string(r) + ": " + label + " = " + e->value.str() + ", expected " + expected.str());
}

}  // namespace

GWTable parse_table(const std::string& text, const std::string& source) {
    GWTable t;
    t.source_ = source;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<GWEntry> records;
    std::set<int> ranks;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto f = split(body, '|');
        if (f.size() != 5) throw ParseError(where + ": expected 5 '|'-separated fields");
        GWEntry e;
        e.r = static_cast<int>(parse_long(f[0], where));
        if (e.r < 4 || e.r > 8) throw ParseError(where + ": r must lie in [4, 8]");
        const auto coeffs = split(trim(f[1]), ',');
        if (static_cast<int>(coeffs.size()) != e.r + 1) throw ParseError(where + ": class needs r+1 coefficients");
        std::vector<int> d;
        for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(static_cast<int>(parse_long(coeffs[i], where)));
        e.cls = DivClass(e.r, static_cast<int>(parse_long(coeffs[0], where)), std::move(d));
        e.kind = parse_kind(trim(f[2]));
        e.value = parse_value(f[3], where);
        e.provenance = trim(f[4]);
        if (e.value < 0) throw ParseError(where + ": invariants must be nonnegative");
        const int deg = anticanonical_degree(e.cls);
        e.seed = e.provenance == "seed" && deg != kind_degree(e.kind);
        if (!e.seed && deg != kind_degree(e.kind))
            throw ParseError(where + ": kind " + kind_name(e.kind) + " requires c_1-degree " + std::to_string(kind_degree(e.kind)));
        if (deg > 4 || !is_effective(e.cls)) throw ParseError(where + ": class " + e.cls.to_string() + " is not effective");
        ranks.insert(e.r);
        records.push_back(std::move(e));
    }
    t.file_records_ = records.size();

    for (const auto& e : records) {
        auto [it, inserted] = t.entries_.emplace(GWTable::Key{e.r, e.cls, e.kind}, e);
        if (!inserted && it->second.value != e.value)
            throw SymmetryViolation("conflicting records for class " + e.cls.to_string() + " (" + kind_name(e.kind) + ")");
    }
    // Fill symmetry orbits; every file record in an orbit must agree.
    for (const auto& e : records) {
        if (e.seed) continue;
        const auto orbit = symmetry_orbit(e.cls);
        for (const auto& c : orbit) {
            auto it = t.entries_.find({e.r, c, e.kind});
            if (it != t.entries_.end()) {
                if (it->second.value != e.value)
                    throw SymmetryViolation("orbit of " + e.cls.to_string() + " carries values " + e.value.str() + " and " +
                                            it->second.value.str() + " (" + kind_name(e.kind) + ", r=" + std::to_string(e.r) + ")");
                continue;
            }
            GWEntry filled = e;
            filled.cls = c;
            filled.from_file = false;
            t.entries_.emplace(GWTable::Key{e.r, c, e.kind}, std::move(filled));
        }
    }
    for (int r : ranks) {
        const DivClass h = DivClass::hyperplane(r);
        const DivClass e1 = DivClass::exceptional(r, 1), e2 = DivClass::exceptional(r, 2);
        check_seed(t, r, h - e1 - e2, GWKind::PT, 1, "<pt>_{H-E1-E2}");
        check_seed(t, r, h - e1, GWKind::PT, 1, "<pt>_{H-E1}");
        check_seed(t, r, h, GWKind::PTPT, 1, "<pt,pt>_H");
        check_seed(t, r, e1, GWKind::PT, 0, "<pt>_{E1}");
    }
    return t;
}

GWTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open GW table '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_table(ss.str(), path);
}

std::string default_table_path() {
    if (const char* env = std::getenv("DPGAMMA_GW_TABLE")) return env;
    return std::string(DPGAMMA_DATA_DIR) + "/gw_table.txt";
}

Rat invariant(const GWTable& table, int r, const DivClass& cls, GWKind kind) {
    if (const GWEntry* e = table.find(r, cls, kind)) return e->value;
    if (kind == GWKind::N0 && intersect(cls, cls) == -1 && anticanonical_degree(cls) == 1) return 1;
    throw MissingEntry("no " + kind_name(kind) + " value for class " + cls.to_string() + " on X_" + std::to_string(r));
}

}  // namespace dpgamma
