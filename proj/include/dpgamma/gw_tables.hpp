#pragma once

#include "dpgamma/numeric.hpp"
#include "dpgamma/picard_lattice.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace dpgamma {

enum class GWKind { N0, PT, PTPT };

int kind_degree(GWKind k);  // 1, 2, 3
std::string kind_name(GWKind k);
GWKind parse_kind(const std::string& s);

struct GWEntry {
    int r = 0;
    DivClass cls;
    GWKind kind = GWKind::N0;
    Rat value;
    std::string provenance;
    bool from_file = true;  // false when filled in from a symmetry orbit
    bool seed = false;      // base-case value kept verbatim (outside the degree constraint)
};

class GWTable {
public:
    using Key = std::tuple<int, DivClass, GWKind>;

    const GWEntry* find(int r, const DivClass& cls, GWKind kind) const;
    const std::map<Key, GWEntry>& entries() const { return entries_; }
    std::size_t file_records() const { return file_records_; }
    std::string source() const { return source_; }

private:
    friend GWTable load_table(const std::string& path);
    friend GWTable parse_table(const std::string& text, const std::string& source);
    std::map<Key, GWEntry> entries_;
    std::size_t file_records_ = 0;
    std::string source_;
};

GWTable load_table(const std::string& path);
GWTable parse_table(const std::string& text, const std::string& source = "<memory>");
std::string default_table_path();

Rat invariant(const GWTable& table, int r, const DivClass& cls, GWKind kind);

// Orbit of a class under cremona and the swaps (finite for r <= 8).
std::vector<DivClass> symmetry_orbit(const DivClass& a);

}  // namespace dpgamma
