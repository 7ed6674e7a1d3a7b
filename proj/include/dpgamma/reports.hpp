#pragma once

#include "dpgamma/gw_tables.hpp"
#include "dpgamma/numeric.hpp"
#include "dpgamma/quantum_operator.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dpgamma {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    Real tolerance = Real("1e-9");
    int precision_digits = 60;
    std::vector<Real> t_grid{10, 15, 20, 25, 30};
    std::uint64_t seed = 42;
    std::string gw_table_path;  // empty: bundled table
    std::string output_path;    // empty: stdout
    std::size_t term_budget = 600;

    void validate() const;
    int report_digits() const { return precision_digits - 10; }  // last digits are not reported
    int guard_digits() const { return precision_digits - 10; }
};

// key = value lines; '#' starts a comment. Keys: tol, digits, t-grid, seed, gw-table, out, terms.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);
std::vector<Real> parse_real_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);

struct Report {
    Json doc;
    bool ok = true;  // every certificate / finding in the document holds
};

// target: a surface name or "all".
Report cmd_verify_o(const std::string& target, const RunConfig& cfg);
// Either a toric surface or a full weight vector.
Report cmd_mirror(const std::string& target, const std::optional<std::vector<int>>& weights, const RunConfig& cfg);
Report cmd_gamma_limit(const std::string& target, const std::optional<std::vector<int>>& weights, const RunConfig& cfg);
// target: r in 1..8 or "all".
Report cmd_exceptional(const std::string& target, const RunConfig& cfg);
Report cmd_operator(const std::string& target, const RunConfig& cfg);
Report cmd_gamma_class(const std::string& target, const std::optional<std::vector<int>>& weights, int degree,
                       const RunConfig& cfg);
Report cmd_report_all(const RunConfig& cfg);

Json envelope(const std::string& command, const RunConfig& cfg);
std::string render(const Json& doc);  // stable text form, trailing newline

}  // namespace dpgamma
