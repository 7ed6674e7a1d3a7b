#include "dpgamma/reports.hpp"

#include "dpgamma/gamma_class.hpp"
#include "dpgamma/j_series.hpp"
#include "dpgamma/lg_mirror.hpp"
#include "dpgamma/picard_lattice.hpp"
#include "dpgamma/spectra.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dpgamma {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string num(const Real& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

Json cnum(const Complex& z, int digits) { return Json{{"re", num(real(z), digits)}, {"im", num(imag(z), digits)}}; }

Json matrix_json(const QMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(rat_string(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json poly_json(const RatPoly& p) {
    Json c = Json::array();
    for (const auto& x : p.coefficients()) c.push_back(rat_string(x));
    return c;
}

std::vector<SurfaceId> surface_targets(const std::string& target) {
    if (target == "all") return all_surfaces();
    const auto s = parse_surface(target);
    if (!s) throw ParseError("unknown surface '" + target + "' (expected P2, P1xP1, X1..X8 or all)");
    return {*s};
}

struct TableCache {
    const RunConfig& cfg;
    std::optional<GWTable> table;
    const GWTable* get() {
        if (!table) table = load_table(cfg.gw_table_path.empty() ? default_table_path() : cfg.gw_table_path);
        return &*table;
    }
    const GWTable* for_surface(SurfaceId s) { return blowup_rank(s) >= 4 ? get() : nullptr; }
};

Json spectrum_json(const SpectrumReport& sp, int digits) {
    Json e = Json::array();
    for (const auto& ev : sp.eigenvalues) {
        Json j{{"value", cnum(ev.value, digits)}, {"multiplicity", ev.multiplicity}, {"real", ev.is_real}};
        if (ev.interval) j["interval"] = {rat_string(ev.interval->lo), rat_string(ev.interval->hi)};
        else j["radius"] = num(ev.radius, 6);
        e.push_back(j);
    }
    return e;
}

bool verification_ok(const SurfaceVerification& v) {
    return v.certificate.holds && v.evidence_consistent && (!v.structural || v.structural->all_hold());
}

Json verification_json(const SurfaceVerification& v, int digits) {
    const auto& c = v.certificate;
    Json cert{{"holds", c.holds},
              {"rho", num(c.rho, digits)},
              {"rho_is_eigenvalue", c.rho_is_eigenvalue},
              {"rho_simple", c.rho_simple},
              {"rho_multiplicity", c.rho_multiplicity},
              {"fano_index", c.fano_index},
              {"part2_holds", c.part2_holds}};
    Json mods = Json::array();
    for (const auto& z : c.modulus_rho_eigenvalues) mods.push_back(cnum(z, digits));
    cert["modulus_rho_eigenvalues"] = mods;

    Json j{{"surface", surface_name(v.surface)}, {"basis", v.basis}, {"matrix", matrix_json(v.matrix)},
           {"characteristic_polynomial", poly_json(char_poly(v.matrix))}, {"certificate", cert}};
    if (v.gpf) {
        Json g{{"holds", v.gpf->holds()}, {"column_sums_positive", v.gpf->column_sums_positive}};
        g["k"] = v.gpf->k ? Json(*v.gpf->k) : Json(nullptr);
        g["primitive_row"] = v.gpf->primitive_row ? Json(*v.gpf->primitive_row + 1) : Json(nullptr);
        j["gpf_witness"] = g;
    }
    if (v.conjugation) {
        const auto& w = *v.conjugation;
        Json cw{{"found", w.found}, {"grid_points_tried", w.grid_points_tried}};
        if (w.found) {
            cw["a"] = rat_string(w.a);
            cw["b"] = rat_string(w.b);
            cw["c"] = rat_string(w.c);
            cw["transform"] = matrix_json(w.transform);
            cw["conjugated"] = matrix_json(w.conjugated);
            cw["column_sums_positive"] = w.checks.column_sums_positive;
            cw["square_positive"] = w.checks.square_positive;
        }
        j["conjugation_witness"] = cw;
    }
    if (v.structural) {
        const auto& s = *v.structural;
        Json sj{{"all_hold", s.all_hold()},
                {"column_sums_positive", s.column_sums_positive},
                {"row2_nonnegative", s.row2_nonnegative},
                {"square_nonnegative", s.square_nonnegative},
                {"square_rows_positive", s.square_rows_positive},
                {"square_dominance", s.square_dominance}};
        if (s.d_r) sj["d_r"] = rat_string(*s.d_r);
        if (s.row1_shift_positive) sj["row1_shift_positive"] = *s.row1_shift_positive;
        if (s.row2_shift_positive) sj["row2_shift_positive"] = *s.row2_shift_positive;
        if (s.square_exceeds_dr2) sj["square_exceeds_dr2"] = *s.square_exceeds_dr2;
        j["structural"] = sj;
    }
    if (v.anticanonical_weight) j["anticanonical_weight"] = rat_string(*v.anticanonical_weight);
    j["evidence_consistent"] = v.evidence_consistent;
    j["holds"] = verification_ok(v);
    return j;
}

GammaLimitOptions limit_options(const RunConfig& cfg) {
    GammaLimitOptions o;
    o.term_budget = cfg.term_budget;
    o.guard_digits = cfg.guard_digits();
    o.tol = cfg.tolerance;
    o.seed = cfg.seed;
    return o;
}

// A budget of 0 means: size it from the growth rate at the largest t.
GammaLimitReport run_limit(const CIModel& model, const Real& rho, const RunConfig& cfg) {
    GammaLimitOptions o = limit_options(cfg);
    if (o.term_budget == 0) {
        const JSeries probe(model);
        o.term_budget = auto_term_budget(rho + Real(probe.c0()), cfg.t_grid.back());
    }
    return gamma_limit_report(model, rho, cfg.t_grid, o);
}

Json limit_json(const GammaLimitReport& r, int digits) {
    Json pts = Json::array();
    for (const auto& p : r.points) {
        Json pj{{"t", num(p.t, 6)}, {"exhausted", p.exhausted}, {"terms", p.terms}};
        if (!p.exhausted) {
            Json ratios = Json::array();
            for (std::size_t i = 0; i < p.ratios.size(); ++i) ratios.push_back(r.used[i] ? Json(num(p.ratios[i], digits)) : Json(nullptr));
            pj["ratios"] = ratios;
            pj["dispersion"] = num(p.dispersion, 6);
        }
        pts.push_back(pj);
    }
    Json g = Json::array();
    for (const auto& x : r.gamma_components) g.push_back(num(x, digits));
    Json j{{"model", r.model},
           {"rho", num(r.rho, digits)},
           {"c0", rat_string(r.c0)},
           {"term_budget", r.term_budget},
           {"test_classes", r.components},
           {"gamma_components", g},
           {"points", pts},
           {"monotone", r.monotone},
           {"complete", r.complete},
           {"final_dispersion", num(r.final_dispersion, 6)},
           {"threshold", num(r.threshold, 6)}};
    j["growth_rate"] = r.growth_rate ? Json(num(*r.growth_rate, 12)) : Json(nullptr);
    if (!r.complete) {
        const Real kt = r.rho + Real(r.c0);
        j["terms_needed_at_last_t"] = auto_term_budget(kt, r.points.back().t);
    }
    j["holds"] = r.holds();
    return j;
}

}  // namespace

void RunConfig::validate() const {
    if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
    if (precision_digits < 20 || precision_digits > static_cast<int>(kWorkingDigits))
        throw std::invalid_argument("digits must lie in [20, " + std::to_string(kWorkingDigits) + "]");
    if (t_grid.empty()) throw std::invalid_argument("t grid is empty");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0)) throw std::invalid_argument("t grid values must be positive");
        if (i && !(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("t grid must be increasing");
    }
}

std::vector<Real> parse_real_list(const std::string& s) {
    std::vector<Real> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
        try {
            out.emplace_back(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + item + "'");
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (item.empty() || pos != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
    std::stringstream ss(text);
    int line_no = 0;
    for (std::string line; std::getline(ss, line);) {
        ++line_no;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (key == "tol")
                cfg.tolerance = Real(value);
            else if (key == "digits")
                cfg.precision_digits = std::stoi(value);
            else if (key == "t-grid")
                cfg.t_grid = parse_real_list(value);
            else if (key == "seed")
                cfg.seed = std::stoull(value);
            else if (key == "gw-table")
                cfg.gw_table_path = value;
            else if (key == "out")
                cfg.output_path = value;
            else if (key == "terms")
                cfg.term_budget = value == "auto" ? 0 : std::stoul(value);
            else
                throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("config line " + std::to_string(line_no) + ": bad value for '" + key + "'");
        }
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str());
}

Json envelope(const std::string& command, const RunConfig& cfg) {
    Json grid = Json::array();
    for (const auto& t : cfg.t_grid) grid.push_back(num(t, 6));
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"config",
                 {{"tolerance", num(cfg.tolerance, 6)},
                  {"precision_digits", cfg.precision_digits},
                  {"report_digits", cfg.report_digits()},
                  {"t_grid", grid},
                  {"seed", cfg.seed},
                  {"term_budget", cfg.term_budget == 0 ? Json("auto") : Json(cfg.term_budget)}}}};
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

Report cmd_verify_o(const std::string& target, const RunConfig& cfg) {
    const auto targets = surface_targets(target);
    TableCache tc{cfg, {}};
    Report rep{envelope("verify-o", cfg), true};
    Json list = Json::array();
    for (SurfaceId s : targets) {
        const auto v = verify_conjecture_o(s, tc.for_surface(s), cfg.tolerance);
        rep.ok = rep.ok && verification_ok(v);
        list.push_back(verification_json(v, cfg.report_digits()));
    }
    if (tc.table) rep.doc["gw_table"] = {{"source", tc.table->source()}, {"file_records", tc.table->file_records()}, {"entries", tc.table->entries().size()}};
    rep.doc["surfaces"] = list;
    rep.doc["holds"] = rep.ok;
    return rep;
}

Report cmd_mirror(const std::string& target, const std::optional<std::vector<int>>& weights, const RunConfig& cfg) {
    const int dg = cfg.report_digits();
    Report rep{envelope("mirror", cfg), true};
    if (!weights && target == "all") throw ParseError("mirror takes a single surface");
    const LaurentPoly f = weights ? builtin_potential(*weights) : builtin_potential(surface_targets(target).front());
    const auto b = bmodel_o_check(f, cfg.tolerance, cfg.seed);
    Json vals = Json::array();
    for (const auto& u : b.critical_values) vals.push_back(cnum(u, dg));
    Json z = Json::array();
    for (const auto& x : b.conifold.z_con) z.push_back(num(x, dg));
    rep.doc["potential"] = f.to_string();
    rep.doc["expected_critical_points"] = expected_critical_count(f);
    rep.doc["critical_values"] = vals;
    rep.doc["conifold"] = {{"z_con", z},
                           {"T_con", num(b.T_con, dg)},
                           {"certified", b.conifold.certified},
                           {"gradient_norm", num(b.conifold.gradient_norm, 6)},
                           {"iterations", b.conifold.iterations}};
    rep.doc["bmodel_o"] = {{"cond1", b.cond1}, {"cond2", b.cond2}, {"holds", b.holds()}};
    rep.ok = b.holds() && b.conifold.certified;
    if (weights) {
        const auto cf = wps_closed_form(*weights);
        const auto crit = critical_points(f, cfg.seed, cfg.tolerance);
        Real dev = abs(cf.c - b.T_con);
        for (const auto& p : cf.points) {
            Real best = -1;
            for (const auto& c : crit) {
                Real d = 0;
                for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, Real(abs(p[i] - c.point[i])));
                if (best < 0 || d < best) best = d;
            }
            dev = std::max(dev, best);
        }
        rep.doc["weights"] = *weights;
        rep.doc["closed_form"] = {{"index", cf.index}, {"c", num(cf.c, dg)}, {"max_deviation", num(dev, 6)}, {"agrees", dev <= cfg.tolerance}};
        rep.ok = rep.ok && dev <= cfg.tolerance;
    } else {
        const SurfaceId s = surface_targets(target).front();
        const auto m = mirror_spectrum_match(s, cfg.tolerance, cfg.seed);
        Json pairs = Json::array();
        for (const auto& [e, u] : m.pairs) pairs.push_back({{"eigenvalue", cnum(e, dg)}, {"critical_value", cnum(u, dg)}});
        rep.doc["surface"] = surface_name(s);
        rep.doc["spectrum_match"] = {{"matched", m.matched},
                                     {"multiplicities_align", m.multiplicities_align},
                                     {"max_deviation", num(m.max_deviation, 6)},
                                     {"pairs", pairs}};
        rep.ok = rep.ok && m.matched;
    }
    rep.doc["holds"] = rep.ok;
    return rep;
}

Report cmd_gamma_limit(const std::string& target, const std::optional<std::vector<int>>& weights, const RunConfig& cfg) {
    Report rep{envelope("gamma-limit", cfg), true};
    GammaLimitReport r;
    if (weights) {
        r = run_limit(wps_model(*weights), wps_closed_form(*weights).c, cfg);
    } else {
        const auto ts = surface_targets(target);
        if (ts.size() != 1) throw ParseError("gamma-limit takes a single surface");
        const SurfaceId s = ts.front();
        const CIModel model = ci_model(s);
        TableCache tc{cfg, {}};
        const Real rho = verify_conjecture_o(s, tc.for_surface(s), cfg.tolerance).certificate.rho;
        r = run_limit(model, rho, cfg);
    }
    rep.doc["gamma_limit"] = limit_json(r, cfg.report_digits());
    rep.ok = r.holds();
    rep.doc["holds"] = rep.ok;
    return rep;
}

Report cmd_exceptional(const std::string& target, const RunConfig& cfg) {
    static const std::size_t known[] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
    std::vector<int> rs;
    if (target == "all") {
        for (int r = 1; r <= 8; ++r) rs.push_back(r);
    } else {
        std::size_t pos = 0;
        int r = 0;
        try {
            r = std::stoi(target, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != target.size() || r < 1 || r > 8) throw ParseError("exceptional expects r in 1..8 or all");
        rs.push_back(r);
    }
    Report rep{envelope("exceptional", cfg), true};
    Json list = Json::array();
    for (int r : rs) {
        const auto cls = exceptional_classes(r);
        Json names = Json::array();
        for (const auto& c : cls) names.push_back(c.to_string());
        Json j{{"r", r}, {"count", cls.size()}, {"count_matches", cls.size() == known[r]}, {"classes", names}};
        bool ok = cls.size() == known[r];
        if (r >= 4) {
            j["d_r"] = rat_string(diagonal_entry(r));
            bool zero = true;
            for (int i = 1; i <= r; ++i)
                for (int k = 1; k <= r; ++k)
                    if (i != k) zero = zero && off_diagonal_entry(r, i, k) == 0;
            j["off_diagonal_vanish"] = zero;
            ok = ok && zero;
        }
        rep.ok = rep.ok && ok;
        list.push_back(j);
    }
    rep.doc["surfaces"] = list;
    rep.doc["holds"] = rep.ok;
    return rep;
}

Report cmd_operator(const std::string& target, const RunConfig& cfg) {
    Report rep{envelope("operator", cfg), true};
    TableCache tc{cfg, {}};
    Json list = Json::array();
    for (SurfaceId s : surface_targets(target)) {
        const int r = blowup_rank(s);
        const QMatrix m = r >= 4 ? assemble(r, *tc.get()) : builtin_operator(s);
        const auto sp = spectrum(m, cfg.tolerance);
        Json j{{"surface", surface_name(s)},
               {"basis", operator_basis(s)},
               {"matrix", matrix_json(m)},
               {"square", matrix_json(m * m)},
               {"characteristic_polynomial", poly_json(sp.characteristic)},
               {"rho", num(sp.rho, cfg.report_digits())},
               {"eigenvalues", spectrum_json(sp, cfg.report_digits())}};
        if (r >= 1 && r <= 3) {
            const auto qt = quantum_table(r);
            j["standard_basis"] = qt.basis;
            j["standard_matrix"] = matrix_json(tilde_operator(r));
            j["base_change"] = matrix_json(qt.base_change);
        }
        list.push_back(j);
    }
    rep.doc["surfaces"] = list;
    return rep;
}

Report cmd_gamma_class(const std::string& target, const std::optional<std::vector<int>>& weights, int degree,
                       const RunConfig& cfg) {
    const int dg = cfg.report_digits();
    Report rep{envelope("gamma-class", cfg), true};
    if (weights) {
        const TruncPoly g = gamma_hypersurface_ambient(*weights, degree);
        rep.doc["weights"] = *weights;
        rep.doc["degree"] = degree;
        rep.doc["untwisted"] = {{"1", num(g.a0, dg)}, {"h", num(g.a1, dg)}, {"h^2", num(g.a2, dg)}};
        rep.doc["truncation"] = "mod h^3";
        rep.doc["twisted_sectors"] = "not computed";
        return rep;
    }
    Json list = Json::array();
    for (SurfaceId s : surface_targets(target)) {
        const auto g = gamma_surface(s);
        const auto ch = chern_data(s);
        Json coeffs = Json::object();
        for (std::size_t i = 0; i < g.basis.size(); ++i) coeffs[g.basis[i]] = num(g.coeffs[i], dg);
        list.push_back({{"surface", surface_name(s)}, {"c1_squared", ch.c1_squared}, {"euler_characteristic", ch.c2_coefficient}, {"gamma", coeffs}});
    }
    rep.doc["surfaces"] = list;
    return rep;
}

Report cmd_report_all(const RunConfig& cfg) {
    Report rep{envelope("report-all", cfg), true};
    TableCache tc{cfg, {}};
    Json rows = Json::array();
    for (SurfaceId s : all_surfaces()) {
        Json row{{"target", surface_name(s)}};
        const auto v = verify_conjecture_o(s, tc.for_surface(s), cfg.tolerance);
        row["property_o"] = verification_ok(v);
        row["rho"] = num(v.certificate.rho, 15);
        bool ok = verification_ok(v);
        try {
            const auto m = mirror_spectrum_match(s, cfg.tolerance, cfg.seed);
            const auto b = bmodel_o_check(builtin_potential(s), cfg.tolerance, cfg.seed);
            row["mirror"] = m.matched && b.holds();
            ok = ok && m.matched && b.holds();
        } catch (const NoMirrorAvailable&) {
            row["mirror"] = "not toric";
        }
        try {
            const auto r = run_limit(ci_model(s), v.certificate.rho, cfg);
            row["gamma_limit"] = r.holds();
            row["final_dispersion"] = num(r.final_dispersion, 6);
            ok = ok && r.holds();
        } catch (const UnsupportedModel&) {
            row["gamma_limit"] = "unsupported";
        }
        row["holds"] = ok;
        rep.ok = rep.ok && ok;
        rows.push_back(row);
    }
    for (const std::vector<int>& w : {std::vector<int>{1, 1, 1, 2}, std::vector<int>{1, 1, 2, 3}}) {
        const auto cf = wps_closed_form(w);
        const auto b = bmodel_o_check(builtin_potential(w), cfg.tolerance, cfg.seed);
        const auto r = run_limit(wps_model(w), cf.c, cfg);
        Json row{{"target", wps_model(w).name}, {"property_o", "n/a"}, {"rho", num(cf.c, 15)}, {"mirror", b.holds()},
                 {"gamma_limit", r.holds()}, {"final_dispersion", num(r.final_dispersion, 6)}};
        row["holds"] = b.holds() && r.holds();
        rep.ok = rep.ok && b.holds() && r.holds();
        rows.push_back(row);
    }
    rep.doc["summary"] = rows;
    rep.doc["holds"] = rep.ok;
    return rep;
}

}  // namespace dpgamma
