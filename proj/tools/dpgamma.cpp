#include "dpgamma/reports.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace dpgamma;

namespace {

struct Flags {
    std::optional<std::string> tol, digits, t_grid, seed, gw_table, out, config, terms, weights;
    int degree = 0;
    std::string target;
};

void add_common(CLI::App* sub, Flags& f, bool needs_target) {
    auto* t = sub->add_option("target", f.target, "surface (P2, P1xP1, X1..X8) or all");
    if (needs_target) t->required();
    sub->add_option("--tol", f.tol, "tolerance (default 1e-9)");
    sub->add_option("--digits", f.digits, "precision digits, at most 60 (default 60)");
    sub->add_option("--t-grid", f.t_grid, "comma separated t values (default 10,15,20,25,30)");
    sub->add_option("--seed", f.seed, "multistart seed (default 42)");
    sub->add_option("--gw-table", f.gw_table, "Gromov-Witten table path");
    sub->add_option("--out", f.out, "write the report here instead of stdout");
    sub->add_option("--config", f.config, "key = value config file");
    sub->add_option("--terms", f.terms, "J-series term budget, or auto (default 600)");
}

RunConfig build_config(const Flags& f) {
    RunConfig cfg;
    if (f.config) apply_config_file(cfg, *f.config);
    std::string text;
    auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v) text += std::string(key) + " = " + *v + "\n";
    };
    put("tol", f.tol);
    put("digits", f.digits);
    put("t-grid", f.t_grid);
    put("seed", f.seed);
    put("gw-table", f.gw_table);
    put("out", f.out);
    put("terms", f.terms);
    apply_config_text(cfg, text);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Property O and Gamma conjecture I checks for del Pezzo surfaces"};
    app.require_subcommand(1);
    Flags f;
    auto* verify = app.add_subcommand("verify-o", "certify Property O");
    add_common(verify, f, true);
    auto* mirror = app.add_subcommand("mirror", "Landau-Ginzburg mirror checks");
    add_common(mirror, f, false);
    mirror->add_option("--weights", f.weights, "full weight vector, e.g. 1,1,2,3");
    auto* limit = app.add_subcommand("gamma-limit", "Gamma conjecture I limit");
    add_common(limit, f, false);
    limit->add_option("--weights", f.weights, "full weight vector, e.g. 1,1,1,2");
    auto* exc = app.add_subcommand("exceptional", "exceptional classes and d_r");
    add_common(exc, f, true);
    auto* op = app.add_subcommand("operator", "matrix of c_1 quantum multiplication");
    add_common(op, f, true);
    auto* gc = app.add_subcommand("gamma-class", "Gamma classes");
    add_common(gc, f, false);
    gc->add_option("--weights", f.weights, "full weight vector of the ambient");
    gc->add_option("--degree", f.degree, "hypersurface degree (0: ambient only)");
    auto* all = app.add_subcommand("report-all", "every pipeline, summary table");
    add_common(all, f, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const RunConfig cfg = build_config(f);
        std::optional<std::vector<int>> weights;
        if (f.weights) weights = parse_int_list(*f.weights);
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if ((name == "mirror" || name == "gamma-limit" || name == "gamma-class") && f.target.empty() && !weights)
            throw ParseError(name + " needs a target or --weights");
        Report rep;
        if (name == "verify-o") rep = cmd_verify_o(f.target, cfg);
        else if (name == "mirror") rep = cmd_mirror(f.target, weights, cfg);
        else if (name == "gamma-limit") rep = cmd_gamma_limit(f.target, weights, cfg);
        else if (name == "exceptional") rep = cmd_exceptional(f.target, cfg);
        else if (name == "operator") rep = cmd_operator(f.target, cfg);
        else if (name == "gamma-class") rep = cmd_gamma_class(f.target, weights, f.degree, cfg);
        else rep = cmd_report_all(cfg);

        const std::string text = render(rep.doc);
        if (cfg.output_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.output_path, std::ios::binary);
            if (!out) throw ParseError("cannot write " + cfg.output_path);
            out << text;
        }
        return rep.ok ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "dpgamma: " << e.what() << "\n";
        return e.category() == ErrorCategory::Data ? 2 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dpgamma: " << e.what() << "\n";
        return 2;
    }
}
