// invmet: sweeps, theorem verification and data emission for the invariant
// metric evaluators. Exit codes: 0 pass, 1 check/evaluation failure, 2 usage.

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invmet/sweep.hpp"
#include "invmet/verification.hpp"

namespace {

using namespace invmet;

SweepQuantity parse_quantity(const std::string& s) {
    static const std::map<std::string, SweepQuantity> table{
        {"kobayashi_punctured_disk", SweepQuantity::kobayashi_punctured_disk},
        {"kobayashi_punctured_plane", SweepQuantity::kobayashi_punctured_plane},
        {"bergman_ring_T", SweepQuantity::bergman_ring_T},
        {"bergman_ring_N", SweepQuantity::bergman_ring_N},
        {"bergman_ball", SweepQuantity::bergman_ball},
    };
    const auto it = table.find(s);
    if (it == table.end()) throw std::invalid_argument("unknown quantity '" + s + "'");
    return it->second;
}

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// grid forms: "log:lo:hi:n", "lin:lo:hi:n", "list:v1,v2,..."
std::vector<double> parse_grid(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad grid spec '" + s + "'");
    const std::string kind = s.substr(0, colon);
    const std::string rest = s.substr(colon + 1);
    if (kind == "list") return parse_numbers(rest);
    std::stringstream ss(rest);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw std::invalid_argument("bad grid spec '" + s + "'");
    const double lo = std::stod(a), hi = std::stod(b);
    const int n = std::stoi(c);
    if (n < 1) throw std::invalid_argument("grid needs at least one point");
    std::vector<double> out(n);
    if (kind == "log") {
        if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("log grid needs positive bounds");
        for (int i = 0; i < n; ++i)
            out[i] = std::pow(10.0, std::log10(lo) +
                                        (n == 1 ? 0.0 : (std::log10(hi) - std::log10(lo)) * i / (n - 1.0)));
    } else if (kind == "lin") {
        for (int i = 0; i < n; ++i) out[i] = lo + (n == 1 ? 0.0 : (hi - lo) * i / (n - 1.0));
    } else {
        throw std::invalid_argument("bad grid kind '" + kind + "'");
    }
    return out;
}

// "N", "T", "re,im" (planar xi) or "re,im,re,im" (C^2 vector)
void apply_direction(SweepSpec& spec, const std::string& s) {
    if (s == "N") {
        spec.direction = {complex_t{1.0}, complex_t{0.0}};
        spec.direction_label = "N";
        return;
    }
    if (s == "T") {
        spec.direction = {complex_t{0.0}, complex_t{1.0}};
        spec.direction_label = "T";
        return;
    }
    const auto v = parse_numbers(s);
    if (v.size() == 2)
        spec.direction = {complex_t{v[0], v[1]}, complex_t{0.0}};
    else if (v.size() == 4)
        spec.direction = {complex_t{v[0], v[1]}, complex_t{v[2], v[3]}};
    else
        throw std::invalid_argument("direction must be N, T, re,im or re,im,re,im");
    spec.direction_label = s;
}

struct SweepOptions {
    std::string quantity;
    std::string grid;
    double delta = 0.0;
    double r = 0.5;
    std::string direction;
    double tol = 1e-12;
    int max_index = 0;
    std::string format = "csv";
    std::string out;
};

int run_sweep_command(const SweepOptions& opt, bool to_file) {
    SweepSpec spec;
    spec.quantity = parse_quantity(opt.quantity);
    if (!opt.grid.empty())
        spec.grid = parse_grid(opt.grid);
    else if (opt.delta > 0.0)
        spec.grid = {opt.delta};
    else
        throw std::invalid_argument("provide --grid or --delta");
    spec.r = opt.r;
    spec.tol = opt.tol;
    spec.max_index = opt.max_index;

    const bool planar = spec.quantity == SweepQuantity::kobayashi_punctured_disk ||
                        spec.quantity == SweepQuantity::kobayashi_punctured_plane;
    spec.direction = {complex_t{1.0}, complex_t{0.0}};
    spec.direction_label = planar ? "1" : "N";
    if (!opt.direction.empty()) apply_direction(spec, opt.direction);

    if (opt.format != "csv" && opt.format != "json")
        throw std::invalid_argument("format must be csv or json");
    if (to_file && opt.out.empty()) throw std::invalid_argument("emit requires --out PATH");

    const auto rows = run_sweep(spec);
    const EmitFormat fmt = opt.format == "csv" ? EmitFormat::csv : EmitFormat::json;
    if (!opt.out.empty()) {
        emit_rows(rows, fmt, opt.out);
    } else if (fmt == EmitFormat::csv) {
        write_csv(std::cout, rows);
    } else {
        std::cout << rows_to_json(rows).dump(2) << '\n';
    }

    int failures = 0;
    for (const auto& row : rows)
        if (!row.error.empty()) {
            ++failures;
            std::cerr << "row param1=" << format_double(row.param1) << ": " << row.error << '\n';
        }
    return failures == 0 ? 0 : 1;
}

int run_verify_command(const std::string& check, bool all) {
    using Check = VerificationReport (*)();
    static const std::map<std::string, Check> table{
        {"thm1", &check_theorem1_window},
        {"thm2", &check_tangential_strictness},
        {"thm3", &check_metric_decomposition},
        {"prop_ring_normal", &check_normal_direction},
        {"eq786", &check_sandwich_bounds},
        {"lemma_bdden", &check_derivative_bounds},
    };

    std::vector<VerificationReport> reports;
    if (all) {
        reports = run_all_checks();
        reports.push_back(check_determinism(reports, ""));
    } else {
        const auto it = table.find(check);
        if (it == table.end())
            throw std::invalid_argument(
                "unknown check '" + check +
                "' (expected thm1, thm2, thm3, prop_ring_normal, eq786, lemma_bdden)");
        reports.push_back(it->second());
    }

    bool ok = true;
    for (const auto& rep : reports) {
        std::cout << render_report(rep) << '\n';
        std::cerr << rep.check_id << " runtime: " << rep.runtime_seconds << " s\n";
        ok = ok && rep.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant metrics on classical complex domains"};
    app.require_subcommand(1);

    SweepOptions sweep_opt;
    std::string verify_check;
    bool verify_all = false;

    auto add_sweep_flags = [&](CLI::App* cmd) {
        cmd->add_option("quantity", sweep_opt.quantity,
                        "kobayashi_punctured_disk | kobayashi_punctured_plane | bergman_ring_T | "
                        "bergman_ring_N | bergman_ball")
            ->required();
        cmd->add_option("--grid", sweep_opt.grid, "log:lo:hi:n | lin:lo:hi:n | list:v1,v2,...");
        cmd->add_option("--delta", sweep_opt.delta, "single-point grid value");
        cmd->add_option("--r", sweep_opt.r, "ring inner radius");
        cmd->add_option("--direction", sweep_opt.direction, "N | T | re,im | re,im,re,im");
        cmd->add_option("--tol", sweep_opt.tol, "inversion residual tolerance");
        cmd->add_option("--max-index", sweep_opt.max_index, "modular series cutoff (0: adaptive)");
        cmd->add_option("--format", sweep_opt.format, "csv | json");
        cmd->add_option("--out", sweep_opt.out, "output path");
    };

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a metric over a parameter grid");
    add_sweep_flags(sweep_cmd);
    CLI::App* emit_cmd = app.add_subcommand("emit", "run a sweep and write it to a file");
    add_sweep_flags(emit_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("check", verify_check,
                           "thm1 | thm2 | thm3 | prop_ring_normal | eq786 | lemma_bdden");
    verify_cmd->add_flag("--all", verify_all, "run the whole battery plus determinism");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep_cmd->parsed()) return run_sweep_command(sweep_opt, false);
        if (emit_cmd->parsed()) return run_sweep_command(sweep_opt, true);
        if (verify_cmd->parsed()) {
            if (!verify_all && verify_check.empty())
                throw std::invalid_argument("verify needs a check name or --all");
            return run_verify_command(verify_check, verify_all);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
