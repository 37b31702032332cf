#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hedgehog/config.hpp"
#include "hedgehog/energy.hpp"
#include "hedgehog/numerics.hpp"
#include "hedgehog/outputs.hpp"
#include "hedgehog/qtensor.hpp"
#include "hedgehog/signchange.hpp"
#include "hedgehog/solve.hpp"
#include "hedgehog/verify.hpp"

namespace fs = std::filesystem;
using namespace hedgehog;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--config", args.config_path, "run configuration JSON");
    cmd->add_option("--preset", args.preset_name,
                    "one of physical-a0, physical-a1, pneg-multi, quartic-mp");
    cmd->add_option("--out", args.out_dir, "output directory (HEDGEHOG_OUT overrides)");
    cmd->add_option("--jobs", args.jobs, "worker threads for sweeps");
    cmd->add_option("--seed", args.seed, "seed recorded in outputs")->each([&](const std::string&) {
        args.seed_set = true;
    });
}

RunConfig load_config(const CommonArgs& args)
{
    RunConfig cfg;
    if (!args.config_path.empty())
        cfg = RunConfig::from_file(args.config_path);
    else if (!args.preset_name.empty())
        cfg = preset(args.preset_name);
    else
        throw std::invalid_argument("need --config FILE or --preset NAME");
    if (const char* env = std::getenv("HEDGEHOG_OUT"))
        cfg.out_dir = env;
    else if (!args.out_dir.empty())
        cfg.out_dir = args.out_dir;
    if (args.seed_set) cfg.seed = args.seed;
    return cfg;
}

ProfileSolution run_solver(const RunConfig& cfg, const DiscreteProblem& dp)
{
    NewtonOptions nopts;
    nopts.tol_factor = cfg.tol_factor;
    nopts.max_iter = cfg.max_iter;
    if (cfg.method == "newton") return solve_newton(dp, nopts);
    if (cfg.method == "energy-descent") return solve_energy_descent(dp);
    if (cfg.method == "shoot") {
        const double sp = dp.model.s_plus();
        return solve_shoot(dp.model, cfg.p, cfg.q, {1e-7 * sp, 1e3 * sp});
    }
    throw std::invalid_argument("unknown solver method '" + cfg.method + "'");
}

std::vector<Vec3> qtensor_sample_points(const ProfileSolution& sol)
{
    // deterministic ray samples across the profile span
    std::vector<Vec3> pts;
    const double r1 = sol.grid.nodes.front(), R = sol.grid.R();
    const Vec3 dirs[] = {{1, 0, 0}, {0, 0, 1}, {0.6, 0.8, 0}, {-0.48, 0.6, 0.64}};
    for (int k = 0; k < 6; ++k) {
        const double r = r1 + (R - r1) * (k + 0.5) / 6.0;
        for (const auto& d : dirs) pts.push_back({d[0] * r, d[1] * r, d[2] * r});
    }
    return pts;
}

int cmd_solve(const CommonArgs& args)
{
    const RunConfig cfg = load_config(args);
    fs::create_directories(cfg.out_dir);
    const DiscreteProblem dp = cfg.build_problem();
    const ProfileSolution sol = run_solver(cfg, dp);
    const EnergyReport e = energy(sol);

    const fs::path dir(cfg.out_dir);
    write_solution_csv((dir / "solution.csv").string(), sol, dp, cfg.linear_override);
    write_summary_json((dir / "summary.json").string(), sol, e);
    RunConfig echo = cfg;
    echo.out_dir = "out";  // echoed config records the run, not the target path
    echo.save((dir / "config.json").string());
    if (!cfg.linear_override && sol.is_positive_branch()) {
        RadialQField field{&sol, qtensor_sample_points(sol)};
        write_qtensor_csv((dir / "qtensor_samples.csv").string(), field);
    }
    std::cout << "solved: residual_norm = " << format_shortest(sol.residual_norm)
              << ", iterations = " << sol.iterations;
    if (sol.alpha_origin) std::cout << ", alpha = " << format_shortest(*sol.alpha_origin);
    if (sol.beta) std::cout << ", beta = " << format_shortest(*sol.beta);
    std::cout << "\n";
    return 0;
}

ProfileSolution solution_from_csv(const std::string& path, const RunConfig& cfg)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open solution file '" + path + "'");
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> r, u;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        r.push_back(std::stod(cell));
        std::getline(ss, cell, ',');
        u.push_back(std::stod(cell));
    }
    ProfileSolution sol;
    sol.grid.nodes = std::move(r);
    sol.grid.domain_kind = cfg.domain_kind;
    sol.grid.grading = cfg.grading;
    sol.values = std::move(u);
    sol.p = cfg.p;
    sol.q = cfg.q;
    sol.model = cfg.model.build();
    sol.method = "loaded";
    try {
        sol.alpha_origin = extract_alpha(sol);
        if (cfg.domain_kind == DomainKind::TruncatedInfinite) sol.beta = extract_beta(sol);
    } catch (const std::exception&) {
    }
    return sol;
}

int cmd_verify(const CommonArgs& args, const std::string& solution_file)
{
    const RunConfig cfg = load_config(args);
    fs::create_directories(cfg.out_dir);
    ProfileSolution sol;
    if (!solution_file.empty()) {
        sol = solution_from_csv(solution_file, cfg);
    } else {
        sol = run_solver(cfg, cfg.build_problem());
    }
    const VerificationReport rep = run_all(sol);
    const fs::path dir(cfg.out_dir);
    write_report_files((dir / "report.json").string(), (dir / "report.txt").string(), rep);
    std::cout << report_to_table(rep);
    return rep.overall ? 0 : 1;
}

int cmd_scan(const CommonArgs& args)
{
    const RunConfig cfg = load_config(args);
    if (!cfg.scan) throw std::invalid_argument("config lacks a scan section");
    fs::create_directories(cfg.out_dir);
    const DiscreteProblem dp = cfg.build_problem();
    const ScanParameter param = scan_parameter_from_string(cfg.scan->parameter);
    const auto sols = continuation_scan(dp, param, cfg.scan->values);

    std::vector<ScanRow> rows;
    const bool pq26 = cfg.p == 2.0 && cfg.q == 6.0;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        ScanRow row;
        row.value = cfg.scan->values[i];
        row.alpha = sols[i].alpha_origin;
        row.beta = sols[i].beta;
        row.energy = energy(sols[i]).E;
        if (pq26) row.lambda_min = min_eigenvalue(sols[i]).lambda_min;
        rows.push_back(row);
    }
    write_scan_csv((fs::path(cfg.out_dir) / "scan.csv").string(), cfg.scan->parameter, rows);
    std::cout << "scan: " << rows.size() << " points written\n";
    return 0;
}

int cmd_signchange(const CommonArgs& args)
{
    RunConfig cfg = load_config(args);
    if (!cfg.signchange) throw std::invalid_argument("config lacks a signchange section");
    fs::create_directories(cfg.out_dir);
    const SignChangeSpec& sc = *cfg.signchange;

    SolutionSet set;
    bool met = false;
    if (sc.regime == "quartic") {
        const DiscreteProblem dp = cfg.build_problem();
        set = deflated_newton_search(dp, {}, sc.attempts);
        int with_signs = 0;
        for (int c : set.sign_change_counts) with_signs += (c >= 1);
        met = with_signs >= 1;
    } else if (sc.regime == "pneg") {
        MultiShootOptions opts;
        opts.samples = sc.samples;
        opts.jobs = args.jobs;
        set = multi_shoot_scan(cfg.model.build(), cfg.p, cfg.q, cfg.R, {sc.alpha_lo, sc.alpha_hi},
                               opts);
        met = set.solutions.size() >= 2;
    } else {
        throw std::invalid_argument("unknown signchange regime '" + sc.regime + "'");
    }

    std::vector<double> energies;
    for (const auto& s : set.solutions) energies.push_back(energy(s).E);
    const fs::path dir(cfg.out_dir);
    write_branch_csv((dir / "branches.csv").string(), set);
    write_branch_summary_csv((dir / "branches_summary.csv").string(), set, energies);
    std::cout << "signchange: " << set.solutions.size() << " branch(es)\n";
    return met ? 0 : 1;
}

int cmd_plot(const CommonArgs& args, const std::vector<std::string>& files)
{
    const RunConfig cfg = load_config(args);
    fs::create_directories(cfg.out_dir);

    std::vector<PlotCurve> upper, lower, all;
    int branch = 0;
    for (const auto& f : files) {
        ProfileSolution sol = solution_from_csv(f, cfg);
        PlotCurve cu{"u(r) [" + std::to_string(branch) + "]", sol.grid.nodes, sol.values};
        upper.push_back(cu);
        all.push_back(cu);
        if (sol.is_positive_branch()) {
            const auto w = compute_w(sol);
            PlotCurve cw{"w(r) [" + std::to_string(branch) + "]", sol.grid.nodes, w};
            lower.push_back(cw);
            all.push_back(cw);
            if (sol.alpha_origin && sol.beta && branch == 0) {
                const double sp = sol.model.s_plus();
                const double a = *sol.alpha_origin, b = *sol.beta;
                PlotCurve lb{"lower bound", sol.grid.nodes, {}};
                PlotCurve ub{"upper bound", sol.grid.nodes, {}};
                for (double r : sol.grid.nodes) {
                    lb.y.push_back(sp * a * r * r / (a * r * r + sp));
                    ub.y.push_back(sp * sp * r * r / (sp * r * r + b));
                }
                upper.push_back(lb);
                upper.push_back(ub);
                all.push_back(lb);
                all.push_back(ub);
                if (sol.model.physical_params() && sol.model.physical_params()->b2 > 0.0) {
                    const auto& pp = *sol.model.physical_params();
                    PlotCurve sub{"explicit sub-solution", sol.grid.nodes, {}};
                    const double k1 = 36.0 * pp.c2 / (pp.b2 * pp.b2);
                    const double k2 = 20736.0 * pp.c2 * pp.c2 / std::pow(pp.b2, 4.0);
                    for (double r : sol.grid.nodes) {
                        const double r2 = r * r;
                        sub.y.push_back(pp.b2 / (2.0 * pp.c2) * r2 * r2 * r2 /
                                        ((r2 + k1) * (r2 * r2 + k2)));
                    }
                    upper.push_back(sub);
                    all.push_back(sub);
                }
            }
        }
        ++branch;
    }
    const fs::path dir(cfg.out_dir);
    write_plot_svg((dir / "profile.svg").string(), upper, lower);
    write_plot_data((dir / "plot_data.txt").string(), all);
    std::cout << "plot: " << files.size() << " file(s) rendered\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"melting-hedgehog radial profile solver and verifier"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string solution_file;
    std::vector<std::string> plot_files;

    auto* solve = app.add_subcommand("solve", "solve the profile and export CSV/JSON");
    add_common(solve, args);
    auto* verify = app.add_subcommand("verify", "certify a solution against the inequality suite");
    add_common(verify, args);
    verify->add_option("--solution", solution_file, "solution.csv from a previous solve");
    auto* scan = app.add_subcommand("scan", "parameter continuation sweep");
    add_common(scan, args);
    auto* signchange = app.add_subcommand("signchange", "find sign-changing branches");
    add_common(signchange, args);
    auto* plot = app.add_subcommand("plot", "render SVG + text plot data from solution files");
    add_common(plot, args);
    plot->add_option("files", plot_files, "solution CSV files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(args);
        if (verify->parsed()) return cmd_verify(args, solution_file);
        if (scan->parsed()) return cmd_scan(args);
        if (signchange->parsed()) return cmd_signchange(args);
        if (plot->parsed()) return cmd_plot(args, plot_files);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
