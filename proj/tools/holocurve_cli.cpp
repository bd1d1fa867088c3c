// Batch front end: scenario verification runs, summary tables, and
// curvature grids. Exit codes: 0 all checks pass, 1 assertion failure,
// 2 input error.
#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "holocurve/scenario.hpp"

namespace {

struct CommonArgs {
    std::string scenario_path;
    double tolerance = -1.0;
    std::vector<int> max_order;
    bool fd_check = false;
    std::string task;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "scenario file (JSON)")->required();
    cmd->add_option("--tolerance", args.tolerance,
                    "override every check tolerance with this value");
    cmd->add_option("--max-order", args.max_order, "holomorphic/antiholomorphic order caps p q")
        ->expected(2);
    cmd->add_flag("--fd-check", args.fd_check,
                  "cross-validate analytic derivatives against the finite-difference oracle");
    cmd->add_option("--task", args.task, "run only this task from the scenario's list");
}

holocurve::RunOptions to_options(const CommonArgs& args) {
    holocurve::RunOptions opts;
    if (args.tolerance > 0.0) opts.tolerance = args.tolerance;
    if (args.max_order.size() == 2) opts.max_order = {args.max_order[0], args.max_order[1]};
    opts.fd_check = args.fd_check;
    if (!args.task.empty()) opts.task_filter = args.task;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature and equivalence checks for truncated holomorphic-curve models"};
    app.require_subcommand(1);

    CommonArgs run_args, verify_args;
    CLI::App* run = app.add_subcommand("run", "run scenario tasks, emit a machine-readable report");
    add_common(run, run_args);
    run->add_option("--format", run_args.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* verify = app.add_subcommand("verify", "run scenario tasks, print a summary table");
    add_common(verify, verify_args);

    std::string grid_scenario, grid_curve, grid_format = "csv";
    double grid_radius = 0.5;
    int grid_nx = 5, grid_ny = 5;
    bool grid_trace = false;
    CLI::App* grid = app.add_subcommand("grid", "emit a curvature grid for one curve");
    grid->add_option("--scenario", grid_scenario, "scenario file (JSON)")->required();
    grid->add_option("--curve", grid_curve, "curve or kernel name")->required();
    grid->add_option("--radius", grid_radius, "half-width of the square grid");
    grid->add_option("--nx", grid_nx, "grid points along Re");
    grid->add_option("--ny", grid_ny, "grid points along Im");
    grid->add_flag("--trace", grid_trace, "emit trace of the curvature (required for rank > 1)");
    grid->add_option("--format", grid_format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            holocurve::Scenario sc = holocurve::load_scenario(run_args.scenario_path);
            holocurve::Report rep = holocurve::run_scenario(sc, to_options(run_args));
            std::cout << (run_args.format == "csv" ? rep.to_csv() : rep.to_json());
            return rep.failed() ? 1 : 0;
        }
        if (verify->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            holocurve::Scenario sc = holocurve::load_scenario(verify_args.scenario_path);
            holocurve::Report rep = holocurve::run_scenario(sc, to_options(verify_args));
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            std::cout << rep.to_table();
            std::cout << "wall time: " << ms << " ms\n";
            return rep.failed() ? 1 : 0;
        }
        holocurve::Scenario sc = holocurve::load_scenario(grid_scenario);
        holocurve::GridOptions opts;
        opts.curve = grid_curve;
        opts.radius = grid_radius;
        opts.nx = grid_nx;
        opts.ny = grid_ny;
        opts.trace = grid_trace;
        auto rows = holocurve::curvature_grid(sc, opts);
        std::cout << (grid_format == "json" ? holocurve::grid_to_json(rows)
                                            : holocurve::grid_to_csv(rows));
        return 0;
    } catch (const holocurve::ScenarioError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
