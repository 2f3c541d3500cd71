// Command-line front end: `simulate` runs one (strategy, T) cell, `sweep`
// runs a horizon grid and fits the regret exponent, `check-geometry` runs
// the geometry/partition/separation property suites.
//
// Exit codes: 0 success, 1 configuration error, 2 property-suite failure.

#include <cstdio>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tandem/geometry.hpp"
#include "tandem/harness.hpp"
#include "tandem/property_checks.hpp"

namespace {

struct CommonOptions {
    std::string model = "auto";
    std::string strategy = "partition";
    std::string instance = "random";
    std::vector<long long> horizons{65536};
    long long episodes = 100;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string out;
    std::string svg;
    tandem::StrategyParams params;
    bool theta_grid = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool multi_horizon) {
    cmd->add_option("--model", opt.model, "bandit | full-info (default: by strategy)");
    cmd->add_option("--strategy", opt.strategy,
                    "partition | partition-dynamic | bandit-partition | collision | "
                    "explore-exploit");
    if (multi_horizon)
        cmd->add_option("--T", opt.horizons, "horizon grid (repeat or comma separated)")
            ->delimiter(',');
    else
        cmd->add_option("--T", opt.horizons[0], "horizon");
    cmd->add_option("--episodes", opt.episodes, "episodes per cell");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--instance", opt.instance, "random | fixed:p1,p2,p3 | hard:eps");
    cmd->add_option("--w-scale", opt.params.w_scale, "padding width multiplier");
    cmd->add_flag("--theta-grid", opt.theta_grid,
                  "snap the shared angle to multiples of 1/T");
    cmd->add_option("--c-init", opt.params.c_init, "collision: init length scale");
    cmd->add_option("--c-fix", opt.params.c_fix, "collision: fixation gap scale");
    cmd->add_option("--c-gap", opt.params.c_gap, "collision: removal/commit gap scale");
    cmd->add_option("--c-window", opt.params.c_window, "collision: all-ones window scale");
    cmd->add_option("--a", opt.params.a, "explore-exploit threshold exponent");
    cmd->add_option("--b", opt.params.b, "explore-exploit length exponent");
    cmd->add_option("--jobs", opt.jobs, "parallel episode workers");
    cmd->add_option("--out", opt.out, "CSV output path");
    cmd->add_option("--svg", opt.svg, "SVG summary output path");
}

tandem::SweepConfig build_config(const CommonOptions& opt) {
    tandem::SweepConfig cfg;
    const auto kind = tandem::parse_strategy(opt.strategy);
    if (!kind) throw std::invalid_argument("unknown strategy '" + opt.strategy + "'");
    cfg.strategy = *kind;
    if (opt.model == "auto")
        cfg.model = tandem::default_model(*kind);
    else if (opt.model == "bandit")
        cfg.model = tandem::FeedbackModel::SharedBandit;
    else if (opt.model == "full-info")
        cfg.model = tandem::FeedbackModel::IndependentFullInfo;
    else
        throw std::invalid_argument("unknown model '" + opt.model + "'");
    cfg.horizons = opt.horizons;
    cfg.episodes = opt.episodes;
    cfg.params = opt.params;
    cfg.params.theta_mode =
        opt.theta_grid ? tandem::ThetaMode::Grid : tandem::ThetaMode::Continuous;
    cfg.instance = tandem::InstanceSpec::parse(opt.instance);
    cfg.master_seed = opt.seed;
    cfg.parallelism = opt.jobs;
    cfg.validate();
    return cfg;
}

void print_cells(const tandem::SweepConfig& cfg, const tandem::SweepResult& result) {
    std::printf("strategy=%s model=%s instance=%s seed=%llu episodes=%lld\n",
                tandem::strategy_name(cfg.strategy).data(),
                tandem::model_name(cfg.model).data(), cfg.instance.to_string().c_str(),
                static_cast<unsigned long long>(cfg.master_seed),
                static_cast<long long>(cfg.episodes));
    std::printf("%10s %16s %16s %14s %12s\n", "T", "mean_regret", "std_regret",
                "collisions/ep", "omega_rate");
    for (const tandem::CellSummary& cell : result.cells)
        std::printf("%10lld %16.4f %16.4f %14.4f %12.4f\n", cell.horizon,
                    cell.mean_regret, cell.stddev_regret, cell.collision_rate,
                    cell.omega_rate);
}

int run_simulate(const CommonOptions& opt) {
    tandem::SweepConfig cfg = build_config(opt);
    if (cfg.horizons.size() != 1)
        throw std::invalid_argument("simulate expects a single --T");
    const tandem::SweepResult result = tandem::monte_carlo(cfg);
    print_cells(cfg, result);
    if (!opt.out.empty()) tandem::emit_csv(result.rows, opt.out);
    if (!opt.svg.empty()) tandem::emit_svg_summary(result.rows, opt.svg);
    return 0;
}

int run_sweep(const CommonOptions& opt) {
    tandem::SweepConfig cfg = build_config(opt);
    const tandem::SweepResult result = tandem::monte_carlo(cfg);
    print_cells(cfg, result);
    if (cfg.horizons.size() >= 3) {
        std::vector<std::pair<long long, double>> points;
        for (const tandem::CellSummary& cell : result.cells)
            if (cell.mean_regret > 0.0) points.push_back({cell.horizon, cell.mean_regret});
        if (points.size() >= 3)
            std::printf("fitted regret exponent: %.4f\n", tandem::fit_exponent(points));
        else
            std::printf("fitted regret exponent: n/a (non-positive cells)\n");
    }
    if (!opt.out.empty()) tandem::emit_csv(result.rows, opt.out);
    if (!opt.svg.empty()) tandem::emit_svg_summary(result.rows, opt.svg);
    return 0;
}

int run_check_geometry(std::uint64_t seed) {
    const std::vector<tandem::PropertyReport> reports = tandem::run_property_suites(seed);
    bool all_ok = true;
    for (const tandem::PropertyReport& r : reports) {
        std::printf("%-44s %8lld checked %8lld failed   %s\n", r.name.c_str(), r.checked,
                    r.failed, r.failed == 0 ? "PASS" : "FAIL");
        all_ok = all_ok && r.failed == 0;
    }
    std::printf("%s\n", all_ok ? "all property suites passed" : "property suite FAILURES");
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-player three-armed bandit coordination simulator"};
    app.require_subcommand(1);

    CommonOptions sim_opt;
    CLI::App* simulate = app.add_subcommand("simulate", "run one (strategy, T) cell");
    add_common_flags(simulate, sim_opt, false);

    CommonOptions sweep_opt;
    sweep_opt.horizons = {4096, 16384, 65536};
    CLI::App* sweep = app.add_subcommand("sweep", "run a horizon grid and fit exponent");
    add_common_flags(sweep, sweep_opt, true);

    std::uint64_t check_seed = 1;
    CLI::App* check = app.add_subcommand("check-geometry", "run property suites");
    check->add_option("--seed", check_seed, "seed for the sampled checks");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return run_simulate(sim_opt);
        if (sweep->parsed()) return run_sweep(sweep_opt);
        if (check->parsed()) return run_check_geometry(check_seed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
