#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "rems/bench.hpp"
#include "rems/fixtures.hpp"
#include "rems/oracle.hpp"

namespace {

constexpr int kExitParseError = 2;
constexpr int kExitInvalidConfig = 3;

rems::ParsedInstance load(const std::string& instance, const std::string& format) {
    if (std::filesystem::exists(instance))
        return rems::parse_instance(instance, rems::format_from_string(format));
    return rems::fixture_by_id(instance).instance; // bare fixture ids
}

int cmd_solve(const std::string& instance, const std::string& format, const std::string& algo,
              double time_limit, std::uint64_t eval_budget, int runs, std::uint64_t seed,
              const std::string& out_dir) {
    rems::ExperimentConfig cfg;
    rems::BenchInstance bi;
    bi.instance = load(instance, format);
    bi.id = std::filesystem::exists(instance) ? std::filesystem::path(instance).stem().string()
                                              : instance;
    cfg.instances.push_back(std::move(bi));
    cfg.algorithms = {algo};
    cfg.runs = runs;
    cfg.time_limit_s = time_limit;
    cfg.eval_budget = eval_budget;
    cfg.base_seed = seed;
    cfg.out_dir = out_dir;
    auto rows = rems::run_experiment(cfg);
    for (const auto& r : rows)
        std::cout << r.instance_id << ' ' << r.algorithm << " best=" << r.best_objective
                  << " mean=" << r.mean_objective << " feasible_runs=" << r.feasible_runs << '/'
                  << runs << '\n';
    return 0;
}

int cmd_oracle(const std::string& instance, const std::string& format, std::uint64_t limit) {
    auto model = rems::build_model(load(instance, format));
    rems::OracleOptions opts;
    opts.node_limit = limit;
    auto result = rems::brute_force_oracle(model, opts);
    switch (result.status) {
    case rems::OracleStatus::Optimal:
        std::cout << "optimal " << result.objective << " (" << result.nodes_visited
                  << " nodes)\n";
        for (std::size_t i = 0; i < result.best.per_resource.size(); ++i) {
            std::cout << "  resource " << i + 1 << ":";
            for (int j : result.best.per_resource[i]) std::cout << ' ' << j;
            std::cout << '\n';
        }
        return 0;
    case rems::OracleStatus::Infeasible:
        std::cout << "infeasible (" << result.nodes_visited << " nodes)\n";
        return 0;
    case rems::OracleStatus::TooLarge:
        std::cout << "too large: node limit " << limit << " exceeded\n";
        return 0;
    }
    return 0;
}

int cmd_bench(const std::string& config_path) {
    auto cfg = rems::load_experiment_config(config_path);
    auto rows = rems::run_experiment(cfg);
    for (const auto& r : rows)
        std::cout << r.instance_id << ' ' << r.algorithm << " best=" << r.best_objective
                  << " mean=" << r.mean_objective << " mean_gap=" << r.mean_gap << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resource-task combinatorial optimization toolkit"};
    app.require_subcommand(1);

    std::string instance, format = "json", algo = "sa", out_dir, config_path;
    double time_limit = 0;
    std::uint64_t eval_budget = 0, seed = 1, limit = 50'000'000;
    int runs = 1;

    auto* solve = app.add_subcommand("solve", "run one algorithm on one instance");
    solve->add_option("--instance", instance, "instance path or fixture id")->required();
    solve->add_option("--format", format, "instance format for file paths");
    solve->add_option("--algo", algo, "sa|ts|qvns|avns|rvns|lns|ga");
    solve->add_option("--time-limit", time_limit, "seconds per run");
    solve->add_option("--eval-budget", eval_budget, "evaluations per run (deterministic)");
    solve->add_option("--runs", runs, "seeded runs");
    solve->add_option("--seed", seed, "base seed; run k uses seed+k");
    solve->add_option("--out", out_dir, "output directory for results and traces");

    auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for a small instance");
    oracle->add_option("--instance", instance, "instance path or fixture id")->required();
    oracle->add_option("--format", format, "instance format for file paths");
    oracle->add_option("--limit", limit, "enumeration node guard");

    auto* bench = app.add_subcommand("bench", "run an experiment config");
    bench->add_option("--config", config_path, "JSON experiment config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(instance, format, algo, time_limit, eval_budget, runs, seed, out_dir);
        if (oracle->parsed()) return cmd_oracle(instance, format, limit);
        return cmd_bench(config_path);
    } catch (const rems::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const rems::UnsupportedFormat& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const rems::InvalidInstance& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const rems::InvalidConfig& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
