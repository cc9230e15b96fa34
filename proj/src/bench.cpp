#include "rems/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>

#include <json.hpp>

#include "rems/fixtures.hpp"

namespace rems {

namespace {

// Fixed-width float formatting keeps result files byte-stable.
std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> names = {"sa", "ts", "qvns", "avns", "rvns", "lns", "ga"};
    return names;
}

SolverConfig solver_config_for(const std::string& algo) {
    SolverConfig cfg;
    if (algo == "sa") cfg.variant = Variant::SA;
    else if (algo == "ts") cfg.variant = Variant::TS;
    else if (algo == "lns") cfg.variant = Variant::LNS;
    else if (algo == "ga") cfg.variant = Variant::GA;
    else if (algo == "qvns") {
        cfg.variant = Variant::VNS;
        cfg.vns_mode = SelectMode::QLearning;
    } else if (algo == "avns") {
        cfg.variant = Variant::VNS;
        cfg.vns_mode = SelectMode::Adaptive;
    } else if (algo == "rvns") {
        cfg.variant = Variant::VNS;
        cfg.vns_mode = SelectMode::Random;
    } else {
        throw InvalidConfig("unknown algorithm: " + algo);
    }
    return cfg;
}

double compute_gap(double objective, double lower_bound, Sense sense) {
    double diff = sense == Sense::Min ? objective - lower_bound : lower_bound - objective;
    return diff / std::max(std::abs(lower_bound), 1.0);
}

void ExperimentConfig::validate() const {
    if (instances.empty()) throw InvalidConfig("no instances");
    if (algorithms.empty()) throw InvalidConfig("no algorithms");
    for (const auto& a : algorithms) solver_config_for(a);
    if (runs < 1) throw InvalidConfig("runs must be >= 1");
    if (time_limit_s <= 0 && eval_budget == 0)
        throw InvalidConfig("a time limit or evaluation budget is required");
    if (threads < 0) throw InvalidConfig("threads must be >= 0");
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, e.what());
    }
    try {
        ExperimentConfig cfg;
        for (const auto& j : doc.at("instances")) {
            BenchInstance bi;
            if (j.contains("path")) {
                bi.id = j.value("id", std::filesystem::path(j.at("path").get<std::string>())
                                          .stem()
                                          .string());
                bi.instance = parse_instance(j.at("path"),
                                             format_from_string(j.at("format")));
                if (j.contains("lower_bound")) {
                    bi.lower_bound = j.at("lower_bound");
                    bi.has_lower_bound = true;
                }
            } else {
                auto f = fixture_by_id(j.at("id"));
                bi.id = f.id;
                bi.instance = std::move(f.instance);
                bi.lower_bound = f.lower_bound;
                bi.has_lower_bound = true;
            }
            cfg.instances.push_back(std::move(bi));
        }
        cfg.algorithms = doc.at("algorithms").get<std::vector<std::string>>();
        cfg.runs = doc.value("runs", 5);
        cfg.time_limit_s = doc.value("time_limit_s", 0.0);
        cfg.eval_budget = doc.value("eval_budget", std::uint64_t{0});
        cfg.base_seed = doc.value("seed", std::uint64_t{1});
        cfg.out_dir = doc.value("out_dir", std::string{});
        cfg.threads = doc.value("threads", 1);
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("bad experiment config: ") + e.what());
    }
}

namespace {

struct CellResult {
    RunReport report;
    Sense sense = Sense::Min;
    std::string error;
};

double report_time_ms(const RunReport& r, bool virtual_time) {
    return virtual_time ? static_cast<double>(r.evaluations) : r.wall_ms;
}

void write_trace(const std::filesystem::path& path, const RunReport& r, bool virtual_time) {
    std::ofstream out(path);
    out << "elapsed_ms,evaluations,best_objective,violation_sum\n";
    for (const auto& p : r.trace)
        out << fmt(virtual_time ? static_cast<double>(p.evaluations) : p.elapsed_ms) << ','
            << p.evaluations << ',' << fmt(p.best_objective) << ','
            << fmt(p.best_violation_sum) << '\n';
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    config.validate();
    bool virtual_time = config.time_limit_s <= 0 && config.eval_budget > 0;

    struct Cell {
        std::size_t instance, algo;
        int run;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < config.instances.size(); ++i)
        for (std::size_t a = 0; a < config.algorithms.size(); ++a)
            for (int r = 0; r < config.runs; ++r) cells.push_back({i, a, r});

    std::vector<ProblemModel> models;
    models.reserve(config.instances.size());
    for (const auto& bi : config.instances) models.push_back(build_model(bi.instance));

    auto solve_cell = [&](const Cell& c) {
        CellResult out;
        out.sense = models[c.instance].objective.sense;
        try {
            SolverConfig scfg = solver_config_for(config.algorithms[c.algo]);
            scfg.time_limit_s = config.time_limit_s;
            scfg.eval_budget = config.eval_budget;
            scfg.seed = config.base_seed + static_cast<std::uint64_t>(c.run);
            out.report = run(models[c.instance], scfg);
        } catch (const std::exception& e) {
            out.error = e.what();
        }
        return out;
    };

    std::vector<CellResult> results(cells.size());
    unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                           : static_cast<unsigned>(config.threads);
    if (workers <= 1) {
        for (std::size_t k = 0; k < cells.size(); ++k) results[k] = solve_cell(cells[k]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t k = next.fetch_add(1);
                if (k >= cells.size()) return;
                results[k] = solve_cell(cells[k]);
            }
        };
        std::vector<std::future<void>> futs;
        for (unsigned w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    std::filesystem::path out_dir;
    if (!config.out_dir.empty()) {
        out_dir = config.out_dir;
        std::filesystem::create_directories(out_dir / "traces");
    }

    std::vector<ResultRow> rows;
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < config.instances.size(); ++i) {
        for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
            ResultRow row;
            row.instance_id = config.instances[i].id;
            row.algorithm = config.algorithms[a];
            Sense sense = models[i].objective.sense;
            double best = nan, sum_obj = 0, sum_time = 0;
            int counted = 0;
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (cells[k].instance != i || cells[k].algo != a) continue;
                const auto& cr = results[k];
                if (!cr.error.empty()) continue;
                const auto& rep = cr.report;
                row.seeds.push_back(rep.seed);
                if (rep.best.feasible()) ++row.feasible_runs;
                double obj = rep.best.objective_value;
                if (std::isnan(best) ||
                    (sense == Sense::Min ? obj < best : obj > best))
                    best = obj;
                sum_obj += obj;
                sum_time += report_time_ms(rep, virtual_time);
                ++counted;
                if (!out_dir.empty())
                    write_trace(out_dir / "traces" /
                                    (row.instance_id + "_" + row.algorithm + "_run" +
                                     std::to_string(cells[k].run) + ".csv"),
                                rep, virtual_time);
            }
            row.best_objective = best;
            row.mean_objective = counted ? sum_obj / counted : nan;
            row.mean_time_ms = counted ? sum_time / counted : nan;
            if (config.instances[i].has_lower_bound && counted) {
                row.best_gap = compute_gap(row.best_objective, config.instances[i].lower_bound, sense);
                row.mean_gap = compute_gap(row.mean_objective, config.instances[i].lower_bound, sense);
            } else {
                row.best_gap = row.mean_gap = nan;
            }
            rows.push_back(std::move(row));
        }
    }

    if (!out_dir.empty()) {
        std::ofstream csv(out_dir / "results.csv");
        csv << "instance,algorithm,best_objective,mean_objective,best_gap,mean_gap,"
               "mean_time_ms,feasible_runs,seeds\n";
        for (const auto& r : rows) {
            csv << r.instance_id << ',' << r.algorithm << ',' << fmt(r.best_objective) << ','
                << fmt(r.mean_objective) << ',' << fmt(r.best_gap) << ',' << fmt(r.mean_gap)
                << ',' << fmt(r.mean_time_ms) << ',' << r.feasible_runs << ',';
            for (std::size_t s = 0; s < r.seeds.size(); ++s) csv << (s ? ";" : "") << r.seeds[s];
            csv << '\n';
        }

        nlohmann::json jrows = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json j;
            j["instance"] = r.instance_id;
            j["algorithm"] = r.algorithm;
            j["best_objective"] = fmt(r.best_objective);
            j["mean_objective"] = fmt(r.mean_objective);
            j["best_gap"] = fmt(r.best_gap);
            j["mean_gap"] = fmt(r.mean_gap);
            j["mean_time_ms"] = fmt(r.mean_time_ms);
            j["feasible_runs"] = r.feasible_runs;
            j["seeds"] = r.seeds;
            jrows.push_back(std::move(j));
        }
        std::ofstream js(out_dir / "results.json");
        js << jrows.dump(2) << '\n';
    }
    return rows;
}

} // namespace rems
