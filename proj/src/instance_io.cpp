#include "rems/instance_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rems {

namespace {

// Line-tracking token reader over whitespace-separated numeric text formats.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    int line() const { return line_; }

    bool next_token(std::string& tok) {
        while (true) {
            if (pos_ >= current_.size()) {
                if (!std::getline(in_, current_)) return false;
                ++line_;
                pos_ = 0;
                continue;
            }
            while (pos_ < current_.size() && std::isspace(static_cast<unsigned char>(current_[pos_])))
                ++pos_;
            if (pos_ >= current_.size()) continue;
            std::size_t start = pos_;
            while (pos_ < current_.size() && !std::isspace(static_cast<unsigned char>(current_[pos_])))
                ++pos_;
            tok = current_.substr(start, pos_ - start);
            return true;
        }
    }

    double number(const char* what) {
        std::string tok;
        if (!next_token(tok)) throw ParseError(line_ + 1, std::string("unexpected end of file, expected ") + what);
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError(line_, "expected " + std::string(what) + ", got '" + tok + "'");
        }
    }

    int integer(const char* what) {
        double v = number(what);
        if (v != std::floor(v)) throw ParseError(line_, std::string("expected integer ") + what);
        return static_cast<int>(v);
    }

    // Remaining integers on the current line (for per-line list formats).
    std::vector<int> rest_of_line_ints(const char* what) {
        std::vector<int> out;
        while (pos_ < current_.size()) {
            while (pos_ < current_.size() && std::isspace(static_cast<unsigned char>(current_[pos_])))
                ++pos_;
            if (pos_ >= current_.size()) break;
            std::size_t start = pos_;
            while (pos_ < current_.size() && !std::isspace(static_cast<unsigned char>(current_[pos_])))
                ++pos_;
            std::string tok = current_.substr(start, pos_ - start);
            try {
                out.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError(line_, "expected " + std::string(what) + ", got '" + tok + "'");
            }
        }
        return out;
    }

private:
    std::istream& in_;
    std::string current_;
    std::size_t pos_ = 0;
    int line_ = 0;
};

} // namespace

InstanceFormat format_from_string(const std::string& name) {
    if (name == "orlib-gap") return InstanceFormat::OrLibraryGap;
    if (name == "bpp-conflict") return InstanceFormat::BppConflict;
    if (name == "dimacs-col") return InstanceFormat::DimacsCol;
    if (name == "taillard-jssp") return InstanceFormat::TaillardJssp;
    if (name == "solomon-vrptw") return InstanceFormat::SolomonVrptw;
    if (name == "json") return InstanceFormat::NativeJson;
    throw UnsupportedFormat("unknown instance format: " + name);
}

const char* format_name(InstanceFormat f) {
    switch (f) {
    case InstanceFormat::OrLibraryGap: return "orlib-gap";
    case InstanceFormat::BppConflict: return "bpp-conflict";
    case InstanceFormat::DimacsCol: return "dimacs-col";
    case InstanceFormat::TaillardJssp: return "taillard-jssp";
    case InstanceFormat::SolomonVrptw: return "solomon-vrptw";
    case InstanceFormat::NativeJson: return "json";
    }
    return "?";
}

GapInstance parse_gap(std::istream& in) {
    TokenReader r(in);
    int m = r.integer("agent count");
    int n = r.integer("job count");
    if (m < 1 || n < 1) throw ParseError(r.line(), "agent and job counts must be positive");
    GapInstance inst;
    inst.cost.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
    inst.demand.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
    inst.capacities.resize(static_cast<std::size_t>(m));
    for (auto& row : inst.cost)
        for (auto& v : row) v = r.number("cost");
    for (auto& row : inst.demand)
        for (auto& v : row) v = r.number("demand");
    for (auto& v : inst.capacities) v = r.number("capacity");
    return inst;
}

BppcInstance parse_bppc(std::istream& in) {
    TokenReader r(in);
    int n = r.integer("item count");
    double cap = r.number("bin capacity");
    if (n < 1 || cap <= 0) throw ParseError(r.line(), "item count and capacity must be positive");
    BppcInstance inst;
    inst.bin_capacity = cap;
    inst.sizes.resize(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        inst.sizes[static_cast<std::size_t>(j - 1)] = r.number("item size");
        for (int other : r.rest_of_line_ints("conflict id")) {
            if (other < 1 || other > n || other == j)
                throw ParseError(r.line(), "conflict id out of range");
            if (other > j) inst.conflicts.emplace_back(j, other); // each pair listed twice
        }
    }
    return inst;
}

GcInstance parse_gc(std::istream& in) {
    GcInstance inst;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int edge_count = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            if (!(ls >> kind >> inst.node_count >> edge_count) || kind != "edge")
                throw ParseError(lineno, "malformed problem line, expected 'p edge n m'");
            if (inst.node_count < 1) throw ParseError(lineno, "node count must be positive");
            have_header = true;
        } else if (tag == "e") {
            if (!have_header) throw ParseError(lineno, "edge before problem line");
            int u = 0, v = 0;
            if (!(ls >> u >> v)) throw ParseError(lineno, "malformed edge line");
            if (u < 1 || u > inst.node_count || v < 1 || v > inst.node_count || u == v)
                throw ParseError(lineno, "edge endpoint out of range");
            inst.edges.emplace_back(u, v);
        } else {
            throw ParseError(lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) throw ParseError(lineno + 1, "missing 'p edge' line");
    if (static_cast<int>(inst.edges.size()) != edge_count)
        throw ParseError(lineno + 1, "edge count mismatch: header says " +
                                         std::to_string(edge_count) + ", found " +
                                         std::to_string(inst.edges.size()));
    inst.color_count = inst.node_count;
    return inst;
}

JsspInstance parse_jssp(std::istream& in) {
    TokenReader r(in);
    int jobs = r.integer("job count");
    int machines = r.integer("machine count");
    if (jobs < 1 || machines < 1) throw ParseError(r.line(), "job and machine counts must be positive");
    JsspInstance inst;
    inst.machine_count = machines;
    std::vector<std::vector<double>> dur(static_cast<std::size_t>(jobs),
                                         std::vector<double>(static_cast<std::size_t>(machines)));
    for (auto& row : dur)
        for (auto& v : row) {
            v = r.number("duration");
            if (v < 0) throw ParseError(r.line(), "negative duration");
        }
    inst.jobs.resize(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) {
        for (int o = 0; o < machines; ++o) {
            int mach = r.integer("machine index");
            if (mach < 1 || mach > machines) throw ParseError(r.line(), "machine index out of range");
            inst.jobs[static_cast<std::size_t>(j)].emplace_back(
                mach, dur[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)]);
        }
    }
    return inst;
}

VrptwInstance parse_vrptw(std::istream& in) {
    std::string line;
    int lineno = 0;
    int vehicles = -1;
    double capacity = -1;
    struct Row {
        double x, y, demand, ready, due, service;
    };
    std::vector<Row> rows;
    bool in_customers = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "VEHICLE" || first == "CUSTOMER" || first == "NUMBER" || first == "CUST")
            continue;
        // Numeric rows: "count capacity" inside the vehicle block, otherwise a
        // customer row "id x y demand ready due service".
        std::istringstream nums(line);
        std::vector<double> vals;
        double v;
        while (nums >> v) vals.push_back(v);
        if (vals.empty()) continue; // title line
        if (vals.size() == 2 && vehicles < 0 && !in_customers) {
            vehicles = static_cast<int>(vals[0]);
            capacity = vals[1];
        } else if (vals.size() == 7) {
            in_customers = true;
            int id = static_cast<int>(vals[0]);
            if (id != static_cast<int>(rows.size()))
                throw ParseError(lineno, "customer ids must be consecutive from 0");
            rows.push_back({vals[1], vals[2], vals[3], vals[4], vals[5], vals[6]});
        } else {
            throw ParseError(lineno, "unrecognized row with " + std::to_string(vals.size()) +
                                         " numbers");
        }
    }
    if (vehicles < 1 || capacity <= 0) throw ParseError(lineno + 1, "missing vehicle block");
    if (rows.size() < 2) throw ParseError(lineno + 1, "need a depot row and at least one customer");

    VrptwInstance inst;
    inst.vehicle_count = vehicles;
    inst.vehicle_capacity = capacity;
    std::size_t cells = rows.size();
    inst.travel.assign(cells, std::vector<double>(cells, 0.0));
    for (std::size_t a = 0; a < cells; ++a)
        for (std::size_t b = 0; b < cells; ++b)
            inst.travel[a][b] = std::hypot(rows[a].x - rows[b].x, rows[a].y - rows[b].y);
    inst.demand.resize(cells);
    inst.service.resize(cells);
    inst.window_open.resize(cells);
    inst.window_close.resize(cells);
    for (std::size_t a = 0; a < cells; ++a) {
        inst.demand[a] = rows[a].demand;
        inst.service[a] = rows[a].service;
        inst.window_open[a] = rows[a].ready;
        inst.window_close[a] = rows[a].due;
    }
    return inst;
}

namespace {

using nlohmann::json;

json to_json(const ParsedInstance& inst) {
    json out;
    if (const auto* g = std::get_if<GapInstance>(&inst)) {
        out["kind"] = "gap";
        out["capacities"] = g->capacities;
        out["demand"] = g->demand;
        out["cost"] = g->cost;
    } else if (const auto* b = std::get_if<BppcInstance>(&inst)) {
        out["kind"] = "bppc";
        out["bin_capacity"] = b->bin_capacity;
        out["sizes"] = b->sizes;
        out["conflicts"] = b->conflicts;
    } else if (const auto* c = std::get_if<GcInstance>(&inst)) {
        out["kind"] = "gc";
        out["nodes"] = c->node_count;
        out["edges"] = c->edges;
        out["colors"] = c->color_count;
    } else if (const auto* j = std::get_if<JsspInstance>(&inst)) {
        out["kind"] = "jssp";
        out["machines"] = j->machine_count;
        out["jobs"] = j->jobs;
    } else if (const auto* v = std::get_if<VrptwInstance>(&inst)) {
        out["kind"] = "vrptw";
        out["travel"] = v->travel;
        out["demand"] = v->demand;
        out["service"] = v->service;
        out["window_open"] = v->window_open;
        out["window_close"] = v->window_close;
        out["vehicles"] = v->vehicle_count;
        out["vehicle_capacity"] = v->vehicle_capacity;
    }
    return out;
}

} // namespace

ParsedInstance parse_native_json(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(1, e.what());
    }
    try {
        std::string kind = doc.at("kind");
        if (kind == "gap") {
            GapInstance g;
            g.capacities = doc.at("capacities").get<std::vector<double>>();
            g.demand = doc.at("demand").get<std::vector<std::vector<double>>>();
            g.cost = doc.at("cost").get<std::vector<std::vector<double>>>();
            return g;
        }
        if (kind == "bppc") {
            BppcInstance b;
            b.bin_capacity = doc.at("bin_capacity");
            b.sizes = doc.at("sizes").get<std::vector<double>>();
            b.conflicts = doc.at("conflicts").get<std::vector<std::pair<int, int>>>();
            return b;
        }
        if (kind == "gc") {
            GcInstance c;
            c.node_count = doc.at("nodes");
            c.edges = doc.at("edges").get<std::vector<std::pair<int, int>>>();
            c.color_count = doc.at("colors");
            return c;
        }
        if (kind == "jssp") {
            JsspInstance j;
            j.machine_count = doc.at("machines");
            j.jobs = doc.at("jobs").get<std::vector<std::vector<std::pair<int, double>>>>();
            return j;
        }
        if (kind == "vrptw") {
            VrptwInstance v;
            v.travel = doc.at("travel").get<std::vector<std::vector<double>>>();
            v.demand = doc.at("demand").get<std::vector<double>>();
            v.service = doc.at("service").get<std::vector<double>>();
            v.window_open = doc.at("window_open").get<std::vector<double>>();
            v.window_close = doc.at("window_close").get<std::vector<double>>();
            v.vehicle_count = doc.at("vehicles");
            v.vehicle_capacity = doc.at("vehicle_capacity");
            return v;
        }
        throw ParseError(1, "unknown instance kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ParseError(1, e.what());
    }
}

ParsedInstance parse_instance(const std::string& path, InstanceFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    switch (format) {
    case InstanceFormat::OrLibraryGap: return parse_gap(in);
    case InstanceFormat::BppConflict: return parse_bppc(in);
    case InstanceFormat::DimacsCol: return parse_gc(in);
    case InstanceFormat::TaillardJssp: return parse_jssp(in);
    case InstanceFormat::SolomonVrptw: return parse_vrptw(in);
    case InstanceFormat::NativeJson: return parse_native_json(in);
    }
    throw UnsupportedFormat("bad format enum");
}

void write_gap(std::ostream& out, const GapInstance& inst) {
    out << inst.capacities.size() << ' ' << inst.demand.at(0).size() << '\n';
    for (const auto& row : inst.cost) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << '\n';
    }
    for (const auto& row : inst.demand) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << '\n';
    }
    for (std::size_t i = 0; i < inst.capacities.size(); ++i)
        out << (i ? " " : "") << inst.capacities[i];
    out << '\n';
}

void write_bppc(std::ostream& out, const BppcInstance& inst) {
    int n = static_cast<int>(inst.sizes.size());
    out << n << ' ' << inst.bin_capacity << '\n';
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (auto [a, b] : inst.conflicts) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    for (int j = 1; j <= n; ++j) {
        out << inst.sizes[static_cast<std::size_t>(j - 1)];
        for (int other : adj[static_cast<std::size_t>(j)]) out << ' ' << other;
        out << '\n';
    }
}

void write_gc(std::ostream& out, const GcInstance& inst) {
    out << "p edge " << inst.node_count << ' ' << inst.edges.size() << '\n';
    for (auto [u, v] : inst.edges) out << "e " << u << ' ' << v << '\n';
}

void write_jssp(std::ostream& out, const JsspInstance& inst) {
    out << inst.jobs.size() << ' ' << inst.machine_count << '\n';
    for (const auto& job : inst.jobs) {
        for (std::size_t o = 0; o < job.size(); ++o) out << (o ? " " : "") << job[o].second;
        out << '\n';
    }
    for (const auto& job : inst.jobs) {
        for (std::size_t o = 0; o < job.size(); ++o) out << (o ? " " : "") << job[o].first;
        out << '\n';
    }
}

void write_native_json(std::ostream& out, const ParsedInstance& inst) {
    out << to_json(inst).dump(2) << '\n';
}

ProblemModel build_model(const ParsedInstance& inst) {
    return std::visit(
        [](const auto& x) -> ProblemModel {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, GapInstance>) return model_gap(x);
            else if constexpr (std::is_same_v<T, BppcInstance>) return model_bppc(x);
            else if constexpr (std::is_same_v<T, GcInstance>) return model_gc(x);
            else if constexpr (std::is_same_v<T, JsspInstance>) return model_jssp(x);
            else return model_vrptw(x);
        },
        inst);
}

const char* instance_kind(const ParsedInstance& inst) {
    switch (inst.index()) {
    case 0: return "gap";
    case 1: return "bppc";
    case 2: return "gc";
    case 3: return "jssp";
    case 4: return "vrptw";
    }
    return "?";
}

} // namespace rems
