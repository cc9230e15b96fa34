#include "rems/model_io.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "rems/instance_io.hpp" // ParseError

namespace rems {

namespace {

using nlohmann::json;

Relation relation_from(const std::string& s) {
    if (s == "le") return Relation::Le;
    if (s == "ge") return Relation::Ge;
    if (s == "eq") return Relation::Eq;
    throw ParseError(1, "unknown relation '" + s + "'");
}

const char* relation_name(Relation r) {
    switch (r) {
    case Relation::Le: return "le";
    case Relation::Ge: return "ge";
    case Relation::Eq: return "eq";
    }
    return "?";
}

CoeffFn coeff_from_table(std::vector<std::vector<double>> table) {
    return [table = std::move(table)](int i, int j, int) {
        return table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    };
}

std::vector<std::vector<double>> require_table(const json& c, const char* key, int m, int n) {
    auto table = c.at(key).get<std::vector<std::vector<double>>>();
    if (static_cast<int>(table.size()) != m)
        throw ParseError(1, std::string(key) + " must have one row per resource");
    for (const auto& row : table)
        if (static_cast<int>(row.size()) != n)
            throw ParseError(1, std::string(key) + " rows must have one entry per task");
    return table;
}

void install_objective(ProblemModel& model) {
    auto& obj = model.objective;
    if (obj.builtin == "linear_cost") {
        auto cost = obj.cost_table;
        obj.value = [cost](const SolutionStructure& s, const AttributeSet&) {
            double total = 0;
            for (std::size_t i = 0; i < s.per_resource.size(); ++i)
                for (int j : s.per_resource[i]) total += cost[i][static_cast<std::size_t>(j - 1)];
            return total;
        };
    } else if (obj.builtin == "used_resources") {
        obj.value = [](const SolutionStructure& s, const AttributeSet&) {
            double used = 0;
            for (const auto& sub : s.per_resource)
                if (!sub.empty()) used += 1;
            return used;
        };
    } else if (obj.builtin == "attribute_max") {
        auto name = obj.attribute;
        obj.value = [name](const SolutionStructure&, const AttributeSet& attrs) {
            double best = 0;
            for (const auto& row : attrs.at(name))
                for (double v : row) best = std::max(best, v);
            return best;
        };
    } else {
        throw ParseError(1, "unknown builtin objective '" + obj.builtin + "'");
    }
}

} // namespace

ProblemModel load_model(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(1, e.what());
    }
    try {
        ProblemModel model;
        model.ordered = doc.at("ordered");
        for (const auto& r : doc.at("resources")) {
            Resource res;
            res.index = r.at("index");
            if (r.contains("position_capacity") && !r.at("position_capacity").is_null())
                res.position_capacity = r.at("position_capacity");
            if (r.contains("attributes"))
                res.attributes = r.at("attributes").get<std::map<std::string, double>>();
            model.resources.push_back(std::move(res));
        }
        for (const auto& t : doc.at("tasks")) {
            Task task;
            task.index = t.at("index");
            if (t.contains("attributes"))
                task.attributes = t.at("attributes").get<std::map<std::string, double>>();
            model.tasks.push_back(std::move(task));
        }
        int m = model.m(), n = model.n();

        const auto& o = doc.at("objective");
        model.objective.sense = o.at("sense") == "max" ? Sense::Max : Sense::Min;
        model.objective.builtin = o.at("builtin");
        if (o.contains("cost_table"))
            model.objective.cost_table = require_table(o, "cost_table", m, n);
        if (o.contains("attribute")) model.objective.attribute = o.at("attribute");
        install_objective(model);

        for (const auto& c : doc.at("constraints")) {
            std::string type = c.at("type");
            std::string name = c.value("name", type);
            if (type == "resource_aggregate") {
                ResourceAggregate body;
                body.coeff_table = require_table(c, "coeff_table", m, n);
                body.coeff = coeff_from_table(body.coeff_table);
                body.thresholds = c.at("thresholds").get<std::vector<double>>();
                if (static_cast<int>(body.thresholds.size()) != m)
                    throw ParseError(1, "thresholds must have one entry per resource");
                body.rel = relation_from(c.at("relation"));
                model.constraints.push_back({name, std::move(body)});
            } else if (type == "task_aggregate") {
                TaskAggregate body;
                body.coeff_table = require_table(c, "coeff_table", m, n);
                body.coeff = coeff_from_table(body.coeff_table);
                body.thresholds = c.at("thresholds").get<std::vector<double>>();
                if (static_cast<int>(body.thresholds.size()) != n)
                    throw ParseError(1, "thresholds must have one entry per task");
                body.rel = relation_from(c.at("relation"));
                model.constraints.push_back({name, std::move(body)});
            } else if (type == "pairing") {
                Pairing body;
                body.mode = c.at("mode") == "same" ? PairingMode::SameResource
                                                   : PairingMode::DifferentResource;
                body.pairs = c.at("pairs").get<std::vector<std::pair<int, int>>>();
                model.constraints.push_back({name, std::move(body)});
            } else if (type == "precedence") {
                Precedence body;
                body.pairs = c.at("pairs").get<std::vector<std::pair<int, int>>>();
                model.constraints.push_back({name, std::move(body)});
            } else if (type == "resource_task_aggregate") {
                ResourceTaskAggregate body;
                body.coeff_table = require_table(c, "coeff_table", m, n);
                body.coeff = coeff_from_table(body.coeff_table);
                body.threshold_table = require_table(c, "threshold_table", m, n);
                auto thr = body.threshold_table;
                body.threshold = [thr](int i, int j) {
                    return thr[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                };
                body.rel = relation_from(c.at("relation"));
                model.constraints.push_back({name, std::move(body)});
            } else {
                throw ParseError(1, "unknown constraint type '" + type + "'");
            }
        }
        model.validate();
        return model;
    } catch (const json::exception& e) {
        throw ParseError(1, e.what());
    }
}

ProblemModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    return load_model(in);
}

void save_model(std::ostream& out, const ProblemModel& model) {
    if (!model.attribute_evaluators.empty())
        throw NotRepresentable("attribute evaluators are code-only");
    if (model.objective.builtin.empty())
        throw NotRepresentable("code-only objective has no file form");

    json doc;
    doc["ordered"] = model.ordered;
    doc["resources"] = json::array();
    for (const auto& r : model.resources) {
        json jr;
        jr["index"] = r.index;
        if (r.position_capacity == kUnbounded)
            jr["position_capacity"] = nullptr;
        else
            jr["position_capacity"] = r.position_capacity;
        if (!r.attributes.empty()) jr["attributes"] = r.attributes;
        doc["resources"].push_back(std::move(jr));
    }
    doc["tasks"] = json::array();
    for (const auto& t : model.tasks) {
        json jt;
        jt["index"] = t.index;
        if (!t.attributes.empty()) jt["attributes"] = t.attributes;
        doc["tasks"].push_back(std::move(jt));
    }

    json jo;
    jo["sense"] = model.objective.sense == Sense::Max ? "max" : "min";
    jo["builtin"] = model.objective.builtin;
    if (!model.objective.cost_table.empty()) jo["cost_table"] = model.objective.cost_table;
    if (!model.objective.attribute.empty()) jo["attribute"] = model.objective.attribute;
    doc["objective"] = std::move(jo);

    doc["constraints"] = json::array();
    for (const auto& spec : model.constraints) {
        json jc;
        jc["name"] = spec.name;
        if (const auto* ra = std::get_if<ResourceAggregate>(&spec.body)) {
            if (ra->coeff_table.empty())
                throw NotRepresentable("resource aggregate '" + spec.name + "' lacks a coefficient table");
            jc["type"] = "resource_aggregate";
            jc["coeff_table"] = ra->coeff_table;
            jc["thresholds"] = ra->thresholds;
            jc["relation"] = relation_name(ra->rel);
        } else if (const auto* ta = std::get_if<TaskAggregate>(&spec.body)) {
            if (ta->coeff_table.empty())
                throw NotRepresentable("task aggregate '" + spec.name + "' lacks a coefficient table");
            jc["type"] = "task_aggregate";
            jc["coeff_table"] = ta->coeff_table;
            jc["thresholds"] = ta->thresholds;
            jc["relation"] = relation_name(ta->rel);
        } else if (const auto* p = std::get_if<Pairing>(&spec.body)) {
            jc["type"] = "pairing";
            jc["mode"] = p->mode == PairingMode::SameResource ? "same" : "different";
            jc["pairs"] = p->pairs;
        } else if (const auto* pr = std::get_if<Precedence>(&spec.body)) {
            jc["type"] = "precedence";
            jc["pairs"] = pr->pairs;
        } else if (const auto* rt = std::get_if<ResourceTaskAggregate>(&spec.body)) {
            if (rt->coeff_table.empty() || rt->threshold_table.empty())
                throw NotRepresentable("resource-task aggregate '" + spec.name + "' lacks tables");
            jc["type"] = "resource_task_aggregate";
            jc["coeff_table"] = rt->coeff_table;
            jc["threshold_table"] = rt->threshold_table;
            jc["relation"] = relation_name(rt->rel);
        } else {
            throw NotRepresentable("custom constraint '" + spec.name + "' is code-only");
        }
        doc["constraints"].push_back(std::move(jc));
    }
    out << doc.dump(2) << '\n';
}

} // namespace rems
