#include "birkhoff/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "birkhoff/integrator.hpp"
#include "birkhoff/report.hpp"

namespace birkhoff::cli {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const std::string& field, const std::string& path) {
    if (!j.contains(field)) throw ConfigError(path + "." + field, "missing field");
    return j.at(field);
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

std::vector<Nat> as_nat_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of naturals");
    std::vector<Nat> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& e = j.at(i);
        if (!e.is_number_unsigned()) {
            throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a natural");
        }
        out.push_back(e.get<Nat>());
    }
    return out;
}

std::pair<MeasurableSet, SetEcho> parse_set(const json& j, const std::string& path,
                                            const std::string& name) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    SetEcho echo;
    if (j.contains("finite")) {
        echo.kind = "finite";
        echo.list = as_nat_list(j.at("finite"), path + ".finite");
        return {MeasurableSet::finite(echo.list, name), echo};
    }
    if (j.contains("cofinite_excl")) {
        echo.kind = "cofinite_excl";
        echo.list = as_nat_list(j.at("cofinite_excl"), path + ".cofinite_excl");
        return {MeasurableSet::cofinite(echo.list, name), echo};
    }
    if (j.contains("predicate")) {
        echo.kind = "predicate";
        echo.predicate = as_string(j.at("predicate"), path + ".predicate");
        const std::string& s = echo.predicate;
        if (s == "even") return {MeasurableSet::predicate(PredicateKind::Even, 0, name), echo};
        if (s == "odd") return {MeasurableSet::predicate(PredicateKind::Odd, 0, name), echo};
        if (s.rfind("geq:", 0) == 0 || s.rfind("lt:", 0) == 0) {
            const auto colon = s.find(':');
            Nat k = 0;
            try {
                k = static_cast<Nat>(std::stoull(s.substr(colon + 1)));
            } catch (const std::logic_error&) {
                throw ConfigError(path + ".predicate", "bad bound in '" + s + "'");
            }
            const PredicateKind kind =
                s[0] == 'g' ? PredicateKind::Geq : PredicateKind::Lt;
            return {MeasurableSet::predicate(kind, k, name), echo};
        }
        throw ConfigError(path + ".predicate", "unknown predicate '" + s + "'");
    }
    throw ConfigError(path, "expected one of finite | cofinite_excl | predicate");
}

WeightSequence parse_weights(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return WeightSequence::parse(j.get<std::string>());
        } catch (const Error& e) {
            throw ConfigError(path, e.what());
        }
    }
    if (j.is_array()) {
        std::vector<double> list;
        for (std::size_t i = 0; i < j.size(); ++i) {
            list.push_back(as_number(j.at(i), path + "[" + std::to_string(i) + "]"));
        }
        try {
            return WeightSequence::explicit_list(std::move(list));
        } catch (const Error& e) {
            throw ConfigError(path, e.what());
        }
    }
    throw ConfigError(path, "expected a weight family string or an array");
}

SetFunction parse_measure(const json& j, const std::string& path, const std::string& name) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    if (j.contains("additive")) {
        const json& a = j.at("additive");
        return SetFunction::additive(
            parse_weights(require_field(a, "weights", path + ".additive"),
                          path + ".additive.weights"),
            name);
    }
    if (j.contains("max")) {
        const json& m = j.at("max");
        return SetFunction::max_measure(
            parse_weights(require_field(m, "weights", path + ".max"), path + ".max.weights"),
            name);
    }
    if (j.contains("distorted")) {
        const json& d = j.at("distorted");
        const json& base = require_field(d, "base", path + ".distorted");
        const std::string g =
            as_string(require_field(d, "g", path + ".distorted"), path + ".distorted.g");
        Distortion dist;
        if (g == "sqrt") {
            dist = Distortion::Sqrt;
        } else if (g == "square") {
            dist = Distortion::Square;
        } else {
            throw ConfigError(path + ".distorted.g", "expected sqrt | square");
        }
        return SetFunction::distorted(
            parse_weights(require_field(base, "weights", path + ".distorted.base"),
                          path + ".distorted.base.weights"),
            dist, name);
    }
    throw ConfigError(path, "expected one of additive | max | distorted");
}

Partition parse_partition(const json& j, const std::string& path, const std::string& name) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    std::vector<std::vector<Nat>> head;
    const json& h = require_field(j, "head", path);
    if (!h.is_array()) throw ConfigError(path + ".head", "expected an array of cells");
    for (std::size_t i = 0; i < h.size(); ++i) {
        head.push_back(as_nat_list(h.at(i), path + ".head[" + std::to_string(i) + "]"));
    }
    const json& t = require_field(j, "tail", path);
    try {
        if (t.is_string() && t.get<std::string>() == "singletons") {
            return Partition(std::move(head), Partition::TailRule::Singletons, {}, name);
        }
        if (t.is_object() && t.contains("blocks")) {
            return Partition(std::move(head), Partition::TailRule::Blocks,
                             as_nat_list(t.at("blocks"), path + ".tail.blocks"), name);
        }
    } catch (const BadSplit& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path + ".tail", "expected \"singletons\" or {\"blocks\": [...]}");
}

void validate_check_params(const CheckItem& item, const std::string& path) {
    if (!is_checker_name(item.name)) {
        throw ConfigError(path + ".name", "unknown checker '" + item.name + "'");
    }
    const double p = item.p;
    const bool needs_gt1 = item.name == "holder" || item.name == "minkowski" ||
                           item.name == "bounded_ratio_a" || item.name == "bounded_ratio_b";
    const bool needs_unit = item.name == "reverse_holder" || item.name == "reverse_minkowski";
    if (needs_gt1 && !(p > 1.0)) throw ConfigError(path + ".p", "this checker requires p > 1");
    if (needs_unit && !(p > 0.0 && p < 1.0)) {
        throw ConfigError(path + ".p", "this checker requires p in (0,1)");
    }
    if (!needs_gt1 && !needs_unit && (!(p > 0.0) || p == 1.0)) {
        throw ConfigError(path + ".p", "p must lie in (0,1) or (1,inf)");
    }
    if (item.alpha.has_value() != item.beta.has_value()) {
        throw ConfigError(path, "alpha and beta must be given together");
    }
    if (item.alpha && (!(*item.alpha > 0.0) || !(*item.beta > 0.0) || *item.alpha > *item.beta)) {
        throw ConfigError(path, "need 0 < alpha <= beta");
    }
}

}  // namespace

Config load_config(const std::string& path, const Overrides& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("<root>", "expected an object");

    Config cfg;
    if (root.contains("run")) {
        const json& r = root.at("run");
        if (!r.is_object()) throw ConfigError("run", "expected an object");
        if (r.contains("tolerance")) cfg.run.tolerance = as_number(r.at("tolerance"), "run.tolerance");
        if (r.contains("stages")) {
            cfg.run.stages = static_cast<int>(as_number(r.at("stages"), "run.stages"));
        }
        if (r.contains("samples_per_stage")) {
            cfg.run.samples_per_stage =
                static_cast<int>(as_number(r.at("samples_per_stage"), "run.samples_per_stage"));
        }
        if (r.contains("horizon")) {
            cfg.run.horizon = static_cast<Nat>(as_number(r.at("horizon"), "run.horizon"));
        }
        if (r.contains("seed")) {
            cfg.run.seed = static_cast<std::uint64_t>(as_number(r.at("seed"), "run.seed"));
        }
    }
    if (overrides.tolerance) cfg.run.tolerance = *overrides.tolerance;
    if (overrides.stages) cfg.run.stages = *overrides.stages;
    if (overrides.samples) cfg.run.samples_per_stage = *overrides.samples;
    if (overrides.horizon) cfg.run.horizon = *overrides.horizon;
    if (overrides.seed) cfg.run.seed = *overrides.seed;
    try {
        cfg.run.validate();
    } catch (const ConfigError&) {
        throw;
    }

    SetEnv env;
    if (root.contains("sets")) {
        const json& sets = root.at("sets");
        if (!sets.is_object()) throw ConfigError("sets", "expected an object");
        for (const auto& [name, spec] : sets.items()) {
            auto [set, echo] = parse_set(spec, "sets." + name, name);
            env.emplace(name, set);
            cfg.sets.emplace_back(name, std::move(set));
            cfg.set_echoes.emplace_back(name, std::move(echo));
        }
    }
    if (root.contains("measures")) {
        const json& measures = root.at("measures");
        if (!measures.is_object()) throw ConfigError("measures", "expected an object");
        for (const auto& [name, spec] : measures.items()) {
            SetFunction nu = parse_measure(spec, "measures." + name, name);
            cfg.measure_echoes.emplace_back(name, nu.describe());
            cfg.measures.emplace_back(name, std::move(nu));
        }
    }
    if (root.contains("functions")) {
        const json& functions = root.at("functions");
        if (!functions.is_object()) throw ConfigError("functions", "expected an object");
        for (const auto& [name, spec] : functions.items()) {
            const std::string fpath = "functions." + name;
            if (!spec.is_object()) throw ConfigError(fpath, "expected an object");
            const std::string text =
                as_string(require_field(spec, "expr", fpath), fpath + ".expr");
            std::optional<MeasurableSet> support;
            if (spec.contains("support")) {
                const std::string sname = as_string(spec.at("support"), fpath + ".support");
                auto it = env.find(sname);
                if (it == env.end()) {
                    throw ConfigError(fpath + ".support", "unknown set '" + sname + "'");
                }
                support = it->second;
            }
            try {
                cfg.functions.emplace_back(
                    name, ScalarFunction::from_text(text, env, std::move(support), name));
            } catch (const Error& e) {
                throw ConfigError(fpath + ".expr", e.what());
            }
        }
    }
    if (root.contains("partitions")) {
        const json& parts = root.at("partitions");
        if (!parts.is_object()) throw ConfigError("partitions", "expected an object");
        for (const auto& [name, spec] : parts.items()) {
            cfg.partitions.emplace_back(name, parse_partition(spec, "partitions." + name, name));
        }
    }

    auto known_set = [&cfg](const std::string& n) {
        for (const auto& [name, s] : cfg.sets) {
            if (name == n) return true;
        }
        return false;
    };
    auto known_measure = [&cfg](const std::string& n) {
        for (const auto& [name, m] : cfg.measures) {
            if (name == n) return true;
        }
        return false;
    };
    auto known_function = [&cfg](const std::string& n) {
        for (const auto& [name, f] : cfg.functions) {
            if (name == n) return true;
        }
        return false;
    };
    auto known_partition = [&cfg](const std::string& n) {
        for (const auto& [name, p] : cfg.partitions) {
            if (name == n) return true;
        }
        return false;
    };

    if (root.contains("items")) {
        const json& items = root.at("items");
        if (!items.is_array()) throw ConfigError("items", "expected an array");
        for (std::size_t i = 0; i < items.size(); ++i) {
            const json& it = items.at(i);
            const std::string path = "items[" + std::to_string(i) + "]";
            if (!it.is_object()) throw ConfigError(path, "expected an object");
            Item item;
            item.op = as_string(require_field(it, "op", path), path + ".op");
            if (item.op == "audit") {
                item.audit.measure =
                    as_string(require_field(it, "measure", path), path + ".measure");
                if (!known_measure(item.audit.measure)) {
                    throw ConfigError(path + ".measure", "unknown measure");
                }
                if (it.contains("b_sets")) {
                    const json& bs = it.at("b_sets");
                    if (!bs.is_array()) throw ConfigError(path + ".b_sets", "expected an array");
                    for (std::size_t k = 0; k < bs.size(); ++k) {
                        const std::string sn = as_string(
                            bs.at(k), path + ".b_sets[" + std::to_string(k) + "]");
                        if (!known_set(sn)) {
                            throw ConfigError(path + ".b_sets", "unknown set '" + sn + "'");
                        }
                        item.audit.b_sets.push_back(sn);
                    }
                }
                if (it.contains("witness_partition")) {
                    const std::string pn =
                        as_string(it.at("witness_partition"), path + ".witness_partition");
                    if (!known_partition(pn)) {
                        throw ConfigError(path + ".witness_partition", "unknown partition");
                    }
                    item.audit.witness_partition = pn;
                }
            } else if (item.op == "integrate") {
                item.integrate.function =
                    as_string(require_field(it, "function", path), path + ".function");
                item.integrate.measure =
                    as_string(require_field(it, "measure", path), path + ".measure");
                if (!known_function(item.integrate.function)) {
                    throw ConfigError(path + ".function", "unknown function");
                }
                if (!known_measure(item.integrate.measure)) {
                    throw ConfigError(path + ".measure", "unknown measure");
                }
                if (it.contains("on")) {
                    const std::string sn = as_string(it.at("on"), path + ".on");
                    if (!known_set(sn)) throw ConfigError(path + ".on", "unknown set");
                    item.integrate.on = sn;
                }
            } else if (item.op == "norm") {
                item.norm.function =
                    as_string(require_field(it, "function", path), path + ".function");
                item.norm.measure =
                    as_string(require_field(it, "measure", path), path + ".measure");
                item.norm.p = as_number(require_field(it, "p", path), path + ".p");
                if (!known_function(item.norm.function)) {
                    throw ConfigError(path + ".function", "unknown function");
                }
                if (!known_measure(item.norm.measure)) {
                    throw ConfigError(path + ".measure", "unknown measure");
                }
                if (!(item.norm.p > 0.0) || item.norm.p < 1e-3) {
                    throw ConfigError(path + ".p", "norm exponent must satisfy p >= 1e-3");
                }
            } else if (item.op == "check" || item.op == "sweep") {
                const bool is_sweep = item.op == "sweep";
                auto& name = is_sweep ? item.sweep.name : item.check.name;
                auto& uu = is_sweep ? item.sweep.u : item.check.u;
                auto& vv = is_sweep ? item.sweep.v : item.check.v;
                auto& mm = is_sweep ? item.sweep.measure : item.check.measure;
                name = as_string(require_field(it, "name", path), path + ".name");
                uu = as_string(require_field(it, "u", path), path + ".u");
                vv = as_string(require_field(it, "v", path), path + ".v");
                mm = as_string(require_field(it, "measure", path), path + ".measure");
                if (!is_checker_name(name)) {
                    throw ConfigError(path + ".name", "unknown checker '" + name + "'");
                }
                if (!known_function(uu)) throw ConfigError(path + ".u", "unknown function");
                if (!known_function(vv)) throw ConfigError(path + ".v", "unknown function");
                if (!known_measure(mm)) throw ConfigError(path + ".measure", "unknown measure");
                std::optional<double> alpha, beta;
                if (it.contains("alpha")) alpha = as_number(it.at("alpha"), path + ".alpha");
                if (it.contains("beta")) beta = as_number(it.at("beta"), path + ".beta");
                if (is_sweep) {
                    const json& grid = require_field(it, "p_grid", path);
                    if (!grid.is_array()) throw ConfigError(path + ".p_grid", "expected an array");
                    for (std::size_t k = 0; k < grid.size(); ++k) {
                        item.sweep.p_grid.push_back(as_number(
                            grid.at(k), path + ".p_grid[" + std::to_string(k) + "]"));
                    }
                    item.sweep.alpha = alpha;
                    item.sweep.beta = beta;
                } else {
                    item.check.p = as_number(require_field(it, "p", path), path + ".p");
                    item.check.alpha = alpha;
                    item.check.beta = beta;
                    validate_check_params(item.check, path);
                }
            } else {
                throw ConfigError(path + ".op",
                                  "expected audit | integrate | norm | check | sweep");
            }
            cfg.items.push_back(std::move(item));
        }
    }
    return cfg;
}

namespace {

template <typename T>
const T& lookup(const std::vector<std::pair<std::string, T>>& table, const std::string& name) {
    for (const auto& [k, v] : table) {
        if (k == name) return v;
    }
    throw ConfigError(name, "unresolved name");
}

void write_audit(JsonWriter& w, const PropertyAudit& audit, const std::string& set_name = "") {
    w.begin_object();
    w.kv("property", to_string(audit.property));
    if (!set_name.empty()) w.kv("set", set_name);
    w.kv("verdict", to_string(audit.verdict));
    w.kv("samples_used", audit.samples_used);
    w.kv("tolerance", audit.tolerance);
    if (audit.witness) {
        w.key("witness");
        w.begin_object();
        w.kv("description", audit.witness->description);
        w.kv("lhs", audit.witness->lhs);
        w.kv("rhs", audit.witness->rhs);
        w.kv("gap", audit.witness->gap);
        w.end_object();
    }
    w.end_object();
}

void write_integral(JsonWriter& w, const IntegralResult& res) {
    w.begin_object();
    w.kv("value", res.value);
    w.kv("oscillation", res.oscillation);
    w.kv("status", to_string(res.status));
    w.kv("partitions_examined", res.partitions_examined);
    w.kv("stage_depth", res.stage_depth);
    w.end_object();
}

void write_verdict(JsonWriter& w, const InequalityVerdict& v) {
    w.begin_object();
    w.kv("name", v.name);
    if (v.p) w.kv("p", *v.p);
    if (v.q) w.kv("q", *v.q);
    if (v.alpha) w.kv("alpha", *v.alpha);
    if (v.beta) w.kv("beta", *v.beta);
    w.kv("lhs", v.lhs);
    w.kv("rhs", v.rhs);
    w.kv("slack", v.slack);
    w.kv("tolerance", v.tolerance);
    w.kv("outcome", to_string(v.outcome));
    if (!v.error.empty()) w.kv("error", v.error);
    w.key("hypothesis_audits");
    w.begin_array();
    for (const auto& a : v.hypothesis_audits) write_audit(w, a);
    w.end_array();
    w.key("integrals");
    w.begin_array();
    for (const auto& s : v.integral_statuses) {
        w.begin_object();
        w.kv("label", s.label);
        w.kv("value", s.value);
        w.kv("oscillation", s.oscillation);
        w.kv("status", to_string(s.status));
        w.kv("stage_depth", s.stage_depth);
        w.end_object();
    }
    w.end_array();
    w.end_object();
}

struct Tally {
    int holds = 0;
    int fails = 0;
    int hypotheses_violated = 0;
    int not_converged = 0;
    int errors = 0;
    int audit_failures = 0;

    void absorb(const InequalityVerdict& v) {
        switch (v.outcome) {
            case CheckOutcome::Holds: ++holds; break;
            case CheckOutcome::Fails: ++fails; break;
            case CheckOutcome::HypothesesViolated: ++hypotheses_violated; break;
            case CheckOutcome::NotConverged: ++not_converged; break;
        }
        if (!v.error.empty()) ++errors;
    }

    int exit_code() const {
        if (fails > 0) return 1;
        if (hypotheses_violated + not_converged + errors + audit_failures > 0) return 2;
        return 0;
    }
};

}  // namespace

int run_command(const std::string& command, const std::string& filter,
                const std::string& config_path, const std::string& out_path,
                const Overrides& overrides) {
    Config cfg;
    try {
        cfg = load_config(config_path, overrides);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    }
    const bool run_all = command == "all";
    if (!run_all && command != "audit" && command != "integrate" && command != "norm" &&
        command != "check" && command != "sweep") {
        std::cerr << "config error: unknown command '" << command << "'\n";
        return 3;
    }

    JsonWriter w;
    Tally tally;
    int executed = 0;

    w.begin_object();
    w.kv("tool", "bwint");
    w.kv("version", "1.0.0");
    w.kv("schema", 1);
    w.kv("command", command);
    if (filter.empty()) {
        w.key("filter");
        w.null_value();
    } else {
        w.kv("filter", filter);
    }
    w.key("run");
    w.begin_object();
    w.kv("tolerance", cfg.run.tolerance);
    w.kv("stages", cfg.run.stages);
    w.kv("samples_per_stage", cfg.run.samples_per_stage);
    w.kv("horizon", cfg.run.horizon);
    w.kv("seed", cfg.run.seed);
    w.end_object();

    // config echo
    w.key("config");
    w.begin_object();
    w.key("sets");
    w.begin_object();
    for (const auto& [name, echo] : cfg.set_echoes) {
        w.key(name);
        w.begin_object();
        if (echo.kind == "predicate") {
            w.kv("predicate", echo.predicate);
        } else {
            w.key(echo.kind);
            w.begin_array();
            for (Nat n : echo.list) w.value(n);
            w.end_array();
        }
        w.end_object();
    }
    w.end_object();
    w.key("measures");
    w.begin_object();
    for (const auto& [name, desc] : cfg.measure_echoes) w.kv(name, desc);
    w.end_object();
    w.key("functions");
    w.begin_object();
    for (const auto& [name, f] : cfg.functions) {
        w.key(name);
        w.begin_object();
        w.kv("expr", f.to_text());
        if (f.declared_support()) w.kv("support", f.declared_support()->label());
        w.end_object();
    }
    w.end_object();
    w.key("partitions");
    w.begin_object();
    for (const auto& [name, p] : cfg.partitions) {
        w.key(name);
        w.begin_object();
        w.key("head");
        w.begin_array();
        for (const auto& cell : p.head()) {
            w.begin_array();
            for (Nat n : cell) w.value(n);
            w.end_array();
        }
        w.end_array();
        if (p.tail_rule() == Partition::TailRule::Singletons) {
            w.kv("tail", "singletons");
        } else {
            w.key("tail");
            w.begin_object();
            w.key("blocks");
            w.begin_array();
            for (Nat len : p.block_cycle()) w.value(len);
            w.end_array();
            w.end_object();
        }
        w.end_object();
    }
    w.end_object();
    w.end_object();  // config

    // cached hypothesis bundles per measure, computed on first use
    std::map<std::string, MeasureHypotheses> hypothesis_cache;
    auto hypotheses_for = [&](const std::string& name) -> const MeasureHypotheses& {
        auto it = hypothesis_cache.find(name);
        if (it == hypothesis_cache.end()) {
            it = hypothesis_cache
                     .emplace(name, audit_measure_hypotheses(lookup(cfg.measures, name), cfg.run))
                     .first;
        }
        return it->second;
    };

    w.key("items");
    w.begin_array();
    for (std::size_t i = 0; i < cfg.items.size(); ++i) {
        const Item& item = cfg.items[i];
        const bool selected =
            run_all || command == item.op;
        const std::string item_name = item.op == "check"   ? item.check.name
                                      : item.op == "sweep" ? item.sweep.name
                                                           : std::string();
        if (!selected || (!filter.empty() && item_name != filter)) continue;
        ++executed;

        const auto t0 = std::chrono::steady_clock::now();
        w.begin_object();
        w.kv("index", static_cast<std::int64_t>(i));
        w.kv("op", item.op);
        try {
            if (item.op == "integrate") {
                const auto& f = lookup(cfg.functions, item.integrate.function);
                const auto& nu = lookup(cfg.measures, item.integrate.measure);
                w.kv("function", item.integrate.function);
                w.kv("measure", item.integrate.measure);
                IntegralResult res;
                if (item.integrate.on) {
                    w.kv("on", *item.integrate.on);
                    res = integrate_on(f, lookup(cfg.sets, *item.integrate.on), nu, cfg.run);
                } else {
                    res = birkhoff_weak_integral(f, nu, cfg.run);
                }
                if (res.status != IntegralStatus::Converged) ++tally.not_converged;
                w.key("result");
                write_integral(w, res);
            } else if (item.op == "norm") {
                const auto& f = lookup(cfg.functions, item.norm.function);
                const auto& nu = lookup(cfg.measures, item.norm.measure);
                w.kv("function", item.norm.function);
                w.kv("measure", item.norm.measure);
                w.kv("p", item.norm.p);
                const PNormResult res = p_norm(f, item.norm.p, nu, cfg.run);
                w.kv("norm", res.norm);
                w.key("integral");
                write_integral(w, res.integral);
            } else if (item.op == "audit") {
                const auto& nu = lookup(cfg.measures, item.audit.measure);
                w.kv("measure", item.audit.measure);
                const MeasureHypotheses& hyp = hypotheses_for(item.audit.measure);
                w.key("audits");
                w.begin_array();
                for (const auto& a : hyp.audits) {
                    if (!a.passed()) ++tally.audit_failures;
                    write_audit(w, a);
                }
                std::vector<std::pair<std::string, PropertyAudit>> b_audits;
                for (const std::string& bname : item.audit.b_sets) {
                    PropertyAudit a =
                        a_integrability_audit(nu, lookup(cfg.sets, bname),
                                              cfg.run.samples_per_stage, 1e-9, cfg.run);
                    if (!a.passed()) ++tally.audit_failures;
                    b_audits.emplace_back(bname, a);
                }
                for (const auto& [bname, a] : b_audits) {
                    write_audit(w, a, bname);
                }
                w.end_array();
                if (item.audit.witness_partition && !item.audit.b_sets.empty()) {
                    const Partition& part =
                        lookup(cfg.partitions, *item.audit.witness_partition);
                    const MeasurableSet& b = lookup(cfg.sets, item.audit.b_sets.front());
                    const ScalarFunction chi = ScalarFunction::indicator(b);
                    std::vector<Nat> tags;
                    for (std::size_t k = 0; k < part.head_size(); ++k) {
                        tags.push_back(part.cell_elements(k).front());
                    }
                    const TaggedPartition tp(part, tags);
                    const double coarse =
                        tagged_sum(chi, nu, tp, static_cast<int>(part.head_size()));
                    double fine = 0.0;
                    for (Nat n = 0; n < cfg.run.horizon; ++n) {
                        if (b.member(n)) fine += nu.singleton_mass(n);
                    }
                    w.key("witness_sums");
                    w.begin_object();
                    w.kv("partition", *item.audit.witness_partition);
                    w.kv("set", item.audit.b_sets.front());
                    w.kv("coarse_tagged_sum", coarse);
                    w.kv("singleton_sum", fine);
                    w.end_object();
                }
            } else if (item.op == "check") {
                const auto& u = lookup(cfg.functions, item.check.u);
                const auto& v = lookup(cfg.functions, item.check.v);
                const auto& nu = lookup(cfg.measures, item.check.measure);
                CheckConfig ccfg;
                ccfg.run = cfg.run;
                const MeasureHypotheses& hyp = hypotheses_for(item.check.measure);
                ccfg.cached_hypotheses = &hyp;
                const std::string& name = item.check.name;
                const double p = item.check.p;
                InequalityVerdict verdict;
                if (name == "holder") {
                    verdict = holder_check(u, v, ConjugatePair::from_p(p), nu, ccfg);
                } else if (name == "minkowski") {
                    verdict = minkowski_check(u, v, p, nu, ccfg);
                } else if (name == "reverse_holder") {
                    verdict = reverse_holder_check(u, v, ConjugatePair::from_p(p), nu, ccfg);
                } else if (name == "reverse_minkowski") {
                    verdict = reverse_minkowski_check(u, v, p, nu, ccfg);
                } else if (name == "weighted") {
                    verdict = weighted_check(u, v, ConjugatePair::from_p(p), nu, ccfg);
                } else if (name == "radon_ratio") {
                    verdict = radon_ratio_check(u, v, p, nu, ccfg);
                } else {
                    const ConjugatePair cp = ConjugatePair::from_p(p);
                    double lo, hi;
                    if (item.check.alpha) {
                        lo = *item.check.alpha;
                        hi = *item.check.beta;
                    } else {
                        const bool part_b = name == "bounded_ratio_b";
                        std::tie(lo, hi) =
                            tight_ratio_bounds(u, v, nu, cfg.run.horizon,
                                               part_b ? cp.p : 1.0, part_b ? cp.q : 1.0);
                    }
                    verdict = name == "bounded_ratio_a"
                                  ? bounded_ratio_check_a(u, v, cp, lo, hi, nu, ccfg)
                                  : bounded_ratio_check_b(u, v, cp, lo, hi, nu, ccfg);
                }
                tally.absorb(verdict);
                w.key("verdict");
                write_verdict(w, verdict);
            } else if (item.op == "sweep") {
                const auto& u = lookup(cfg.functions, item.sweep.u);
                const auto& v = lookup(cfg.functions, item.sweep.v);
                const auto& nu = lookup(cfg.measures, item.sweep.measure);
                CheckConfig ccfg;
                ccfg.run = cfg.run;
                const MeasureHypotheses& hyp = hypotheses_for(item.sweep.measure);
                ccfg.cached_hypotheses = &hyp;
                w.kv("name", item.sweep.name);
                const auto verdicts = sweep(item.sweep.name, u, v, item.sweep.p_grid, nu, ccfg,
                                            item.sweep.alpha, item.sweep.beta);
                for (const auto& verdict : verdicts) tally.absorb(verdict);
                w.key("verdicts");
                w.begin_array();
                for (const auto& verdict : verdicts) write_verdict(w, verdict);
                w.end_array();
            }
        } catch (const Error& e) {
            w.kv("error", e.what());
            ++tally.errors;
        }
        w.end_object();
        const auto t1 = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                .count();
        std::cerr << "item " << i << " (" << item.op << "): " << ms << " ms\n";
    }
    w.end_array();

    w.key("summary");
    w.begin_object();
    w.kv("items_executed", executed);
    w.kv("holds", tally.holds);
    w.kv("fails", tally.fails);
    w.kv("hypotheses_violated", tally.hypotheses_violated);
    w.kv("not_converged", tally.not_converged);
    w.kv("errors", tally.errors);
    w.kv("audit_failures", tally.audit_failures);
    w.kv("exit_code", tally.exit_code());
    w.end_object();
    w.end_object();

    const std::string report = w.take();
    if (out_path == "-" || out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "config error: cannot write report to " << out_path << "\n";
            return 3;
        }
        out << report;
    }
    return tally.exit_code();
}

}  // namespace birkhoff::cli
