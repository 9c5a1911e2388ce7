#pragma once

#include <optional>
#include <string>
#include <vector>

#include "birkhoff/config.hpp"
#include "birkhoff/functions.hpp"
#include "birkhoff/inequalities.hpp"
#include "birkhoff/measures.hpp"
#include "birkhoff/partitions.hpp"

namespace birkhoff::cli {

/// Numeric flags that override the config file's run section.
struct Overrides {
    std::optional<double> tolerance;
    std::optional<int> stages;
    std::optional<int> samples;
    std::optional<Nat> horizon;
    std::optional<std::uint64_t> seed;
};

struct AuditItem {
    std::string measure;
    std::vector<std::string> b_sets;
    std::optional<std::string> witness_partition;
};

struct IntegrateItem {
    std::string function;
    std::string measure;
    std::optional<std::string> on;
};

struct NormItem {
    std::string function;
    std::string measure;
    double p = 2.0;
};

struct CheckItem {
    std::string name;
    std::string u, v;
    std::string measure;
    double p = 2.0;
    std::optional<double> alpha, beta;
};

struct SweepItem {
    std::string name;
    std::string u, v;
    std::string measure;
    std::vector<double> p_grid;
    std::optional<double> alpha, beta;
};

struct Item {
    std::string op;  // audit | integrate | norm | check | sweep
    AuditItem audit;
    IntegrateItem integrate;
    NormItem norm;
    CheckItem check;
    SweepItem sweep;
};

/// Echo of a set spec as written in the config.
struct SetEcho {
    std::string kind;  // finite | cofinite_excl | predicate
    std::vector<Nat> list;
    std::string predicate;
};

struct Config {
    RunConfig run;
    std::vector<std::pair<std::string, MeasurableSet>> sets;
    std::vector<std::pair<std::string, SetEcho>> set_echoes;
    std::vector<std::pair<std::string, SetFunction>> measures;
    std::vector<std::pair<std::string, std::string>> measure_echoes;
    std::vector<std::pair<std::string, ScalarFunction>> functions;
    std::vector<std::pair<std::string, Partition>> partitions;
    std::vector<Item> items;
};

/// Parses and validates a config file. Throws ConfigError with a field path.
Config load_config(const std::string& path, const Overrides& overrides);

/// Executes `command` (all | audit | integrate | norm | check | sweep, the
/// latter two optionally filtered by checker name) over the config's items
/// and writes the report to out_path ("-" for stdout).
///
/// Exit codes: 0 everything holds/converged, 1 an inequality failed,
/// 2 hypotheses violated or not converged, 3 config error.
int run_command(const std::string& command, const std::string& filter,
                const std::string& config_path, const std::string& out_path,
                const Overrides& overrides);

}  // namespace birkhoff::cli
