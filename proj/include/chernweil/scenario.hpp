#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chernweil/generators.hpp"
#include "chernweil/tertiary.hpp"

namespace chernweil {

inline constexpr const char* kEngineVersion = "chernweil 0.1.0";

struct CheckSpec {
    std::string name;
    double tol = 0.0;
    int cases = 0;  // 0: per-check default
    nlohmann::json params = nlohmann::json::object();
};

struct Scenario {
    int schema = 1;
    std::string name;
    TorusChart chart;  // dim and k_max
    int rank = 1;
    std::string generator;
    nlohmann::json generator_params = nlohmann::json::object();
    std::vector<CheckSpec> checks;
    std::vector<CycleSpec> cycles;
    std::vector<int> p_values;
    std::vector<double> s_grid;
    uint64_t seed = 0;
};

/// Strict parse: unknown keys, unknown generator or check names, and p values
/// with 2p-2 > dim are SchemaErrors naming the offending key.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);

struct ValueRecord {
    std::vector<int> cycle;
    int p = 0;
    std::optional<double> s;
    Complex raw{0.0, 0.0};
    Complex reduced{0.0, 0.0};
};

struct CheckRecord {
    std::string name;
    std::string status;  // pass | fail | finding
    std::map<std::string, double> residuals;
    std::vector<ValueRecord> values;
    std::string message;  // only on failures
    long long runtime_ms = 0;
};

struct SuiteReport {
    nlohmann::json scenario;  // canonical echo
    std::vector<CheckRecord> checks;
    std::string engine = kEngineVersion;

    bool all_passed() const;
};

struct RunOptions {
    double tol_scale = 1.0;
    std::optional<uint64_t> seed_override;
    /// Timings are suppressed (written as 0) by default so reports are
    /// byte-stable across runs; pass true to record wall clock times.
    bool timings = false;
};

/// Runs every requested check in declaration order. Check failures are
/// captured in the report; this never throws for check-level errors.
SuiteReport run_suite(const Scenario& s, const RunOptions& opt = {});

nlohmann::json report_to_json(const SuiteReport& r);
std::string render_report(const nlohmann::json& report);

std::vector<std::string> check_names();

/// Randomized exterior-calculus identity battery: d d = 0, graded Leibniz,
/// wedge associativity, closed-manifold Stokes, cylinder Stokes and the
/// Hodge-solver round trip. Returns the max residual per identity.
std::map<std::string, double> identity_battery(const TorusChart& chart, int rank,
                                               int cases, uint64_t seed);

/// The built-in scenario battery behind `verify`.
std::vector<Scenario> default_battery();

}  // namespace chernweil
