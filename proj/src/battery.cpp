#include "chernweil/scenario.hpp"

namespace chernweil {

namespace {

using nlohmann::json;

Scenario from_json_text(const char* text) { return parse_scenario(json::parse(text)); }

}  // namespace

// The default battery behind `verify`. Kept as literal scenario JSON so the
// files under scenarios/ and the built-ins cannot drift apart in shape.
std::vector<Scenario> default_battery() {
    std::vector<Scenario> out;

    out.push_back(from_json_text(R"({
      "schema": 1,
      "name": "abelian_t2_characters",
      "chart": {"dim": 2},
      "k_max": 2,
      "rank": 1,
      "generator": {"name": "abelian_t2",
                    "params": {"a": [0.3, 1.4], "b": [0.2, -0.1, 0.35]}},
      "checks": [
        {"name": "identity_suite", "tol": 1e-11, "cases": 40},
        {"name": "holonomy_crosscheck", "tol": 1e-8},
        {"name": "character_difference", "tol": 1e-8},
        {"name": "period_integrality", "tol": 1e-9},
        {"name": "tertiary_character", "tol": 1e-10},
        {"name": "reparametrization_invariance", "tol": 1e-9}
      ],
      "cycles": [{"axes": [1]}, {"axes": [2]}, {"axes": [1, 2]}],
      "p_values": [1, 2],
      "seed": 20260809
    })"));

    out.push_back(from_json_text(R"({
      "schema": 1,
      "name": "commuting_t3_flat",
      "chart": {"dim": 3},
      "k_max": 3,
      "rank": 2,
      "generator": {"name": "commuting_t3", "params": {"degree": 2}},
      "checks": [
        {"name": "flat_eta_vanishing", "tol": 1e-12},
        {"name": "endpoint_rigidity", "tol": 1e-8},
        {"name": "character_difference", "tol": 1e-8},
        {"name": "tertiary_character", "tol": 1e-10},
        {"name": "reparametrization_invariance", "tol": 1e-9},
        {"name": "holonomy_crosscheck", "tol": 1e-8}
      ],
      "cycles": [{"axes": [1, 2]}, {"axes": [2, 3]}, {"axes": [1, 2, 3]},
                 {"axes": [1]}, {"axes": [2]}],
      "p_values": [1, 2],
      "seed": 31

    })"));

    out.push_back(from_json_text(R"({
      "schema": 1,
      "name": "commuting_t4_flat",
      "chart": {"dim": 4},
      "k_max": 3,
      "rank": 3,
      "generator": {"name": "commuting_t4", "params": {"degree": 2}},
      "checks": [
        {"name": "flat_eta_vanishing", "tol": 1e-12},
        {"name": "endpoint_rigidity", "tol": 1e-8},
        {"name": "tertiary_character", "tol": 1e-10},
        {"name": "chern_oracle", "tol": 1e-10},
        {"name": "period_integrality", "tol": 1e-9}
      ],
      "cycles": [{"axes": [1, 2]}, {"axes": [3, 4]}, {"axes": [1, 2, 3]},
                 {"axes": [2, 3, 4]}],
      "p_values": [2],
      "seed": 47
    })"));

    out.push_back(from_json_text(R"({
      "schema": 1,
      "name": "perturbed_t4_nonflat",
      "chart": {"dim": 4},
      "k_max": 4,
      "rank": 2,
      "generator": {"name": "perturbed_nonflat",
                    "params": {"degree": 2, "modes": 1, "amplitude": 0.5}},
      "checks": [
        {"name": "identity_suite", "tol": 1e-11, "cases": 60},
        {"name": "chern_oracle", "tol": 1e-10, "cases": 3},
        {"name": "transgression_stokes", "tol": 1e-10, "cases": 50},
        {"name": "beta_exactness", "tol": 1e-10, "cases": 10},
        {"name": "variational_consistency", "tol": 1e-4},
        {"name": "period_integrality", "tol": 1e-9}
      ],
      "p_values": [1, 2],
      "seed": 1009
    })"));

    out.push_back(from_json_text(R"({
      "schema": 1,
      "name": "perturbed_t5_bianchi",
      "chart": {"dim": 5},
      "k_max": 4,
      "rank": 2,
      "generator": {"name": "perturbed_nonflat",
                    "params": {"degree": 2, "modes": 1, "amplitude": 0.4}},
      "checks": [
        {"name": "chern_oracle", "tol": 1e-10, "cases": 2}
      ],
      "p_values": [1, 2],
      "seed": 271
    })"));

    out.push_back(from_json_text(R"({
      "schema": 1,
      "name": "flat_sheet_bump_t4",
      "chart": {"dim": 4},
      "k_max": 3,
      "rank": 2,
      "generator": {"name": "flat_sheet_bump", "params": {"degree": 2, "bump": 0.8}},
      "checks": [
        {"name": "rigidity_sweep", "tol": 1e-8},
        {"name": "variational_consistency", "tol": 1e-11},
        {"name": "beta_exactness", "tol": 1e-10, "cases": 10},
        {"name": "flat_eta_vanishing", "tol": 1e-12}
      ],
      "cycles": [{"axes": [1, 2, 3, 4]},
                 {"axes": [1, 2, 3, 4],
                  "basepoint": [3.14159265, 3.14159265, 3.14159265, 3.14159265]},
                 {"axes": [1, 2]}, {"axes": [3, 4]}],
      "p_values": [2, 3],
      "s_grid": [0.0, 0.25, 0.5, 0.75, 1.0],
      "seed": 92
    })"));

    out.push_back(from_json_text(R"({
      "schema": 1,
      "name": "commuting_t5_eta3",
      "chart": {"dim": 5},
      "k_max": 2,
      "rank": 2,
      "generator": {"name": "commuting_t5", "params": {"degree": 2}},
      "checks": [
        {"name": "flat_eta_vanishing", "tol": 1e-12},
        {"name": "endpoint_rigidity", "tol": 1e-8},
        {"name": "tertiary_character", "tol": 1e-10},
        {"name": "reparametrization_invariance", "tol": 1e-9}
      ],
      "cycles": [{"axes": [1, 2, 3, 4, 5]}, {"axes": [1, 2, 3, 4]},
                 {"axes": [2, 3, 4, 5]}, {"axes": [1, 2]}, {"axes": [4, 5]}],
      "p_values": [2, 3],
      "seed": 5005
    })"));

    return out;
}

}  // namespace chernweil
