#include "chernweil/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chernweil/errors.hpp"
#include "chernweil/quadrature.hpp"
#include "chernweil/rng.hpp"

namespace chernweil {

using nlohmann::json;

namespace {

const std::vector<std::string>& registry() {
    static const std::vector<std::string> names = {
        "identity_suite",      "chern_oracle",
        "transgression_stokes", "flat_eta_vanishing",
        "beta_exactness",      "character_difference",
        "endpoint_rigidity",   "tertiary_character",
        "reparametrization_invariance", "variational_consistency",
        "rigidity_sweep",      "holonomy_crosscheck",
        "period_integrality"};
    return names;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw SchemaError(where.empty() ? key : where + "." + key,
                              "unknown key '" + key + "'");
    }
}

}  // namespace

std::vector<std::string> check_names() { return registry(); }

Scenario parse_scenario(const json& j) {
    if (!j.is_object()) throw SchemaError("", "scenario must be a JSON object");
    reject_unknown_keys(j,
                        {"schema", "name", "chart", "rank", "k_max", "generator",
                         "checks", "cycles", "p_values", "s_grid", "seed"},
                        "");
    Scenario s;
    if (j.contains("schema")) {
        if (!j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
            throw SchemaError("schema", "unsupported schema version");
    }
    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
        throw SchemaError("name", "scenario needs a nonempty name");
    s.name = j["name"].get<std::string>();

    if (!j.contains("chart") || !j["chart"].is_object())
        throw SchemaError("chart", "scenario needs a chart object");
    reject_unknown_keys(j["chart"], {"dim"}, "chart");
    if (!j["chart"].contains("dim") || !j["chart"]["dim"].is_number_integer())
        throw SchemaError("chart.dim", "chart.dim must be an integer");
    s.chart.dim = j["chart"]["dim"].get<int>();
    if (s.chart.dim < 1 || s.chart.dim > kMaxDim)
        throw SchemaError("chart.dim", "dimension must be in 1.." + std::to_string(kMaxDim));

    if (!j.contains("k_max") || !j["k_max"].is_number_integer())
        throw SchemaError("k_max", "scenario needs an integer k_max");
    s.chart.k_max = j["k_max"].get<int>();
    if (s.chart.k_max < 0 || s.chart.k_max > 12)
        throw SchemaError("k_max", "k_max must be in 0..12");

    if (!j.contains("rank") || !j["rank"].is_number_integer())
        throw SchemaError("rank", "scenario needs an integer rank");
    s.rank = j["rank"].get<int>();
    if (s.rank < 1 || s.rank > kMaxRank)
        throw SchemaError("rank", "rank must be in 1.." + std::to_string(kMaxRank));

    if (!j.contains("generator") || !j["generator"].is_object())
        throw SchemaError("generator", "scenario needs a generator object");
    reject_unknown_keys(j["generator"], {"name", "params"}, "generator");
    if (!j["generator"].contains("name") || !j["generator"]["name"].is_string())
        throw SchemaError("generator.name", "generator needs a name");
    s.generator = j["generator"]["name"].get<std::string>();
    {
        auto names = generator_names();
        if (std::find(names.begin(), names.end(), s.generator) == names.end())
            throw SchemaError("generator.name", "unknown generator '" + s.generator + "'");
    }
    if (j["generator"].contains("params")) {
        if (!j["generator"]["params"].is_object())
            throw SchemaError("generator.params", "params must be an object");
        s.generator_params = j["generator"]["params"];
    }

    if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
        throw SchemaError("checks", "scenario needs a nonempty checks array");
    for (size_t i = 0; i < j["checks"].size(); ++i) {
        const json& c = j["checks"][i];
        std::string where = "checks[" + std::to_string(i) + "]";
        if (!c.is_object()) throw SchemaError(where, "check must be an object");
        reject_unknown_keys(c, {"name", "tol", "cases", "params"}, where);
        CheckSpec spec;
        if (!c.contains("name") || !c["name"].is_string())
            throw SchemaError(where + ".name", "check needs a name");
        spec.name = c["name"].get<std::string>();
        if (std::find(registry().begin(), registry().end(), spec.name) == registry().end())
            throw SchemaError(where + ".name", "unknown check '" + spec.name + "'");
        if (!c.contains("tol") || !c["tol"].is_number())
            throw SchemaError(where + ".tol", "check needs a numeric tolerance");
        spec.tol = c["tol"].get<double>();
        if (!(spec.tol > 0.0)) throw SchemaError(where + ".tol", "tolerance must be positive");
        if (c.contains("cases")) {
            if (!c["cases"].is_number_integer() || c["cases"].get<int>() < 1)
                throw SchemaError(where + ".cases", "cases must be a positive integer");
            spec.cases = c["cases"].get<int>();
        }
        if (c.contains("params")) {
            if (!c["params"].is_object())
                throw SchemaError(where + ".params", "params must be an object");
            spec.params = c["params"];
        }
        s.checks.push_back(std::move(spec));
    }

    if (j.contains("cycles")) {
        if (!j["cycles"].is_array()) throw SchemaError("cycles", "cycles must be an array");
        for (size_t i = 0; i < j["cycles"].size(); ++i) {
            const json& c = j["cycles"][i];
            std::string where = "cycles[" + std::to_string(i) + "]";
            if (!c.is_object()) throw SchemaError(where, "cycle must be an object");
            reject_unknown_keys(c, {"axes", "basepoint"}, where);
            CycleSpec cy;
            if (!c.contains("axes") || !c["axes"].is_array() || c["axes"].empty())
                throw SchemaError(where + ".axes", "cycle needs a nonempty axes array");
            for (const auto& a : c["axes"]) {
                if (!a.is_number_integer())
                    throw SchemaError(where + ".axes", "axes must be integers");
                int axis = a.get<int>();
                if (axis < 1 || axis > s.chart.dim)
                    throw SchemaError(where + ".axes", "axis out of range 1..dim");
                cy.axes.push_back(axis);
            }
            {
                auto sorted = cy.axes;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                    throw SchemaError(where + ".axes", "repeated axis");
            }
            if (c.contains("basepoint")) {
                if (!c["basepoint"].is_array())
                    throw SchemaError(where + ".basepoint", "basepoint must be an array");
                for (const auto& v : c["basepoint"]) {
                    if (!v.is_number())
                        throw SchemaError(where + ".basepoint", "basepoint entries must be numbers");
                    cy.basepoint.push_back(v.get<double>());
                }
                if (int(cy.basepoint.size()) != s.chart.dim)
                    throw SchemaError(where + ".basepoint",
                                      "basepoint needs one angle per torus coordinate");
            }
            s.cycles.push_back(std::move(cy));
        }
    }

    if (j.contains("p_values")) {
        if (!j["p_values"].is_array()) throw SchemaError("p_values", "p_values must be an array");
        for (const auto& v : j["p_values"]) {
            if (!v.is_number_integer()) throw SchemaError("p_values", "p values must be integers");
            int p = v.get<int>();
            if (p < 1 || p > kMaxPolyDegree)
                throw SchemaError("p_values", "p must be in 1.." + std::to_string(kMaxPolyDegree));
            if (2 * p - 2 > s.chart.dim)
                throw SchemaError("p_values", "p = " + std::to_string(p) +
                                                  " needs 2p-2 <= dim = " +
                                                  std::to_string(s.chart.dim));
            s.p_values.push_back(p);
        }
    }

    if (j.contains("s_grid")) {
        if (!j["s_grid"].is_array()) throw SchemaError("s_grid", "s_grid must be an array");
        for (const auto& v : j["s_grid"]) {
            if (!v.is_number()) throw SchemaError("s_grid", "s_grid entries must be numbers");
            double x = v.get<double>();
            if (x < 0.0 || x > 1.0) throw SchemaError("s_grid", "s values must lie in [0,1]");
            s.s_grid.push_back(x);
        }
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            throw SchemaError("seed", "seed must be a nonnegative integer");
        s.seed = j["seed"].get<uint64_t>();
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario JSON parse error: ") + e.what());
    }
    return parse_scenario(j);
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["schema"] = 1;
    j["name"] = s.name;
    j["chart"] = {{"dim", s.chart.dim}};
    j["k_max"] = s.chart.k_max;
    j["rank"] = s.rank;
    j["generator"] = {{"name", s.generator}, {"params", s.generator_params}};
    j["checks"] = json::array();
    for (const auto& c : s.checks) {
        json jc = {{"name", c.name}, {"tol", c.tol}};
        if (c.cases > 0) jc["cases"] = c.cases;
        if (!c.params.empty()) jc["params"] = c.params;
        j["checks"].push_back(jc);
    }
    j["cycles"] = json::array();
    for (const auto& c : s.cycles) {
        json jc = {{"axes", c.axes}};
        if (!c.basepoint.empty()) jc["basepoint"] = c.basepoint;
        j["cycles"].push_back(jc);
    }
    j["p_values"] = s.p_values;
    j["s_grid"] = s.s_grid;
    j["seed"] = s.seed;
    return j;
}

// ---------------------------------------------------------------------------
// identity battery

std::map<std::string, double> identity_battery(const TorusChart& chart, int rank,
                                               int cases, uint64_t seed) {
    std::map<std::string, double> res = {{"d_d", 0.0},     {"leibniz", 0.0},
                                         {"assoc", 0.0},   {"stokes", 0.0},
                                         {"cyl_stokes", 0.0}, {"potential", 0.0}};
    int n = chart.dim;
    auto& r = res;
    for (int i = 0; i < cases; ++i) {
        Rng rng(seed_mix(seed, "identity", uint64_t(i)));

        // d d = 0
        if (n >= 2) {
            int g = rng.integer(0, n - 2);
            MatrixValuedForm a = random_form(rng, chart, rank, g, chart.k_max, 1.0);
            r["d_d"] = std::max(
                r["d_d"], sup_norm(exterior_derivative(exterior_derivative(a))));
        }

        // graded Leibniz
        if (n >= 2) {
            int ga = rng.integer(0, std::min(2, n - 1));
            int gb = rng.integer(0, std::min(2, std::max(0, n - 1 - ga)));
            int m = std::max(1, chart.k_max / 2);
            MatrixValuedForm a = random_form(rng, chart, rank, ga, m, 1.0);
            MatrixValuedForm b = random_form(rng, chart, rank, gb, m, 1.0);
            MatrixValuedForm lhs = exterior_derivative(wedge(a, b));
            MatrixValuedForm rhs = add(wedge(exterior_derivative(a), b),
                                       scaled(ga % 2 == 0 ? 1.0 : -1.0,
                                              wedge(a, exterior_derivative(b))));
            r["leibniz"] = std::max(r["leibniz"], sup_norm(sub(lhs, rhs)));
        }

        // associativity
        {
            int ga = rng.integer(0, std::min(2, n));
            int gb = rng.integer(0, std::min(2, std::max(0, n - ga)));
            int gc = rng.integer(0, std::max(0, std::min(2, n - ga - gb)));
            int m = std::max(1, chart.k_max / 3);
            MatrixValuedForm a = random_form(rng, chart, rank, ga, m, 1.0);
            MatrixValuedForm b = random_form(rng, chart, rank, gb, m, 1.0);
            MatrixValuedForm c = random_form(rng, chart, rank, gc, m, 1.0);
            r["assoc"] = std::max(r["assoc"], sup_norm(sub(wedge(wedge(a, b), c),
                                                           wedge(a, wedge(b, c)))));
        }

        // closed-manifold Stokes
        {
            MatrixValuedForm w = random_form(rng, chart, rank, n - 1, chart.k_max, 1.0);
            CycleSpec full;
            for (int ax = 1; ax <= n; ++ax) full.axes.push_back(ax);
            Complex v = integrate_over_subtorus(
                trace_form(exterior_derivative(w)), full);
            r["stokes"] = std::max(r["stokes"], std::abs(v));
        }

        // potential round trip
        {
            int g = rng.integer(0, n - 1);
            MatrixValuedForm rho = random_form(rng, chart, 1, g, chart.k_max, 1.0);
            MatrixValuedForm w = exterior_derivative(rho);
            MatrixValuedForm beta = solve_potential(w, 1e-9);
            r["potential"] = std::max(
                r["potential"], sup_norm(sub(detail::d_or_vacuous(beta), w)));
        }

        // cylinder Stokes: B(d a) + d(B a) = a0(1) - a0(0)
        if (n >= 2) {
            int g = rng.integer(1, n - 1);
            int m = std::max(1, chart.k_max / 2);
            std::vector<MatrixValuedForm> base, fib;
            for (int dgr = 0; dgr <= 2; ++dgr) {
                base.push_back(random_form(rng, chart, rank, g, m, 1.0));
                fib.push_back(random_form(rng, chart, rank, g - 1, m, 1.0));
            }
            CylinderForm a(FormPoly(std::move(base)), FormPoly(std::move(fib)));
            MatrixValuedForm lhs = add(fiber_integrate_t(cyl_d(a)),
                                       exterior_derivative(fiber_integrate_t(a)));
            MatrixValuedForm rhs = sub(a.base().eval(1.0), a.base().eval(0.0));
            r["cyl_stokes"] = std::max(r["cyl_stokes"], sup_norm(sub(lhs, rhs)));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// individual checks

namespace {

struct CheckContext {
    const Scenario& scenario;
    const CheckSpec& spec;
    double tol;  // tol_scale already applied
};

int cases_or(const CheckContext& ctx, int fallback) {
    return ctx.spec.cases > 0 ? ctx.spec.cases : fallback;
}

GeneratedFamily family_for_case(const CheckContext& ctx, int index) {
    uint64_t seed = seed_mix(ctx.scenario.seed, ctx.spec.name, uint64_t(index));
    return make_family(ctx.scenario.generator, ctx.scenario.generator_params,
                       ctx.scenario.chart, ctx.scenario.rank, seed);
}

std::vector<int> valid_p(const CheckContext& ctx, int min_p, int grade_cap) {
    std::vector<int> ps;
    for (int p : ctx.scenario.p_values)
        if (p >= min_p && grade_cap >= 0 && 2 * p - grade_cap <= ctx.scenario.chart.dim)
            ps.push_back(p);
    return ps;
}

std::vector<CycleSpec> cycles_of_dim(const CheckContext& ctx, int dim) {
    std::vector<CycleSpec> out;
    for (const auto& c : ctx.scenario.cycles)
        if (int(c.axes.size()) == dim) out.push_back(c);
    return out;
}

ValueRecord value_record(const CycleSpec& z, int p, std::optional<double> s,
                         const CharacterValue& cv) {
    ValueRecord v;
    v.cycle = z.axes;
    v.p = p;
    v.s = s;
    v.raw = cv.raw;
    v.reduced = cv.value;
    return v;
}

std::string rkey(const std::string& what, int p, int zi = -1) {
    std::string k = what + "_p" + std::to_string(p);
    if (zi >= 0) k += "_z" + std::to_string(zi);
    return k;
}

CheckRecord check_identity_suite(const CheckContext& ctx) {
    CheckRecord rec;
    rec.residuals = identity_battery(ctx.scenario.chart, ctx.scenario.rank,
                                     cases_or(ctx, 50),
                                     seed_mix(ctx.scenario.seed, ctx.spec.name));
    double worst = 0.0;
    for (const auto& [k, v] : rec.residuals) worst = std::max(worst, v);
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord check_chern_oracle(const CheckContext& ctx) {
    CheckRecord rec;
    int n = ctx.scenario.chart.dim;
    double worst_oracle = 0.0, worst_bianchi = 0.0;
    for (int i = 0; i < cases_or(ctx, 1); ++i) {
        Connection c = family_for_case(ctx, i).connection();
        auto oracle = total_chern_oracle(c);
        for (int p = 1; p <= c.rank(); ++p) {
            MatrixValuedForm cf = chern_form(c, p);
            worst_oracle =
                std::max(worst_oracle, sup_norm(sub(cf, oracle[size_t(p - 1)])));
            if (2 * p < n)
                worst_bianchi = std::max(worst_bianchi, sup_norm(exterior_derivative(cf)));
        }
    }
    rec.residuals["oracle"] = worst_oracle;
    rec.residuals["bianchi"] = worst_bianchi;
    rec.status =
        (worst_oracle <= ctx.tol && worst_bianchi <= ctx.tol / 10.0) ? "pass" : "fail";
    return rec;
}

CheckRecord check_transgression_stokes(const CheckContext& ctx) {
    CheckRecord rec;
    auto ps = valid_p(ctx, 1, 1);  // needs 2p-1 <= n
    if (ps.empty()) {
        rec.status = "fail";
        rec.message = "no usable p: need 2p-1 <= dim";
        return rec;
    }
    for (int p : ps) {
        double worst = 0.0;
        for (int i = 0; i < cases_or(ctx, 25); ++i) {
            ConnectionPath path = family_for_case(ctx, i * 31 + p).path();
            worst = std::max(worst, fiber_transgression(path, p).stokes_residual);
        }
        rec.residuals[rkey("stokes", p)] = worst;
    }
    double worst = 0.0;
    for (const auto& [k, v] : rec.residuals) worst = std::max(worst, v);
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord check_flat_eta_vanishing(const CheckContext& ctx) {
    CheckRecord rec;
    auto ps = valid_p(ctx, 2, 1);
    if (ps.empty()) {
        rec.status = "fail";
        rec.message = "no usable p: need p >= 2 and 2p-1 <= dim";
        return rec;
    }
    double worst = 0.0;
    for (int i = 0; i < cases_or(ctx, 3); ++i) {
        ConnectionPath path = family_for_case(ctx, i).path();
        double flat = path_flat_residual(path);
        rec.residuals["flatness"] = std::max(rec.residuals["flatness"], flat);
        if (flat > 1e-10) {
            rec.status = "fail";
            rec.message = "generator did not produce a flat family";
            return rec;
        }
        for (int p : ps) {
            double v = sup_norm(fiber_transgression(path, p).form);
            auto& slot = rec.residuals[rkey("eta_sup", p)];
            slot = std::max(slot, v);
            worst = std::max(worst, v);
        }
    }
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord check_beta_exactness(const CheckContext& ctx) {
    CheckRecord rec;
    int n = ctx.scenario.chart.dim;
    auto ps = valid_p(ctx, 2, 2);  // needs 2p-2 <= n
    if (ps.empty()) {
        rec.status = "fail";
        rec.message = "no usable p: need p >= 2 and 2p-2 <= dim";
        return rec;
    }
    bool harmonic_finding = false;
    double worst = 0.0;
    for (int p : ps) {
        double worst_sq = 0.0, worst_hodge = 0.0;
        for (int i = 0; i < cases_or(ctx, 10); ++i) {
            ConnectionSheet sheet = family_for_case(ctx, i * 17 + p).sheet;
            DoubleTransgressionReport dt = double_transgression(sheet, p);
            worst_sq = std::max(worst_sq, dt.square_stokes_residual);
            if (2 * p - 1 <= n) {
                MatrixValuedForm omega =
                    sub(fiber_transgression(path_at_s(sheet, 1.0), p).form,
                        fiber_transgression(path_at_s(sheet, 0.0), p).form);
                try {
                    MatrixValuedForm beta2 = solve_potential(omega, 1e-9);
                    worst_hodge = std::max(
                        worst_hodge,
                        sup_norm(detail::d_or_vacuous(sub(dt.form, beta2))));
                } catch (const HarmonicObstruction& e) {
                    harmonic_finding = true;
                    rec.residuals[rkey("harmonic", p)] =
                        std::max(rec.residuals[rkey("harmonic", p)], e.residual);
                }
            }
        }
        rec.residuals[rkey("square_stokes", p)] = worst_sq;
        rec.residuals[rkey("hodge_closed", p)] = worst_hodge;
        worst = std::max(worst, std::max(worst_sq, worst_hodge));
    }
    rec.status = worst <= ctx.tol ? (harmonic_finding ? "finding" : "pass") : "fail";
    return rec;
}

CheckRecord check_character_difference(const CheckContext& ctx) {
    CheckRecord rec;
    bool any = false;
    double worst = 0.0;
    for (int p : valid_p(ctx, 1, 1)) {
        auto zs = cycles_of_dim(ctx, 2 * p - 1);
        for (size_t zi = 0; zi < zs.size(); ++zi) {
            any = true;
            ConnectionPath path = family_for_case(ctx, p).path();
            CharacterDifferenceReport r =
                character_difference_check(path, p, zs[zi], ctx.tol);
            rec.residuals[rkey("mismatch", p, int(zi))] = r.modz_mismatch;
            rec.residuals[rkey("int_shift", p, int(zi))] = double(r.integer_shift);
            rec.values.push_back(value_record(zs[zi], p, std::nullopt, r.end0));
            rec.values.push_back(value_record(zs[zi], p, std::nullopt, r.end1));
            worst = std::max(worst, r.modz_mismatch);
        }
    }
    if (!any) {
        rec.status = "fail";
        rec.message = "no cycles of dimension 2p-1 for any requested p";
        return rec;
    }
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord check_endpoint_rigidity(const CheckContext& ctx) {
    CheckRecord rec;
    bool any = false;
    double worst = 0.0;
    for (int p : valid_p(ctx, 2, 1)) {
        auto zs = cycles_of_dim(ctx, 2 * p - 1);
        for (size_t zi = 0; zi < zs.size(); ++zi) {
            any = true;
            ConnectionPath path = family_for_case(ctx, p).path();
            double flat = path_flat_residual(path);
            rec.residuals["flatness"] = std::max(rec.residuals["flatness"], flat);
            CharacterValue c0 = character_of_connection(path_eval(path, 0.0), p, zs[zi]);
            CharacterValue c1 = character_of_connection(path_eval(path, 1.0), p, zs[zi]);
            double d = modz_distance(c1.raw, c0.raw);
            rec.residuals[rkey("rigidity", p, int(zi))] = d;
            rec.values.push_back(value_record(zs[zi], p, std::nullopt, c0));
            rec.values.push_back(value_record(zs[zi], p, std::nullopt, c1));
            worst = std::max(worst, d);
        }
    }
    if (!any) {
        rec.status = "fail";
        rec.message = "no cycles of dimension 2p-1 for any requested p";
        return rec;
    }
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord check_tertiary_character(const CheckContext& ctx) {
    CheckRecord rec;
    bool any = false;
    double worst = 0.0, worst_imag = 0.0;
    for (int p : valid_p(ctx, 2, 2)) {
        auto zs = cycles_of_dim(ctx, 2 * p - 2);
        for (size_t zi = 0; zi < zs.size(); ++zi) {
            any = true;
            ConnectionPath path = family_for_case(ctx, p).path();
            CharacterValue cv = tertiary_character(path, p, zs[zi]);
            for (const char* key : {"eta_sup", "d_tp", "dbeta_minus_tp"}) {
                double v = cv.residuals[key];
                rec.residuals[rkey(key, p, int(zi))] = v;
                worst = std::max(worst, v);
            }
            worst_imag = std::max(worst_imag, cv.residuals["imag"]);
            rec.values.push_back(value_record(zs[zi], p, std::nullopt, cv));
        }
    }
    if (!any) {
        rec.status = "fail";
        rec.message = "no cycles of dimension 2p-2 for any requested p";
        return rec;
    }
    rec.residuals["imag"] = worst_imag;
    rec.status = worst <= ctx.tol ? (worst_imag > 1e-10 ? "finding" : "pass") : "fail";
    return rec;
}

CheckRecord check_reparametrization_invariance(const CheckContext& ctx) {
    CheckRecord rec;
    const std::vector<std::vector<double>> phis = {
        {0.0, 0.0, 1.0},         // t^2
        {0.0, 0.0, 3.0, -2.0}};  // 3t^2 - 2t^3
    bool any = false;
    double worst = 0.0;
    for (int p : valid_p(ctx, 2, 2)) {
        auto zs = cycles_of_dim(ctx, 2 * p - 2);
        for (size_t zi = 0; zi < zs.size(); ++zi) {
            any = true;
            ConnectionPath path = family_for_case(ctx, p).path();
            std::vector<CharacterValue> vals;
            vals.push_back(tertiary_character(path, p, zs[zi]));
            for (const auto& phi : phis)
                vals.push_back(tertiary_character(reparametrize(path, phi), p, zs[zi]));
            double spread = 0.0;
            for (size_t a = 0; a < vals.size(); ++a)
                for (size_t b = a + 1; b < vals.size(); ++b)
                    spread = std::max(spread, modz_distance(vals[a].raw, vals[b].raw));
            rec.residuals[rkey("spread", p, int(zi))] = spread;
            for (const auto& v : vals)
                rec.values.push_back(value_record(zs[zi], p, std::nullopt, v));
            worst = std::max(worst, spread);
        }
    }
    if (!any) {
        rec.status = "fail";
        rec.message = "no cycles of dimension 2p-2 for any requested p";
        return rec;
    }
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord check_variational_consistency(const CheckContext& ctx) {
    CheckRecord rec;
    int n = ctx.scenario.chart.dim;
    auto ps = valid_p(ctx, 2, 2);
    if (ps.empty()) {
        rec.status = "fail";
        rec.message = "no usable p: need p >= 2 and 2p-2 <= dim";
        return rec;
    }
    ConnectionSheet sheet = family_for_case(ctx, 0).sheet;
    double flat = sheet_flat_residual(sheet);
    rec.residuals["flatness"] = flat;
    bool flat_mode = flat <= 1e-10;
    double worst = 0.0;
    bool records_p2 = false;
    for (int p : ps) {
        if (flat_mode) {
            double v = sup_norm(variational_integrand(sheet, p, 0.5));
            rec.residuals[rkey("flat_integrand", p)] = v;
            worst = std::max(worst, v);
            if (p == 2) records_p2 = true;
        } else {
            if (2 * p - 1 > n) continue;  // finite differences need the eta form
            const double h = 1e-3;
            for (double s : {0.35, 0.65}) {
                MatrixValuedForm v = variational_integrand(sheet, p, s);
                MatrixValuedForm fd = scaled(
                    1.0 / (2.0 * h),
                    sub(fiber_transgression(path_at_s(sheet, s + h), p).form,
                        fiber_transgression(path_at_s(sheet, s - h), p).form));
                double scale = std::max(sup_norm(fd), 1e-12);
                double rel = sup_norm(sub(v, fd)) / scale;
                auto& slot = rec.residuals[rkey("fd_rel", p)];
                slot = std::max(slot, rel);
                worst = std::max(worst, rel);
            }
        }
    }
    if (worst > ctx.tol)
        rec.status = "fail";
    else
        rec.status = (flat_mode && records_p2) ? "finding" : "pass";
    return rec;
}

CheckRecord check_rigidity_sweep(const CheckContext& ctx) {
    CheckRecord rec;
    std::vector<double> grid = ctx.scenario.s_grid;
    if (grid.empty()) grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    ConnectionSheet sheet = family_for_case(ctx, 0).sheet;
    bool any = false;
    double worst_assert = 0.0;
    bool p2_seen = false;
    for (int p : valid_p(ctx, 2, 2)) {
        auto zs = cycles_of_dim(ctx, 2 * p - 2);
        if (zs.empty()) continue;
        any = true;
        RigiditySweepReport r = rigidity_sweep(sheet, p, zs, grid, ctx.tol);
        rec.residuals[rkey("spread", p)] = r.max_spread_modz;
        rec.residuals[rkey("dbeta_variation", p)] = r.dbeta_variation;
        for (const auto& e : r.values) {
            ValueRecord v;
            v.cycle = e.cycle_axes;
            v.p = p;
            v.s = e.s;
            v.raw = e.value.raw;
            v.reduced = e.value.value;
            rec.values.push_back(std::move(v));
        }
        if (r.asserted)
            worst_assert = std::max(worst_assert, r.max_spread_modz);
        else
            p2_seen = true;
    }
    if (!any) {
        rec.status = "fail";
        rec.message = "no cycles of dimension 2p-2 for any requested p";
        return rec;
    }
    if (worst_assert > ctx.tol)
        rec.status = "fail";
    else
        rec.status = p2_seen ? "finding" : "pass";
    return rec;
}

CheckRecord check_holonomy_crosscheck(const CheckContext& ctx) {
    CheckRecord rec;
    int steps = 256;
    if (ctx.spec.params.contains("steps")) {
        if (!ctx.spec.params["steps"].is_number_integer())
            throw SchemaError("checks.params.steps", "steps must be an integer");
        steps = ctx.spec.params["steps"].get<int>();
    }
    for (const auto& [key, v] : ctx.spec.params.items()) {
        (void)v;
        if (key != "steps")
            throw SchemaError("checks.params." + key, "unknown check parameter");
    }
    Connection c = family_for_case(ctx, 0).connection();
    auto [flat, fres] = is_flat(c, 1e-10);
    rec.residuals["flatness"] = fres;
    if (!flat) {
        rec.status = "fail";
        rec.message = "holonomy cross-check needs a flat connection";
        return rec;
    }
    auto loops = cycles_of_dim(ctx, 1);
    if (loops.empty()) {
        for (int ax = 1; ax <= ctx.scenario.chart.dim; ++ax) {
            CycleSpec z;
            z.axes = {ax};
            loops.push_back(z);
        }
    }
    double worst = 0.0, worst_conv = 0.0;
    for (size_t zi = 0; zi < loops.size(); ++zi) {
        const auto& z = loops[zi];
        std::vector<double> bp = z.basepoint;
        bp.resize(size_t(ctx.scenario.chart.dim), 0.0);
        Mat u = holonomy(c, z.axes[0], bp, steps);
        Mat uh = holonomy(c, z.axes[0], bp, std::max(16, steps / 2));
        worst_conv = std::max(worst_conv, (u - uh).cwiseAbs().maxCoeff());
        Complex det = u.determinant();
        // value = -(i/2pi) log det(holonomy), the frozen sign convention
        Complex logdet = std::log(det);
        Complex oracle = Complex(0.0, -1.0 / kTwoPi) * logdet;
        CharacterValue cv = character_of_connection(c, 1, z);
        double d = modz_distance(cv.raw, oracle);
        rec.residuals[rkey("holonomy", 1, int(zi))] = d;
        rec.values.push_back(value_record(z, 1, std::nullopt, cv));
        worst = std::max(worst, d);
    }
    rec.residuals["rk4_step_doubling"] = worst_conv;
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord check_period_integrality(const CheckContext& ctx) {
    CheckRecord rec;
    int n = ctx.scenario.chart.dim;
    if (n < 2) {
        rec.status = "fail";
        rec.message = "period integrality needs dim >= 2";
        return rec;
    }
    Connection c = family_for_case(ctx, 0).connection();
    MatrixValuedForm c1 = chern_form(c, 1);
    double worst = 0.0;
    int zi = 0;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            CycleSpec z;
            z.axes = {a, b};
            Complex flux = integrate_over_subtorus(c1, z);
            double dev = std::abs(flux - Complex(std::round(flux.real()), 0.0));
            rec.residuals[rkey("flux", 1, zi)] = dev;
            rec.residuals[rkey("flux_int", 1, zi)] = std::round(flux.real());
            worst = std::max(worst, dev);
            ++zi;
        }
    }
    rec.status = worst <= ctx.tol ? "pass" : "fail";
    return rec;
}

CheckRecord dispatch_check(const CheckContext& ctx) {
    const std::string& name = ctx.spec.name;
    if (name == "identity_suite") return check_identity_suite(ctx);
    if (name == "chern_oracle") return check_chern_oracle(ctx);
    if (name == "transgression_stokes") return check_transgression_stokes(ctx);
    if (name == "flat_eta_vanishing") return check_flat_eta_vanishing(ctx);
    if (name == "beta_exactness") return check_beta_exactness(ctx);
    if (name == "character_difference") return check_character_difference(ctx);
    if (name == "endpoint_rigidity") return check_endpoint_rigidity(ctx);
    if (name == "tertiary_character") return check_tertiary_character(ctx);
    if (name == "reparametrization_invariance")
        return check_reparametrization_invariance(ctx);
    if (name == "variational_consistency") return check_variational_consistency(ctx);
    if (name == "rigidity_sweep") return check_rigidity_sweep(ctx);
    if (name == "holonomy_crosscheck") return check_holonomy_crosscheck(ctx);
    if (name == "period_integrality") return check_period_integrality(ctx);
    throw SchemaError("checks.name", "unknown check '" + name + "'");
}

}  // namespace

bool SuiteReport::all_passed() const {
    for (const auto& c : checks)
        if (c.status == "fail") return false;
    return true;
}

SuiteReport run_suite(const Scenario& scenario, const RunOptions& opt) {
    Scenario s = scenario;
    if (opt.seed_override) s.seed = *opt.seed_override;

    SuiteReport rep;
    rep.scenario = scenario_to_json(s);
    for (const auto& spec : s.checks) {
        CheckContext ctx{s, spec, spec.tol * opt.tol_scale};
        auto t0 = std::chrono::steady_clock::now();
        CheckRecord rec;
        try {
            rec = dispatch_check(ctx);
        } catch (const std::exception& e) {
            rec = CheckRecord{};
            rec.status = "fail";
            rec.message = e.what();
        }
        rec.name = spec.name;
        auto t1 = std::chrono::steady_clock::now();
        rec.runtime_ms =
            opt.timings
                ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                : 0;
        rep.checks.push_back(std::move(rec));
    }
    return rep;
}

json report_to_json(const SuiteReport& r) {
    json j;
    j["schema"] = 1;
    j["engine"] = r.engine;
    j["scenario"] = r.scenario;
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json jc;
        jc["name"] = c.name;
        jc["status"] = c.status;
        jc["residuals"] = json::object();
        for (const auto& [k, v] : c.residuals) jc["residuals"][k] = v;
        jc["values"] = json::array();
        for (const auto& v : c.values) {
            json jv;
            jv["cycle"] = v.cycle;
            jv["p"] = v.p;
            if (v.s)
                jv["s"] = *v.s;
            else
                jv["s"] = nullptr;
            jv["raw"] = {v.raw.real(), v.raw.imag()};
            jv["reduced"] = {v.reduced.real(), v.reduced.imag()};
            jc["values"].push_back(jv);
        }
        if (!c.message.empty()) jc["message"] = c.message;
        jc["runtime_ms"] = c.runtime_ms;
        j["checks"].push_back(jc);
    }
    return j;
}

std::string render_report(const json& report) {
    std::ostringstream out;
    auto render_one = [&](const json& rep) {
        std::string name = rep.contains("scenario") && rep["scenario"].contains("name")
                               ? rep["scenario"]["name"].get<std::string>()
                               : "<unnamed>";
        out << "scenario " << name << "\n";
        for (const auto& c : rep["checks"]) {
            double worst = 0.0;
            for (const auto& [k, v] : c["residuals"].items()) {
                (void)k;
                if (v.is_number()) worst = std::max(worst, std::abs(v.get<double>()));
            }
            out << "  [" << c["status"].get<std::string>() << "] "
                << c["name"].get<std::string>();
            if (!c["residuals"].empty()) out << "  (max residual " << worst << ")";
            if (c.contains("message"))
                out << "  -- " << c["message"].get<std::string>();
            out << "\n";
        }
    };
    if (report.is_array())
        for (const auto& rep : report) render_one(rep);
    else
        render_one(report);
    return out.str();
}

}  // namespace chernweil
