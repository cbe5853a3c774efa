#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chernweil/errors.hpp"
#include "chernweil/scenario.hpp"

namespace {

using nlohmann::json;

void write_output(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) return;
    std::ofstream out(out_path);
    if (!out) throw chernweil::ParseError("cannot write report to " + out_path);
    out << text;
}

int status_of(const chernweil::SuiteReport& rep) { return rep.all_passed() ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chern-Weil / Chern-Simons transgression calculus on flat tori"};
    app.require_subcommand(1);

    double tol_scale = 1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_path;
    bool timings = false;
    std::string scenario_path;
    std::string report_path;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--tol-scale", tol_scale, "multiply all check tolerances");
        cmd->add_option("--seed", seed, "override the scenario seed")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--out", out_path, "write the JSON report to this path");
        cmd->add_flag("--timings", timings,
                      "record wall-clock runtimes (reports are no longer byte-stable)");
    };

    CLI::App* run = app.add_subcommand("run", "run one scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    add_run_flags(run);

    CLI::App* verify = app.add_subcommand("verify", "run the built-in scenario battery");
    add_run_flags(verify);

    app.add_subcommand("list-generators", "print the scenario generator registry");

    CLI::App* render = app.add_subcommand("render", "render a report JSON as text");
    render->add_option("report", report_path, "report JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        chernweil::RunOptions opt;
        opt.tol_scale = tol_scale;
        if (seed_set) opt.seed_override = seed;
        opt.timings = timings;

        if (run->parsed()) {
            chernweil::Scenario sc = chernweil::load_scenario(scenario_path);
            chernweil::SuiteReport rep = chernweil::run_suite(sc, opt);
            json j = chernweil::report_to_json(rep);
            std::cout << chernweil::render_report(j);
            write_output(j, out_path);
            return status_of(rep);
        }
        if (verify->parsed()) {
            json all = json::array();
            int status = 0;
            for (const auto& sc : chernweil::default_battery()) {
                chernweil::SuiteReport rep = chernweil::run_suite(sc, opt);
                json j = chernweil::report_to_json(rep);
                std::cout << chernweil::render_report(j);
                all.push_back(j);
                status = std::max(status, status_of(rep));
            }
            write_output(all, out_path);
            return status;
        }
        if (app.get_subcommand("list-generators")->parsed()) {
            for (const auto& name : chernweil::generator_names())
                std::cout << name << ": " << chernweil::generator_doc(name) << "\n";
            return 0;
        }
        if (render->parsed()) {
            std::ifstream in(report_path);
            if (!in) throw chernweil::ParseError("cannot open report: " + report_path);
            json j = json::parse(in);
            std::cout << chernweil::render_report(j);
            return 0;
        }
    } catch (const chernweil::SchemaError& e) {
        std::cerr << "schema error at '" << e.key << "': " << e.what() << "\n";
        return 2;
    } catch (const chernweil::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
