// spinbeam command-line front end. Files go to $SPINBEAM_OUTPUT_DIR (default: working directory).
// Exit codes: 0 ok, 2 schema/topology/usage, 3 equilibrium invalid, 4 numerical failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinbeam/errors.hpp"
#include "spinbeam/runner.hpp"
#include "spinbeam/scenarios.hpp"
#include "spinbeam/tables.hpp"

using namespace spinbeam;

namespace {

int report(int code, const std::string& kind, const std::string& message,
           const nlohmann::ordered_json& extra = nlohmann::ordered_json()) {
    nlohmann::ordered_json j;
    j["status"] = "error";
    j["exit_code"] = code;
    j["kind"] = kind;
    j["message"] = message;
    if (!extra.is_null()) j["details"] = extra;
    std::cerr << to_json_text(j);
    return code;
}

std::string out_path(const std::string& file) {
    const std::string dir = output_dir_from_env();
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / file).string();
}

void announce(const std::string& path) { std::cout << path << "\n"; }

ModeFamily parse_family(const std::string& s) {
    if (s == "in-plane") return ModeFamily::InPlane;
    if (s == "out-of-plane") return ModeFamily::OutOfPlane;
    if (s == "traction") return ModeFamily::Traction;
    if (s == "torsion") return ModeFamily::Torsion;
    if (s == "rigid") return ModeFamily::Rigid;
    throw SchemaError("unknown mode family '" + s + "' (in-plane, out-of-plane, traction, torsion, rigid)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linearized models of spinning rigid bodies and flexible beams"};
    app.require_subcommand(1);

    std::string config;
    std::optional<double> omega, tip_mass;
    auto* run = app.add_subcommand("run", "run every analysis of a scenario file or builtin");
    run->add_option("config", config, "scenario file or builtin name")->required();
    run->add_option("--omega", omega, "override the nominal spin rate (rad/s)");
    run->add_option("--tip-mass", tip_mass, "override every tip mass (kg)");

    std::string table_kind;
    int elements = 0, oracle_elements = 40;
    bool oracle = false;
    auto* table = app.add_subcommand("table", "generate one of the validation tables");
    table->add_option("kind", table_kind, "T1, T2, T3 or T4")->required();
    table->add_option("--elements", elements, "TITOP elements per beam (T4: chain length)")->check(CLI::Range(1, 200));
    table->add_flag("--oracle", oracle, "add finite-element oracle columns");
    table->add_option("--oracle-elements", oracle_elements, "finite elements for the oracle")->check(CLI::Range(2, 2000));

    std::string scenario;
    double omega_max = 0.0;
    int steps = 0, modes = 2;
    std::vector<std::string> families{"in-plane", "out-of-plane"};
    auto* campbell = app.add_subcommand("campbell", "sweep modal frequencies over spin rate");
    campbell->add_option("scenario", scenario, "scenario file or builtin name")->required();
    campbell->add_option("--omega-max", omega_max, "largest spin rate (rad/s)")->required();
    campbell->add_option("--steps", steps, "grid intervals")->required()->check(CLI::Range(1, 100000));
    campbell->add_option("--families", families, "families to track");
    campbell->add_option("--modes", modes, "branches per family")->check(CLI::Range(1, 50));
    campbell->add_option("--tip-mass", tip_mass, "override every tip mass (kg)");

    std::string channel = "Tin2:wdot2", grid = "log:1e-3:1e3:400";
    auto* freqresp = app.add_subcommand("freqresp", "scalar frequency response of the main body");
    freqresp->add_option("scenario", scenario, "scenario file or builtin name")->required();
    freqresp->add_option("--channel", channel, "input:output, e.g. Tin2:wdot2");
    freqresp->add_option("--grid", grid, "log:a:b:n or lin:a:b:n (rad/s)");
    freqresp->add_option("--omega", omega, "override the nominal spin rate (rad/s)");
    freqresp->add_option("--tip-mass", tip_mass, "override every tip mass (kg)");

    auto* grammar = app.add_subcommand("grammar", "print the scenario file grammar");
    auto* list = app.add_subcommand("list", "list builtin scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(2, "usage", e.what());
    }

    try {
        if (*grammar) {
            std::cout << scenario_grammar();
        } else if (*list) {
            for (const auto& n : builtin_scenario_names()) std::cout << n << "\n";
        } else if (*run) {
            ScenarioConfig c = resolve_scenario(config);
            apply_overrides(c, {omega, tip_mass});
            for (const auto& p : run_scenario(c, output_dir_from_env())) announce(p);
        } else if (*table) {
            TableOptions o;
            o.elements = elements;
            o.oracle = oracle;
            o.oracle_elements = oracle_elements;
            const TableKind k = parse_table_kind(table_kind);
            const std::string p = out_path(std::string("table_") + table_kind_name(k) + ".csv");
            write_text_file(p, to_csv(generate_table(k, o)));
            announce(p);
        } else if (*campbell) {
            ScenarioConfig c = resolve_scenario(scenario);
            apply_overrides(c, {std::nullopt, tip_mass});
            std::vector<ModeFamily> fam;
            for (const auto& f : families) fam.push_back(parse_family(f));
            const CampbellCurve curve = scenario_campbell(c, omega_max, steps, fam, modes);
            const std::string p = out_path(c.output_prefix + "_campbell.csv");
            write_text_file(p, to_csv(campbell_csv(curve)));
            if (!curve.diagnostic.empty()) std::cerr << "campbell: " << curve.diagnostic << "\n";
            announce(p);
        } else if (*freqresp) {
            ScenarioConfig c = resolve_scenario(scenario);
            apply_overrides(c, {omega, tip_mass});
            const std::string p = out_path(c.output_prefix + "_freqresp.csv");
            write_text_file(p, to_csv(freqresp_csv(scenario_freqresp(c, channel, grid))));
            announce(p);
        }
    } catch (const SchemaError& e) {
        return report(2, "schema", e.what());
    } catch (const TopologyError& e) {
        return report(2, "topology", e.what());
    } catch (const ChannelError& e) {
        return report(2, "channel", e.what());
    } catch (const InvalidParameter& e) {
        return report(2, "invalid-parameter", e.what());
    } catch (const EquilibriumInvalid& e) {
        return report(3, "equilibrium-invalid", e.what(), equilibrium_error_json(e));
    } catch (const ModelInvalid& e) {
        return report(3, "model-invalid", e.what());
    } catch (const NumericalFailure& e) {
        return report(4, "numerical-failure", e.what());
    } catch (const std::exception& e) {
        return report(4, "internal", e.what());
    }
    return 0;
}
