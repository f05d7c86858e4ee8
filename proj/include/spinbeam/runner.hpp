#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinbeam/analysis.hpp"
#include "spinbeam/assembly.hpp"
#include "spinbeam/config.hpp"
#include "spinbeam/serialize.hpp"

namespace spinbeam {

/// Directory named by SPINBEAM_OUTPUT_DIR, or the working directory.
std::string output_dir_from_env();

struct RunOverrides {
    std::optional<double> omega;
    std::optional<double> tip_mass;  // applied to every tip mass
};

void apply_overrides(ScenarioConfig& config, const RunOverrides& overrides);

/// Scalar channel of the main-body port, e.g. "Tin2:wdot2".
struct ChannelSelection {
    std::string input_port, output_port;
    ChannelKind input_kind = ChannelKind::Wrench, output_kind = ChannelKind::Motion;
    int input_component = 0, output_component = 0;
};

ChannelSelection parse_channel(const std::string& spec, const std::string& main_body);
/// "log:a:b:n" (a, b > 0) or "lin:a:b:n"; n >= 1 points including both ends.
std::vector<double> parse_grid(const std::string& spec);

/// Propagated graph of the scenario at the given spin rate.
AssemblyGraph scenario_graph(const ScenarioConfig& config, double omega);
/// Closed model for modal analysis (main-body wrench input removed).
TitopBlock scenario_model(const ScenarioConfig& config, double omega, bool keep_main_body_input = false);

CampbellCurve scenario_campbell(const ScenarioConfig& config, double omega_max, int steps,
                                const std::vector<ModeFamily>& families, int modes);
std::vector<ResponsePoint> scenario_freqresp(const ScenarioConfig& config, const std::string& channel,
                                             const std::string& grid);
DeltaStructure scenario_delta_structure(const ScenarioConfig& config);

nlohmann::ordered_json modal_json(const ModalResult& modal, const TitopBlock& model, double omega);
nlohmann::ordered_json equilibrium_json(const AssemblyGraph& propagated, double omega);
nlohmann::ordered_json equilibrium_error_json(const EquilibriumInvalid& e);
nlohmann::ordered_json delta_json(const DeltaStructure& ds);
CsvTable campbell_csv(const CampbellCurve& c);
CsvTable freqresp_csv(const std::vector<ResponsePoint>& points);

/// Runs every analysis of the scenario; returns the written paths in order.
std::vector<std::string> run_scenario(const ScenarioConfig& config, const std::string& out_dir);

}  // namespace spinbeam
