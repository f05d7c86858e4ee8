#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinbeam/analysis.hpp"
#include "spinbeam/assembly.hpp"

namespace spinbeam {

struct BeamSpec {
    std::string name;
    BeamProperties props;
    int elements = 1;
    std::optional<RayleighDamping> damping;
};

struct RigidSpec {
    std::string name;
    RigidBodyProperties props;
};

struct TipMassSpec {
    std::string name;
    double m = 0.0;
    Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
};

struct MainBodySpec {
    std::string name;
    RigidBodyProperties props;
    std::vector<MainBodyPort> ports;
};

struct EdgeSpec {
    std::string parent, port = "C", child;
    Eigen::Matrix3d dcm = Eigen::Matrix3d::Identity();
};

enum class AnalysisType { Modal, EquilibriumReport, Table, Campbell, FreqResp, DeltaStructure };

struct AnalysisSpec {
    AnalysisType type = AnalysisType::Modal;
    // table
    std::string table_kind;
    int elements = 0;          // 0 selects the table default
    bool oracle = false;
    int oracle_elements = 40;
    // campbell
    double omega_max = 0.0;
    int steps = 0;
    std::vector<ModeFamily> families{ModeFamily::InPlane, ModeFamily::OutOfPlane};
    int modes = 2;
    // freqresp
    std::string channel;
    std::string grid;
};

struct UncertainMassSpec {
    std::string node;
    double r = 0.0;
};

struct ScenarioConfig {
    std::string name;
    std::vector<BeamSpec> beams;
    std::vector<RigidSpec> rigid_bodies;
    std::vector<TipMassSpec> tip_masses;
    std::optional<MainBodySpec> main_body;
    std::vector<EdgeSpec> edges;
    Eigen::Vector3d root_offset = Eigen::Vector3d::Zero();
    double omega = 0.0;
    double r_omega = 0.0;
    std::vector<UncertainMassSpec> uncertain_masses;
    std::vector<AnalysisSpec> analyses;
    std::string output_prefix;  // defaults to name
};

/// Validates the document against the scenario grammar; unknown keys, wrong types and
/// out-of-range values raise SchemaError naming the JSON pointer.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);
/// A builtin name or a path to a config file.
ScenarioConfig resolve_scenario(const std::string& name_or_path);

/// Nodes and edges of the scenario (equilibrium not yet propagated).
AssemblyGraph build_graph(const ScenarioConfig& config);

/// Grammar summary printed by the CLI.
std::string scenario_grammar();

}  // namespace spinbeam
