#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinbeam/assembly.hpp"
#include "spinbeam/beam.hpp"
#include "spinbeam/rigid.hpp"

namespace spinbeam {

/// Boom of the spinning spacecraft (rod, l = 50 m).
BeamProperties boom_beam();

/// Boom section with second moments scaled so that S l^2 / J = 1e6; used for the dimensionless tables.
BeamProperties table_beam();

/// Central hub of the spinning spacecraft.
RigidBodyProperties hub_properties();

inline constexpr double kBoomTipMass = 5.0;
inline constexpr double kHubPortOffset = 2.0;
inline const RayleighDamping kBoomDamping{1e-4, 1.2e-3};

/// Beam clamped at [offset, 0, 0] on a frame spinning about z, with an optional point mass at its tip.
struct CantileverSpec {
    BeamProperties beam = table_beam();
    double omega = 0.0;
    double tip_mass = 0.0;
    double offset = 0.0;
    int n_elements = 1;
    std::optional<RayleighDamping> damping;
};

/// Nodes "beam" (or "beam#k" for chains) and "tip".
AssemblyGraph cantilever_graph(const CantileverSpec& spec);
/// Root clamped, tip free or loaded by the mass; no open inputs.
TitopBlock cantilever_model(const CantileverSpec& spec);

/// Hub "hub" with ports C1 (boom1) and C2 (boom2), tip masses "tip1", "tip2".
struct SpacecraftSpec {
    double omega = 0.0;
    double tip_mass = kBoomTipMass;
    int n_elements = 1;
    std::optional<RayleighDamping> damping = kBoomDamping;
};

AssemblyGraph spacecraft_graph(const SpacecraftSpec& spec);

/// Builtin scenario names: tables1..tables4, thor-like, fig7.
std::vector<std::string> builtin_scenario_names();
/// Config document of a builtin scenario; throws SchemaError for unknown names.
std::string builtin_scenario_text(const std::string& name);

}  // namespace spinbeam
