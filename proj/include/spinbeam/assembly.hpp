#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinbeam/beam.hpp"
#include "spinbeam/block.hpp"
#include "spinbeam/rigid.hpp"

namespace spinbeam {

enum class NodeKind { MainBody, Beam, Rigid, TipMass };
const char* node_kind_name(NodeKind k);

struct AssemblyNode {
    std::string name;
    NodeKind kind = NodeKind::Beam;
    BeamProperties beam;
    std::optional<RayleighDamping> damping;
    RigidBodyProperties rigid;              // rigid, tip mass, main body
    std::vector<MainBodyPort> ports;        // main body only
    std::optional<EquilibriumState> eq;     // set by propagate_equilibrium
};

/// The child's P port is attached to the parent's port; dcm = P_{R_child/R_parent}.
struct AssemblyEdge {
    std::string parent;
    std::string parent_port;  // "C" for beams and rigid bodies, a port label for the main body
    std::string child;
    Eigen::Matrix3d dcm = Eigen::Matrix3d::Identity();
};

enum class Closure { Clamp, Free };

class AssemblyGraph {
public:
    void add_main_body(const std::string& name, const RigidBodyProperties& props, const std::vector<MainBodyPort>& ports);
    /// Adds a series chain of n_elements equal beam elements. Returns the name of the last element,
    /// which is also accepted as `name` in attach().
    std::string add_beam(const std::string& name, const BeamProperties& props, int n_elements = 1,
                         const std::optional<RayleighDamping>& damping = std::nullopt);
    void add_rigid(const std::string& name, const RigidBodyProperties& props);
    void add_tip_mass(const std::string& name, double m, const Eigen::Matrix3d& J = Eigen::Matrix3d::Zero());
    void attach(const std::string& parent, const std::string& parent_port, const std::string& child,
                const Eigen::Matrix3d& dcm = Eigen::Matrix3d::Identity());

    /// Root point position in the root frame (only for a beam or rigid root clamped on the spin axis frame).
    void set_root_offset(const Eigen::Vector3d& x) { root_offset_ = x; }
    const Eigen::Vector3d& root_offset() const { return root_offset_; }

    /// Throws TopologyError unless the graph is a tree with one root and every port used once.
    void validate() const;
    const std::string& root() const;
    std::vector<const AssemblyEdge*> children(const std::string& node) const;
    const AssemblyEdge* parent_edge(const std::string& node) const;
    /// Nodes parent-first.
    std::vector<std::string> topological_order() const;

    AssemblyNode& node(const std::string& name);
    const AssemblyNode& node(const std::string& name) const;
    bool has_node(const std::string& name) const;
    const std::vector<AssemblyNode>& nodes() const { return nodes_; }
    std::vector<AssemblyNode>& nodes() { return nodes_; }
    const std::vector<AssemblyEdge>& edges() const { return edges_; }

private:
    std::string resolve(const std::string& name) const;
    std::vector<AssemblyNode> nodes_;
    std::vector<AssemblyEdge> edges_;
    std::map<std::string, std::string> aliases_;
    Eigen::Vector3d root_offset_ = Eigen::Vector3d::Zero();
    mutable std::string root_cache_;
};

/// Forward pass for velocities and positions, backward pass for wrenches.
/// Throws ModelInvalid naming the beam whose static deformation is out of bounds.
AssemblyGraph propagate_equilibrium(const AssemblyGraph& graph, double omega, const EquilibriumLimits& limits = {});

/// Appends child and closes {parent motion -> child P motion, child P wrench -> parent wrench}.
TitopBlock connect(const TitopBlock& parent, const std::string& parent_port, const TitopBlock& child,
                   const std::string& child_port, const Eigen::Matrix3d& dcm);

/// Clamp removes the 18 motion inputs at the port, free removes the 6 wrench inputs.
TitopBlock apply_boundary(const TitopBlock& block, Closure closure, const std::string& port);

struct AssembleOptions {
    bool clamp_root = true;    // beam or rigid root only
    bool free_leaves = true;   // open C ports of beams and rigid bodies
    bool free_main_body = false;
};

/// Assembles a propagated graph. Main-body external wrench input is kept unless free_main_body.
TitopBlock assemble(const AssemblyGraph& propagated, const AssembleOptions& options = {});

struct UncertainScalar {
    double nominal = 0.0;
    double r = 0.0;      // relative half-range
    double delta = 0.0;  // in [-1, 1]

    double value() const { return realize(delta); }
    double realize(double d) const;
};

struct DeltaEntry {
    std::string name;
    int repetitions = 0;  // rank of the first-order sensitivity of [A B; C D]
    std::vector<std::pair<std::string, int>> reference;  // per-block occurrence counts of a minimal LFR, metadata only
};

struct DeltaStructure {
    std::vector<DeltaEntry> entries;
};

/// Factory over normalized uncertainties. Parameter 0 is the spin rate, then one per uncertain mass.
class ParametricFamily {
public:
    ParametricFamily(AssemblyGraph graph, UncertainScalar omega, std::vector<std::pair<std::string, UncertainScalar>> masses,
                     AssembleOptions options, EquilibriumLimits limits);

    std::size_t n_parameters() const { return 1 + masses_.size(); }
    std::vector<std::string> parameter_names() const;
    /// Throws InvalidParameter when a |delta| exceeds 1 or the size is wrong.
    TitopBlock operator()(const std::vector<double>& delta) const;
    AssemblyGraph realize_graph(const std::vector<double>& delta) const;
    DeltaStructure delta_structure() const;

private:
    AssemblyGraph graph_;
    UncertainScalar omega_;
    std::vector<std::pair<std::string, UncertainScalar>> masses_;
    AssembleOptions options_;
    EquilibriumLimits limits_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<double>, std::shared_ptr<const TitopBlock>> cache_;
};

std::shared_ptr<ParametricFamily> build_parametric_family(const AssemblyGraph& graph, const UncertainScalar& omega,
                                                          const std::vector<std::pair<std::string, UncertainScalar>>& masses,
                                                          const AssembleOptions& options = {},
                                                          const EquilibriumLimits& limits = {});

}  // namespace spinbeam
