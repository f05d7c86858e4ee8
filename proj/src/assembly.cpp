#include "spinbeam/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "spinbeam/errors.hpp"

namespace spinbeam {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::MainBody: return "main_body";
        case NodeKind::Beam: return "beam";
        case NodeKind::Rigid: return "rigid";
        case NodeKind::TipMass: return "tip_mass";
    }
    return "?";
}

void AssemblyGraph::add_main_body(const std::string& name, const RigidBodyProperties& props,
                                  const std::vector<MainBodyPort>& ports) {
    if (has_node(name)) throw TopologyError("duplicate node '" + name + "'");
    props.validate();
    std::set<std::string> seen;
    for (const auto& p : ports)
        if (p.name.empty() || p.name == "B" || !seen.insert(p.name).second)
            throw TopologyError("main body '" + name + "': port labels must be unique, non-empty and not 'B'");
    AssemblyNode n;
    n.name = name;
    n.kind = NodeKind::MainBody;
    n.rigid = props;
    n.ports = ports;
    nodes_.push_back(n);
    root_cache_.clear();
}

std::string AssemblyGraph::add_beam(const std::string& name, const BeamProperties& props, int n_elements,
                                    const std::optional<RayleighDamping>& damping) {
    if (n_elements < 1) throw InvalidParameter("beam '" + name + "': n_elements must be >= 1");
    if (has_node(name) || aliases_.count(name)) throw TopologyError("duplicate node '" + name + "'");
    props.validate();
    const BeamProperties elem = props.with_length(props.l / n_elements);
    std::string prev;
    for (int k = 1; k <= n_elements; ++k) {
        AssemblyNode n;
        n.name = n_elements == 1 ? name : name + "#" + std::to_string(k);
        if (has_node(n.name)) throw TopologyError("duplicate node '" + n.name + "'");
        n.kind = NodeKind::Beam;
        n.beam = elem;
        n.damping = damping;
        nodes_.push_back(n);
        if (!prev.empty()) edges_.push_back({prev, "C", n.name, Eigen::Matrix3d::Identity()});
        prev = n.name;
    }
    if (n_elements > 1) aliases_[name] = prev;
    root_cache_.clear();
    return prev;
}

void AssemblyGraph::add_rigid(const std::string& name, const RigidBodyProperties& props) {
    if (has_node(name)) throw TopologyError("duplicate node '" + name + "'");
    props.validate();
    AssemblyNode n;
    n.name = name;
    n.kind = NodeKind::Rigid;
    n.rigid = props;
    nodes_.push_back(n);
    root_cache_.clear();
}

void AssemblyGraph::add_tip_mass(const std::string& name, double m, const Eigen::Matrix3d& J) {
    if (has_node(name)) throw TopologyError("duplicate node '" + name + "'");
    AssemblyNode n;
    n.name = name;
    n.kind = NodeKind::TipMass;
    n.rigid.m = m;
    n.rigid.J_A = J;
    n.rigid.validate();
    nodes_.push_back(n);
    root_cache_.clear();
}

std::string AssemblyGraph::resolve(const std::string& name) const {
    auto it = aliases_.find(name);
    return it == aliases_.end() ? name : it->second;
}

void AssemblyGraph::attach(const std::string& parent, const std::string& parent_port, const std::string& child,
                           const Eigen::Matrix3d& dcm) {
    const std::string p = resolve(parent);
    // a chain is attached by its first element
    std::string c = child;
    if (aliases_.count(child)) c = child + "#1";
    if (!has_node(p)) throw TopologyError("unknown parent node '" + parent + "'");
    if (!has_node(c)) throw TopologyError("unknown child node '" + child + "'");
    dcm_transport(dcm);  // validates
    edges_.push_back({p, parent_port, c, dcm});
    root_cache_.clear();
}

bool AssemblyGraph::has_node(const std::string& name) const {
    return std::any_of(nodes_.begin(), nodes_.end(), [&](const AssemblyNode& n) { return n.name == name; });
}

AssemblyNode& AssemblyGraph::node(const std::string& name) {
    const std::string r = resolve(name);
    for (auto& n : nodes_)
        if (n.name == r) return n;
    throw TopologyError("unknown node '" + name + "'");
}

const AssemblyNode& AssemblyGraph::node(const std::string& name) const {
    const std::string r = resolve(name);
    for (const auto& n : nodes_)
        if (n.name == r) return n;
    throw TopologyError("unknown node '" + name + "'");
}

std::vector<const AssemblyEdge*> AssemblyGraph::children(const std::string& name) const {
    std::vector<const AssemblyEdge*> out;
    for (const auto& e : edges_)
        if (e.parent == name) out.push_back(&e);
    return out;
}

const AssemblyEdge* AssemblyGraph::parent_edge(const std::string& name) const {
    for (const auto& e : edges_)
        if (e.child == name) return &e;
    return nullptr;
}

void AssemblyGraph::validate() const {
    if (nodes_.empty()) throw TopologyError("empty assembly");
    std::map<std::string, int> n_parents;
    std::set<std::pair<std::string, std::string>> used_ports;
    for (const auto& e : edges_) {
        const AssemblyNode& pn = node(e.parent);
        const AssemblyNode& cn = node(e.child);
        if (e.parent == e.child) throw TopologyError("self loop at '" + e.parent + "'");
        if (++n_parents[e.child] > 1) throw TopologyError("node '" + e.child + "' has more than one parent (loop)");
        if (cn.kind == NodeKind::MainBody) throw TopologyError("main body '" + e.child + "' cannot be a child");
        if (pn.kind == NodeKind::TipMass) throw TopologyError("tip mass '" + e.parent + "' has no child port");
        if (pn.kind == NodeKind::MainBody) {
            const bool ok = std::any_of(pn.ports.begin(), pn.ports.end(),
                                        [&](const MainBodyPort& p) { return p.name == e.parent_port; });
            if (!ok) throw TopologyError("main body '" + e.parent + "' has no port '" + e.parent_port + "'");
        } else if (e.parent_port != "C") {
            throw TopologyError("node '" + e.parent + "' only has port 'C'");
        }
        if (!used_ports.insert({e.parent, e.parent_port}).second)
            throw TopologyError("port '" + e.parent + "." + e.parent_port + "' is used twice");
    }
    std::vector<std::string> roots;
    for (const auto& n : nodes_)
        if (!n_parents.count(n.name)) roots.push_back(n.name);
    if (roots.size() != 1) {
        std::ostringstream os;
        os << "assembly must have exactly one root, found " << roots.size();
        throw TopologyError(os.str());
    }
    if (node(roots[0]).kind == NodeKind::TipMass) throw TopologyError("a tip mass cannot be the root");
    // reachability rules out detached cycles
    std::set<std::string> seen{roots[0]};
    std::deque<std::string> q{roots[0]};
    while (!q.empty()) {
        const std::string cur = q.front();
        q.pop_front();
        for (const auto* e : children(cur))
            if (seen.insert(e->child).second) q.push_back(e->child);
    }
    if (seen.size() != nodes_.size()) throw TopologyError("assembly contains a kinematic loop or a detached node");
    root_cache_ = roots[0];
}

const std::string& AssemblyGraph::root() const {
    if (root_cache_.empty()) validate();
    return root_cache_;
}

std::vector<std::string> AssemblyGraph::topological_order() const {
    std::vector<std::string> order{root()};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto* e : children(order[i])) order.push_back(e->child);
    return order;
}

namespace {

Matrix6d wrench_dcm(const Eigen::Matrix3d& dcm) { return dcm_transport(dcm).wrench; }

// Point C of a node relative to its P point, in the node frame.
Eigen::Vector3d port_offset(const AssemblyNode& n, const std::string& port) {
    switch (n.kind) {
        case NodeKind::Beam: return Eigen::Vector3d(n.beam.l, 0.0, 0.0);
        case NodeKind::Rigid: return n.rigid.PC;
        case NodeKind::MainBody:
            for (const auto& p : n.ports)
                if (p.name == port) return p.BC;
            break;
        case NodeKind::TipMass: break;
    }
    throw TopologyError("node '" + n.name + "' has no port '" + port + "'");
}

}  // namespace

AssemblyGraph propagate_equilibrium(const AssemblyGraph& graph, double omega, const EquilibriumLimits& limits) {
    if (!std::isfinite(omega)) throw InvalidParameter("spin rate must be finite");
    AssemblyGraph g = graph;
    g.validate();
    const auto order = g.topological_order();

    // forward: kinematics at every P point
    for (const auto& name : order) {
        AssemblyNode& n = g.node(name);
        EquilibriumState k;
        const AssemblyEdge* pe = g.parent_edge(name);
        if (!pe) {
            k.omega_P = Eigen::Vector3d(0.0, 0.0, omega);
            if (n.kind != NodeKind::MainBody) k.x_P = g.root_offset();
            k.v_P = k.omega_P.cross(k.x_P);
        } else {
            const AssemblyNode& p = g.node(pe->parent);
            const EquilibriumState& pk = *p.eq;
            const Eigen::Vector3d d = port_offset(p, pe->parent_port);
            const Eigen::Vector3d xc = pk.x_P + d;
            const Eigen::Vector3d vc = pk.v_P + pk.omega_P.cross(d);
            const Eigen::Matrix3d Rt = pe->dcm.transpose();
            k.x_P = Rt * xc;
            k.v_P = Rt * vc;
            k.omega_P = Rt * pk.omega_P;
            k.Theta_P = Rt * pk.Theta_P;
        }
        n.eq = k;
    }

    // backward: wrenches from the leaves to the root
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        AssemblyNode& n = g.node(*it);
        EquilibriumState& e = *n.eq;
        e.W_C.setZero();
        for (const auto* c : g.children(*it)) {
            if (n.kind == NodeKind::MainBody) continue;
            e.W_C += wrench_dcm(c->dcm) * (*g.node(c->child).eq->W_P);
        }
        switch (n.kind) {
            case NodeKind::Beam: {
                EquilibriumState s = compute_equilibrium(n.beam, e, limits);
                if (!s.valid)
                    throw EquilibriumInvalid("beam '" + n.name + "': static deformation out of bounds (" + s.diagnostic + ")",
                                             n.name, *s.q_f, n.beam.l);
                e = s;
                break;
            }
            case NodeKind::Rigid:
            case NodeKind::TipMass:
                e.W_P = rigid_equilibrium_wrench(n.rigid, e.v_P, e.omega_P, e.W_C);
                e.valid = true;
                break;
            case NodeKind::MainBody:
                e.W_P = Vector6d::Zero();
                e.valid = true;
                break;
        }
    }
    return g;
}

TitopBlock connect(const TitopBlock& parent, const std::string& parent_port, const TitopBlock& child,
                   const std::string& child_port, const Eigen::Matrix3d& dcm) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ChannelError("connect: " + what);
    };
    need(parent.has_output(parent_port, ChannelKind::Motion), "no open motion output at '" + parent_port + "'");
    need(parent.has_input(parent_port, ChannelKind::Wrench), "no open wrench input at '" + parent_port + "'");
    need(child.has_input(child_port, ChannelKind::Motion), "no open motion input at '" + child_port + "'");
    need(child.has_output(child_port, ChannelKind::Wrench), "no wrench output at '" + child_port + "'");
    const DcmTransport t = dcm_transport(dcm);
    const TitopBlock joint = append(parent, child, parent.name);
    return close_feedback(joint, {{child_port, ChannelKind::Motion, parent_port, ChannelKind::Motion, t.motion.transpose()},
                                  {parent_port, ChannelKind::Wrench, child_port, ChannelKind::Wrench, t.wrench}});
}

TitopBlock apply_boundary(const TitopBlock& block, Closure closure, const std::string& port) {
    const ChannelKind k = closure == Closure::Clamp ? ChannelKind::Motion : ChannelKind::Wrench;
    if (!block.has_input(port, k))
        throw ChannelError(std::string(closure == Closure::Clamp ? "clamp" : "free") + ": port '" + port +
                           "' is not open (already connected or closed)");
    return remove_input(block, port, k);
}

namespace {

TitopBlock node_block(const AssemblyNode& n) {
    if (!n.eq) throw ModelInvalid("node '" + n.name + "': equilibrium not propagated");
    const EquilibriumState& e = *n.eq;
    switch (n.kind) {
        case NodeKind::MainBody: return build_main_body(n.rigid, n.ports, e.omega_P, n.name);
        case NodeKind::Beam: return build_titop_beam(n.beam, e, n.damping, n.name);
        case NodeKind::Rigid: return build_rigid_titop(n.rigid, e.v_P, e.omega_P, n.name);
        case NodeKind::TipMass: return reduce_one_port(build_rigid_titop(n.rigid, e.v_P, e.omega_P, n.name));
    }
    throw TopologyError("unknown node kind");
}

}  // namespace

TitopBlock assemble(const AssemblyGraph& g, const AssembleOptions& options) {
    const auto order = g.topological_order();
    const AssemblyNode& rn = g.node(order.front());
    TitopBlock model = node_block(rn);
    model.name = "assembly";
    for (std::size_t i = 1; i < order.size(); ++i) {
        const AssemblyNode& n = g.node(order[i]);
        const AssemblyEdge* pe = g.parent_edge(n.name);
        model = connect(model, pe->parent + "." + pe->parent_port, node_block(n), n.name + ".P", pe->dcm);
    }
    if (rn.kind != NodeKind::MainBody && options.clamp_root) model = apply_boundary(model, Closure::Clamp, rn.name + ".P");
    if (rn.kind == NodeKind::MainBody && options.free_main_body)
        model = apply_boundary(model, Closure::Free, rn.name + ".B");
    if (options.free_leaves)
        for (const auto& n : g.nodes())
            if ((n.kind == NodeKind::Beam || n.kind == NodeKind::Rigid) && g.children(n.name).empty())
                model = apply_boundary(model, Closure::Free, n.name + ".C");
    model.check();
    return model;
}

double UncertainScalar::realize(double d) const {
    if (!(std::abs(d) <= 1.0)) throw InvalidParameter("normalized uncertainty outside [-1, 1]");
    if (!(r >= 0.0)) throw InvalidParameter("relative range must be non-negative");
    return nominal * (1.0 + r * d);
}

ParametricFamily::ParametricFamily(AssemblyGraph graph, UncertainScalar omega,
                                   std::vector<std::pair<std::string, UncertainScalar>> masses, AssembleOptions options,
                                   EquilibriumLimits limits)
    : graph_(std::move(graph)), omega_(omega), masses_(std::move(masses)), options_(options), limits_(limits) {
    graph_.validate();
    for (const auto& [name, u] : masses_) {
        const NodeKind k = graph_.node(name).kind;
        if (k != NodeKind::TipMass && k != NodeKind::Rigid)
            throw InvalidParameter("uncertain mass '" + name + "' is not a rigid body or tip mass");
        u.realize(0.0);
    }
}

std::vector<std::string> ParametricFamily::parameter_names() const {
    std::vector<std::string> n{"delta_Omega"};
    for (const auto& m : masses_) n.push_back("delta_m_" + m.first);
    return n;
}

AssemblyGraph ParametricFamily::realize_graph(const std::vector<double>& delta) const {
    if (delta.size() != n_parameters()) throw InvalidParameter("wrong number of normalized uncertainties");
    AssemblyGraph g = graph_;
    for (std::size_t i = 0; i < masses_.size(); ++i) g.node(masses_[i].first).rigid.m = masses_[i].second.realize(delta[i + 1]);
    return propagate_equilibrium(g, omega_.realize(delta[0]), limits_);
}

TitopBlock ParametricFamily::operator()(const std::vector<double>& delta) const {
    if (delta.size() != n_parameters()) throw InvalidParameter("wrong number of normalized uncertainties");
    for (double d : delta)
        if (!(std::abs(d) <= 1.0)) throw InvalidParameter("normalized uncertainty outside [-1, 1]");
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(delta);
        if (it != cache_.end()) return *it->second;
    }
    auto blk = std::make_shared<const TitopBlock>(assemble(realize_graph(delta), options_));
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(delta, blk);
    return *blk;
}

namespace {

Eigen::MatrixXd stacked(const TitopBlock& b) {
    Eigen::MatrixXd m(b.n_states() + b.n_outputs(), b.n_states() + b.n_inputs());
    m << b.A, b.B, b.C, b.D;
    return m;
}

bool descends_from(const AssemblyGraph& g, const std::string& node, const std::string& ancestor) {
    for (const AssemblyEdge* e = g.parent_edge(node); e; e = g.parent_edge(e->parent))
        if (e->parent == ancestor) return true;
    return false;
}

}  // namespace

DeltaStructure ParametricFamily::delta_structure() const {
    DeltaStructure ds;
    const std::size_t np = n_parameters();
    const double h = 1e-3;
    for (std::size_t i = 0; i < np; ++i) {
        std::vector<double> dp(np, 0.0), dm(np, 0.0);
        dp[i] = h;
        dm[i] = -h;
        const Eigen::MatrixXd diff = stacked((*this)(dp)) - stacked((*this)(dm));
        int rank = 0;
        if (diff.size() > 0) {
            const Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
            const auto& s = svd.singularValues();
            for (Eigen::Index k = 0; k < s.size(); ++k)
                if (s(k) > 1e-7 * s(0) && s(0) > 0.0) ++rank;
        }
        DeltaEntry e;
        e.name = parameter_names()[i];
        e.repetitions = rank;
        for (const auto& n : graph_.nodes()) {
            if (i == 0) {
                if (n.kind == NodeKind::MainBody) e.reference.push_back({n.name, 8});
                if (n.kind == NodeKind::Beam) e.reference.push_back({n.name, 169});
                if (n.kind == NodeKind::TipMass) e.reference.push_back({n.name, 4});
            } else {
                const std::string& owner = masses_[i - 1].first;
                if (n.kind == NodeKind::Beam && descends_from(graph_, owner, n.name)) e.reference.push_back({n.name, 64});
                if (n.name == owner) e.reference.push_back({n.name, 5});
            }
        }
        ds.entries.push_back(e);
    }
    return ds;
}

std::shared_ptr<ParametricFamily> build_parametric_family(const AssemblyGraph& graph, const UncertainScalar& omega,
                                                          const std::vector<std::pair<std::string, UncertainScalar>>& masses,
                                                          const AssembleOptions& options, const EquilibriumLimits& limits) {
    return std::make_shared<ParametricFamily>(graph, omega, masses, options, limits);
}

}  // namespace spinbeam
