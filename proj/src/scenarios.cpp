#include "spinbeam/scenarios.hpp"

#include "spinbeam/errors.hpp"

namespace spinbeam {

BeamProperties boom_beam() { return BeamProperties::make(2700.0, 3.14e-4, 50.0, 7e10, 0.33, 7.85e-9, 7.85e-9, 1.57e-8); }

BeamProperties table_beam() { return BeamProperties::make(2700.0, 3.14e-4, 50.0, 7e10, 0.33, 7.85e-7, 7.85e-7, 1.57e-6); }

RigidBodyProperties hub_properties() {
    RigidBodyProperties p;
    p.m = 500.0;
    p.J_A = Eigen::Vector3d(570.42, 570.42, 1000.0).asDiagonal();
    return p;
}

AssemblyGraph cantilever_graph(const CantileverSpec& s) {
    AssemblyGraph g;
    g.add_beam("beam", s.beam, s.n_elements, s.damping);
    g.set_root_offset(Eigen::Vector3d(s.offset, 0.0, 0.0));
    if (s.tip_mass > 0.0) {
        g.add_tip_mass("tip", s.tip_mass);
        g.attach("beam", "C", "tip");
    }
    g.validate();
    return g;
}

TitopBlock cantilever_model(const CantileverSpec& s) {
    return assemble(propagate_equilibrium(cantilever_graph(s), s.omega));
}

AssemblyGraph spacecraft_graph(const SpacecraftSpec& s) {
    AssemblyGraph g;
    g.add_main_body("hub", hub_properties(),
                    {{"C1", Eigen::Vector3d(-kHubPortOffset, 0.0, 0.0)}, {"C2", Eigen::Vector3d(kHubPortOffset, 0.0, 0.0)}});
    g.add_beam("boom1", boom_beam(), s.n_elements, s.damping);
    g.add_beam("boom2", boom_beam(), s.n_elements, s.damping);
    g.add_tip_mass("tip1", s.tip_mass);
    g.add_tip_mass("tip2", s.tip_mass);
    g.attach("hub", "C1", "boom1", Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal());
    g.attach("hub", "C2", "boom2");
    g.attach("boom1", "C", "tip1");
    g.attach("boom2", "C", "tip2");
    g.validate();
    return g;
}

std::vector<std::string> builtin_scenario_names() {
    return {"tables1", "tables2", "tables3", "tables4", "thor-like", "fig7"};
}

namespace {

const char* kTableBeam =
    R"({"name": "beam", "rho": 2700, "S": 3.14e-4, "l": 50, "E": 7e10, "nu": 0.33, "Jy": 7.85e-7, "Jz": 7.85e-7, "Jpx": 1.57e-6})";

std::string table_doc(const std::string& name, const std::string& kind) {
    return R"({"name": ")" + name + R"(", "beams": [)" + kTableBeam +
           R"(], "analyses": [{"type": "table", "kind": ")" + kind + R"(", "oracle": true}]})";
}

const char* kThorLike = R"({
  "name": "thor-like",
  "main_body": {"name": "hub", "m": 500, "J": [570.42, 570.42, 1000],
                "ports": [{"name": "C1", "BC": [-2, 0, 0]}, {"name": "C2", "BC": [2, 0, 0]}]},
  "beams": [
    {"name": "boom1", "rho": 2700, "S": 3.14e-4, "l": 50, "E": 7e10, "nu": 0.33, "Jy": 7.85e-9, "Jz": 7.85e-9,
     "Jpx": 1.57e-8, "damping": {"alpha": 1e-4, "beta": 1.2e-3}},
    {"name": "boom2", "rho": 2700, "S": 3.14e-4, "l": 50, "E": 7e10, "nu": 0.33, "Jy": 7.85e-9, "Jz": 7.85e-9,
     "Jpx": 1.57e-8, "damping": {"alpha": 1e-4, "beta": 1.2e-3}}
  ],
  "tip_masses": [{"name": "tip1", "m": 5}, {"name": "tip2", "m": 5}],
  "topology": {"edges": [
    {"parent": "hub", "port": "C1", "child": "boom1", "dcm": [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]},
    {"parent": "hub", "port": "C2", "child": "boom2"},
    {"parent": "boom1", "child": "tip1"},
    {"parent": "boom2", "child": "tip2"}
  ]},
  "spin": {"omega": 0, "r_omega": 1},
  "uncertain_masses": [{"node": "tip1", "r": 0.5}, {"node": "tip2", "r": 0.5}],
  "analyses": [
    {"type": "equilibrium-report"},
    {"type": "modal"},
    {"type": "freqresp", "channel": "Tin2:wdot2", "grid": "log:1e-3:1e3:400"}
  ]
})";

const char* kFig7 = R"({
  "name": "fig7",
  "beams": [{"name": "beam", "rho": 2700, "S": 3.14e-4, "l": 50, "E": 7e10, "nu": 0.33, "Jy": 7.85e-9,
             "Jz": 7.85e-9, "Jpx": 1.57e-8}],
  "tip_masses": [{"name": "tip", "m": 5}],
  "topology": {"root_offset": [2, 0, 0], "edges": [{"parent": "beam", "child": "tip"}]},
  "spin": {"omega": 0},
  "analyses": [
    {"type": "modal"},
    {"type": "campbell", "omega_max": 2, "steps": 40, "families": ["in-plane", "out-of-plane"], "modes": 2}
  ]
})";

}  // namespace

std::string builtin_scenario_text(const std::string& name) {
    if (name == "tables1") return table_doc(name, "T1");
    if (name == "tables2") return table_doc(name, "T2");
    if (name == "tables3") return table_doc(name, "T3");
    if (name == "tables4") return table_doc(name, "T4");
    if (name == "thor-like") return kThorLike;
    if (name == "fig7") return kFig7;
    throw SchemaError("unknown builtin scenario '" + name + "'");
}

}  // namespace spinbeam
