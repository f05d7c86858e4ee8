#include "spinbeam/config.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spinbeam/errors.hpp"
#include "spinbeam/scenarios.hpp"

namespace spinbeam {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw SchemaError((path.empty() ? std::string("/") : path) + ": " + msg);
}

// Object view that records which keys were read and rejects the rest.
class Obj {
public:
    Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) fail(path_, "expected an object");
    }

    void allow(std::initializer_list<const char*> keys) const {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!ok.count(it.key())) fail(path_, "unknown key '" + it.key() + "'");
    }

    bool has(const char* k) const { return j_.contains(k); }
    std::string at(const char* k) const { return path_ + "/" + k; }
    const json& raw(const char* k) const {
        if (!j_.contains(k)) fail(path_, std::string("missing required key '") + k + "'");
        return j_.at(k);
    }

    double number(const char* k) const {
        const json& v = raw(k);
        if (!v.is_number()) fail(at(k), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(at(k), "expected a finite number");
        return d;
    }
    double number(const char* k, double def) const { return has(k) ? number(k) : def; }
    double positive(const char* k) const {
        const double d = number(k);
        if (!(d > 0.0)) fail(at(k), "must be positive");
        return d;
    }
    double nonnegative(const char* k, double def) const {
        const double d = number(k, def);
        if (!(d >= 0.0)) fail(at(k), "must be non-negative");
        return d;
    }
    int integer(const char* k, int def, int lo) const {
        if (!has(k)) return def;
        const json& v = raw(k);
        if (!v.is_number_integer()) fail(at(k), "expected an integer");
        const auto i = v.get<long long>();
        if (i < lo || i > 1000000) fail(at(k), "out of range");
        return static_cast<int>(i);
    }
    std::string string(const char* k) const {
        const json& v = raw(k);
        if (!v.is_string() || v.get<std::string>().empty()) fail(at(k), "expected a non-empty string");
        return v.get<std::string>();
    }
    std::string string(const char* k, const std::string& def) const { return has(k) ? string(k) : def; }
    bool boolean(const char* k, bool def) const {
        if (!has(k)) return def;
        if (!raw(k).is_boolean()) fail(at(k), "expected true or false");
        return raw(k).get<bool>();
    }
    const json& array(const char* k) const {
        const json& v = raw(k);
        if (!v.is_array()) fail(at(k), "expected an array");
        return v;
    }
    Eigen::Vector3d vec3(const char* k, const Eigen::Vector3d& def) const {
        if (!has(k)) return def;
        return to_vec3(raw(k), at(k));
    }
    Eigen::Matrix3d mat3(const char* k, const Eigen::Matrix3d& def) const {
        if (!has(k)) return def;
        const json& v = raw(k);
        const std::string p = at(k);
        if (!v.is_array() || v.size() != 3) fail(p, "expected a 3x3 matrix or a 3-vector diagonal");
        if (v[0].is_number()) return to_vec3(v, p).asDiagonal();
        Eigen::Matrix3d m;
        for (int i = 0; i < 3; ++i) m.row(i) = to_vec3(v[static_cast<std::size_t>(i)], p + "/" + std::to_string(i));
        return m;
    }

    static Eigen::Vector3d to_vec3(const json& v, const std::string& p) {
        if (!v.is_array() || v.size() != 3) fail(p, "expected an array of 3 numbers");
        Eigen::Vector3d r;
        for (int i = 0; i < 3; ++i) {
            const json& e = v[static_cast<std::size_t>(i)];
            if (!e.is_number() || !std::isfinite(e.get<double>())) fail(p, "expected finite numbers");
            r(i) = e.get<double>();
        }
        return r;
    }

    const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
};

BeamSpec parse_beam(const json& j, const std::string& path) {
    Obj o(j, path);
    o.allow({"name", "rho", "S", "l", "E", "nu", "G", "Jy", "Jz", "Jpx", "elements", "damping"});
    BeamSpec b;
    b.name = o.string("name");
    b.props = BeamProperties::make(o.positive("rho"), o.positive("S"), o.positive("l"), o.positive("E"),
                                   o.nonnegative("nu", 0.0), o.positive("Jy"), o.positive("Jz"), o.positive("Jpx"));
    if (o.has("G")) {
        b.props.G = o.positive("G");
        b.props.G_overridden = true;
    }
    if (!(b.props.nu < 0.5)) fail(o.at("nu"), "must be below 0.5");
    b.elements = o.integer("elements", 1, 1);
    if (o.has("damping")) {
        Obj d(o.raw("damping"), o.at("damping"));
        d.allow({"alpha", "beta"});
        b.damping = RayleighDamping{d.nonnegative("alpha", 0.0), d.nonnegative("beta", 0.0)};
    }
    return b;
}

RigidBodyProperties parse_rigid_props(const Obj& o) {
    RigidBodyProperties p;
    p.m = o.nonnegative("m", 0.0);
    if (!o.has("m")) fail(o.path(), "missing required key 'm'");
    p.J_A = o.mat3("J", Eigen::Matrix3d::Zero());
    p.AP = o.vec3("AP", Eigen::Vector3d::Zero());
    p.PC = o.vec3("PC", Eigen::Vector3d::Zero());
    try {
        p.validate();
    } catch (const InvalidParameter& e) {
        fail(o.path(), e.what());
    }
    return p;
}

ModeFamily parse_family(const json& v, const std::string& p) {
    if (!v.is_string()) fail(p, "expected a family name");
    const std::string s = v.get<std::string>();
    if (s == "in-plane") return ModeFamily::InPlane;
    if (s == "out-of-plane") return ModeFamily::OutOfPlane;
    if (s == "traction") return ModeFamily::Traction;
    if (s == "torsion") return ModeFamily::Torsion;
    fail(p, "unknown family '" + s + "' (in-plane, out-of-plane, traction, torsion)");
}

AnalysisSpec parse_analysis(const json& j, const std::string& path) {
    Obj o(j, path);
    AnalysisSpec a;
    const std::string type = o.string("type");
    if (type == "modal") {
        o.allow({"type"});
        a.type = AnalysisType::Modal;
    } else if (type == "equilibrium-report") {
        o.allow({"type"});
        a.type = AnalysisType::EquilibriumReport;
    } else if (type == "delta-structure") {
        o.allow({"type"});
        a.type = AnalysisType::DeltaStructure;
    } else if (type == "table") {
        o.allow({"type", "kind", "elements", "oracle", "oracle_elements"});
        a.type = AnalysisType::Table;
        a.table_kind = o.string("kind");
        if (a.table_kind != "T1" && a.table_kind != "T2" && a.table_kind != "T3" && a.table_kind != "T4")
            fail(o.at("kind"), "expected T1, T2, T3 or T4");
        a.elements = o.integer("elements", 0, 1);
        a.oracle = o.boolean("oracle", false);
        a.oracle_elements = o.integer("oracle_elements", 40, 1);
    } else if (type == "campbell") {
        o.allow({"type", "omega_max", "steps", "families", "modes"});
        a.type = AnalysisType::Campbell;
        a.omega_max = o.positive("omega_max");
        a.steps = o.integer("steps", 0, 1);
        if (!o.has("steps")) fail(o.path(), "missing required key 'steps'");
        if (o.has("families")) {
            const json& f = o.array("families");
            if (f.empty()) fail(o.at("families"), "must not be empty");
            a.families.clear();
            for (std::size_t i = 0; i < f.size(); ++i)
                a.families.push_back(parse_family(f[i], o.at("families") + "/" + std::to_string(i)));
        }
        a.modes = o.integer("modes", 2, 1);
    } else if (type == "freqresp") {
        o.allow({"type", "channel", "grid"});
        a.type = AnalysisType::FreqResp;
        a.channel = o.string("channel");
        a.grid = o.string("grid");
    } else {
        fail(o.at("type"), "unknown analysis type '" + type + "'");
    }
    return a;
}

ScenarioConfig parse_document(const json& doc) {
    Obj o(doc, "");
    o.allow({"name", "beams", "rigid_bodies", "tip_masses", "main_body", "topology", "spin", "uncertain_masses",
             "analyses", "output"});
    ScenarioConfig c;
    c.name = o.string("name");
    std::set<std::string> names;
    auto unique = [&](const std::string& n, const std::string& p) {
        if (n.find('#') != std::string::npos || n.find('.') != std::string::npos)
            fail(p, "names must not contain '#' or '.'");
        if (!names.insert(n).second) fail(p, "duplicate node name '" + n + "'");
    };
    if (o.has("beams")) {
        const json& a = o.array("beams");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string p = o.at("beams") + "/" + std::to_string(i);
            c.beams.push_back(parse_beam(a[i], p));
            unique(c.beams.back().name, p);
        }
    }
    if (o.has("rigid_bodies")) {
        const json& a = o.array("rigid_bodies");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string p = o.at("rigid_bodies") + "/" + std::to_string(i);
            Obj r(a[i], p);
            r.allow({"name", "m", "J", "AP", "PC"});
            c.rigid_bodies.push_back({r.string("name"), parse_rigid_props(r)});
            unique(c.rigid_bodies.back().name, p);
        }
    }
    if (o.has("tip_masses")) {
        const json& a = o.array("tip_masses");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string p = o.at("tip_masses") + "/" + std::to_string(i);
            Obj r(a[i], p);
            r.allow({"name", "m", "J"});
            TipMassSpec t;
            t.name = r.string("name");
            t.m = r.nonnegative("m", 0.0);
            if (!r.has("m")) fail(p, "missing required key 'm'");
            t.J = r.mat3("J", Eigen::Matrix3d::Zero());
            c.tip_masses.push_back(t);
            unique(t.name, p);
        }
    }
    if (o.has("main_body")) {
        const std::string p = o.at("main_body");
        Obj r(o.raw("main_body"), p);
        r.allow({"name", "m", "J", "ports"});
        MainBodySpec mb;
        mb.name = r.string("name");
        unique(mb.name, p);
        mb.props = parse_rigid_props(r);
        if (!(mb.props.m > 0.0) || mb.props.J_A.isZero(0.0)) fail(p, "main body needs positive mass and inertia");
        if (r.has("ports")) {
            const json& a = r.array("ports");
            for (std::size_t i = 0; i < a.size(); ++i) {
                const std::string pp = r.at("ports") + "/" + std::to_string(i);
                Obj q(a[i], pp);
                q.allow({"name", "BC"});
                if (!q.has("BC")) fail(pp, "missing required key 'BC'");
                mb.ports.push_back({q.string("name"), q.vec3("BC", Eigen::Vector3d::Zero())});
            }
        }
        c.main_body = mb;
    }
    if (o.has("topology")) {
        Obj t(o.raw("topology"), o.at("topology"));
        t.allow({"root_offset", "edges"});
        c.root_offset = t.vec3("root_offset", Eigen::Vector3d::Zero());
        if (t.has("edges")) {
            const json& a = t.array("edges");
            for (std::size_t i = 0; i < a.size(); ++i) {
                const std::string p = t.at("edges") + "/" + std::to_string(i);
                Obj e(a[i], p);
                e.allow({"parent", "port", "child", "dcm"});
                EdgeSpec es;
                es.parent = e.string("parent");
                es.port = e.string("port", "C");
                es.child = e.string("child");
                es.dcm = e.mat3("dcm", Eigen::Matrix3d::Identity());
                try {
                    dcm_transport(es.dcm);
                } catch (const InvalidParameter& ex) {
                    fail(e.at("dcm"), ex.what());
                }
                c.edges.push_back(es);
            }
        }
    }
    if (o.has("spin")) {
        Obj s(o.raw("spin"), o.at("spin"));
        s.allow({"omega", "r_omega"});
        c.omega = s.number("omega", 0.0);
        c.r_omega = s.nonnegative("r_omega", 0.0);
    }
    if (o.has("uncertain_masses")) {
        const json& a = o.array("uncertain_masses");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string p = o.at("uncertain_masses") + "/" + std::to_string(i);
            Obj u(a[i], p);
            u.allow({"node", "r"});
            c.uncertain_masses.push_back({u.string("node"), u.nonnegative("r", 0.0)});
        }
    }
    const json& an = o.array("analyses");
    if (an.empty()) fail(o.at("analyses"), "at least one analysis is required");
    for (std::size_t i = 0; i < an.size(); ++i)
        c.analyses.push_back(parse_analysis(an[i], o.at("analyses") + "/" + std::to_string(i)));
    c.output_prefix = c.name;
    if (o.has("output")) {
        Obj out(o.raw("output"), o.at("output"));
        out.allow({"prefix"});
        c.output_prefix = out.string("prefix", c.name);
    }
    for (char ch : c.output_prefix)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_'))
            fail("/output/prefix", "only letters, digits, '-' and '_' are allowed");

    // references
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const std::string p = "/topology/edges/" + std::to_string(i);
        if (!names.count(c.edges[i].parent)) fail(p, "unknown parent '" + c.edges[i].parent + "'");
        if (!names.count(c.edges[i].child)) fail(p, "unknown child '" + c.edges[i].child + "'");
    }
    for (std::size_t i = 0; i < c.uncertain_masses.size(); ++i) {
        const std::string& n = c.uncertain_masses[i].node;
        bool ok = false;
        for (const auto& t : c.tip_masses) ok = ok || t.name == n;
        for (const auto& r : c.rigid_bodies) ok = ok || r.name == n;
        if (!ok) fail("/uncertain_masses/" + std::to_string(i), "'" + n + "' is not a tip mass or rigid body");
    }
    return c;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse_document(doc);
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SchemaError("cannot read config '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return parse_scenario(os.str());
}

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
    for (const auto& n : builtin_scenario_names())
        if (n == name_or_path) return parse_scenario(builtin_scenario_text(n));
    if (!std::filesystem::exists(name_or_path))
        throw SchemaError("'" + name_or_path + "' is neither a builtin scenario nor a readable file");
    return load_scenario_file(name_or_path);
}

AssemblyGraph build_graph(const ScenarioConfig& c) {
    AssemblyGraph g;
    if (c.main_body) g.add_main_body(c.main_body->name, c.main_body->props, c.main_body->ports);
    for (const auto& b : c.beams) g.add_beam(b.name, b.props, b.elements, b.damping);
    for (const auto& r : c.rigid_bodies) g.add_rigid(r.name, r.props);
    for (const auto& t : c.tip_masses) g.add_tip_mass(t.name, t.m, t.J);
    for (const auto& e : c.edges) g.attach(e.parent, e.port, e.child, e.dcm);
    g.set_root_offset(c.root_offset);
    g.validate();
    return g;
}

std::string scenario_grammar() {
    return R"(scenario document (JSON object; unknown keys are rejected)
  name               string, required
  beams              [{name, rho, S, l, E, nu, G?, Jy, Jz, Jpx, elements?=1, damping?{alpha, beta}}]
  rigid_bodies       [{name, m, J? (3x3 or diagonal), AP?[3], PC?[3]}]
  tip_masses         [{name, m, J?}]
  main_body          {name, m, J, ports?[{name, BC[3]}]}
  topology           {root_offset?[3], edges?[{parent, port?="C", child, dcm?(3x3)}]}
  spin               {omega?=0, r_omega?=0}
  uncertain_masses   [{node, r}]
  analyses           required, non-empty:
                       {type: "modal"} | {type: "equilibrium-report"} | {type: "delta-structure"}
                       {type: "table", kind: T1|T2|T3|T4, elements?, oracle?, oracle_elements?=40}
                       {type: "campbell", omega_max, steps, families?[in-plane|out-of-plane|traction|torsion], modes?=2}
                       {type: "freqresp", channel: "<Fin|Tin><1-3>:<vdot|wdot|v|w|x|th><1-3>", grid: "log|lin:a:b:n"}
  output             {prefix?=name}
)";
}

}  // namespace spinbeam
