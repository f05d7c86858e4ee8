#include "spinbeam/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#include "spinbeam/errors.hpp"
#include "spinbeam/tables.hpp"

namespace spinbeam {

std::string output_dir_from_env() {
    const char* d = std::getenv("SPINBEAM_OUTPUT_DIR");
    return d && *d ? std::string(d) : std::string(".");
}

void apply_overrides(ScenarioConfig& c, const RunOverrides& o) {
    if (o.omega) {
        if (!std::isfinite(*o.omega)) throw SchemaError("--omega must be finite");
        c.omega = *o.omega;
    }
    if (o.tip_mass) {
        if (!(*o.tip_mass >= 0.0)) throw SchemaError("--tip-mass must be non-negative");
        for (auto& t : c.tip_masses) t.m = *o.tip_mass;
    }
}

ChannelSelection parse_channel(const std::string& spec, const std::string& main_body) {
    static const std::regex re(R"(^(Fin|Tin)([123]):(vdot|wdot|v|w|x|th)([123])$)");
    std::smatch m;
    if (!std::regex_match(spec, m, re))
        throw SchemaError("channel '" + spec + "' does not match <Fin|Tin><1-3>:<vdot|wdot|v|w|x|th><1-3>");
    ChannelSelection s;
    s.input_port = s.output_port = main_body + ".B";
    s.input_component = (m[1] == "Tin" ? 3 : 0) + std::stoi(m[2]) - 1;
    const std::string o = m[3];
    const int base = o == "vdot" ? 0 : o == "wdot" ? 3 : o == "v" ? 6 : o == "w" ? 9 : o == "x" ? 12 : 15;
    s.output_component = base + std::stoi(m[4]) - 1;
    return s;
}

std::vector<double> parse_grid(const std::string& spec) {
    static const std::regex re(R"(^(log|lin):([^:]+):([^:]+):([0-9]+)$)");
    std::smatch m;
    if (!std::regex_match(spec, m, re)) throw SchemaError("grid '" + spec + "' does not match log|lin:a:b:n");
    double a = 0.0, b = 0.0;
    long n = 0;
    try {
        std::size_t pa = 0, pb = 0;
        a = std::stod(m[2], &pa);
        b = std::stod(m[3], &pb);
        if (pa != m[2].length() || pb != m[3].length()) throw std::invalid_argument("trailing characters");
        n = std::stol(m[4]);
    } catch (const std::exception&) {
        throw SchemaError("grid '" + spec + "': bounds must be numbers");
    }
    if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a) || n < 1 || n > 1000000)
        throw SchemaError("grid '" + spec + "': need finite a < b and 1 <= n <= 1e6");
    const bool lg = m[1] == "log";
    if (lg && !(a > 0.0)) throw SchemaError("grid '" + spec + "': log grid needs a > 0");
    std::vector<double> g;
    for (long i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        g.push_back(lg ? std::pow(10.0, std::log10(a) + t * (std::log10(b) - std::log10(a))) : a + t * (b - a));
    }
    return g;
}

AssemblyGraph scenario_graph(const ScenarioConfig& c, double omega) {
    return propagate_equilibrium(build_graph(c), omega);
}

TitopBlock scenario_model(const ScenarioConfig& c, double omega, bool keep_main_body_input) {
    AssembleOptions opt;
    opt.free_main_body = !keep_main_body_input;
    return assemble(scenario_graph(c, omega), opt);
}

CampbellCurve scenario_campbell(const ScenarioConfig& c, double omega_max, int steps,
                                const std::vector<ModeFamily>& families, int modes) {
    if (!(omega_max > 0.0) || steps < 1) throw SchemaError("campbell: need omega_max > 0 and steps >= 1");
    std::vector<double> grid;
    for (int k = 0; k <= steps; ++k) grid.push_back(omega_max * k / steps);
    return campbell_sweep([&](double w) { return scenario_model(c, w); }, grid, families, modes);
}

std::vector<ResponsePoint> scenario_freqresp(const ScenarioConfig& c, const std::string& channel,
                                             const std::string& grid) {
    if (!c.main_body) throw SchemaError("freqresp: the scenario has no main body to excite");
    const ChannelSelection s = parse_channel(channel, c.main_body->name);
    const std::vector<double> g = parse_grid(grid);
    const TitopBlock model = scenario_model(c, c.omega, true);
    return frequency_response(select_port_channel(model, s.input_port, s.input_kind, s.input_component, s.output_port,
                                                  s.output_kind, s.output_component),
                              g);
}

DeltaStructure scenario_delta_structure(const ScenarioConfig& c) {
    std::vector<std::pair<std::string, UncertainScalar>> masses;
    for (const auto& u : c.uncertain_masses) {
        double m = 0.0;
        for (const auto& t : c.tip_masses)
            if (t.name == u.node) m = t.m;
        for (const auto& r : c.rigid_bodies)
            if (r.name == u.node) m = r.props.m;
        masses.push_back({u.node, UncertainScalar{m, u.r, 0.0}});
    }
    AssembleOptions opt;
    opt.free_main_body = false;
    return build_parametric_family(build_graph(c), UncertainScalar{c.omega, c.r_omega, 0.0}, masses, opt)
        ->delta_structure();
}

namespace {

template <typename Derived>
nlohmann::ordered_json vec(const Eigen::MatrixBase<Derived>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(static_cast<double>(v(i)));
    return a;
}

}  // namespace

nlohmann::ordered_json modal_json(const ModalResult& modal, const TitopBlock& model, double omega) {
    nlohmann::ordered_json j;
    j["omega"] = omega;
    j["n_states"] = model.n_states();
    j["loop_conditions"] = model.loop_conditions;
    nlohmann::ordered_json modes = nlohmann::ordered_json::array();
    for (const auto& m : modal.modes) {
        nlohmann::ordered_json e;
        e["frequency"] = m.frequency;
        e["damping_ratio"] = m.damping_ratio;
        e["lambda"] = {m.lambda.real(), m.lambda.imag()};
        e["family"] = mode_family_name(m.family);
        e["dominance"] = m.dominance;
        modes.push_back(e);
    }
    j["modes"] = modes;
    return j;
}

nlohmann::ordered_json equilibrium_json(const AssemblyGraph& g, double omega) {
    nlohmann::ordered_json j;
    j["omega"] = omega;
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& name : g.topological_order()) {
        const AssemblyNode& n = g.node(name);
        nlohmann::ordered_json e;
        e["name"] = n.name;
        e["kind"] = node_kind_name(n.kind);
        if (n.eq) {
            const EquilibriumState& s = *n.eq;
            e["x_P"] = vec(s.x_P);
            e["Theta_P"] = vec(s.Theta_P);
            e["v_P"] = vec(s.v_P);
            e["omega_P"] = vec(s.omega_P);
            e["W_C"] = vec(s.W_C);
            e["W_P"] = s.W_P ? vec(*s.W_P) : nlohmann::ordered_json();
            e["q_f"] = s.q_f ? vec(*s.q_f) : nlohmann::ordered_json();
            e["valid"] = s.valid;
            if (n.kind == NodeKind::Beam) e["condition"] = s.condition;
        }
        nodes.push_back(e);
    }
    j["nodes"] = nodes;
    return j;
}

nlohmann::ordered_json equilibrium_error_json(const EquilibriumInvalid& e) {
    nlohmann::ordered_json j;
    j["error"] = "equilibrium invalid";
    j["node"] = e.node;
    j["message"] = e.what();
    j["q_f"] = vec(e.q_f);
    j["tip_deflection_y_over_l"] = e.q_f(1) / e.l;
    j["tip_deflection_z_over_l"] = e.q_f(5) / e.l;
    j["axial_over_l"] = e.q_f(8) / e.l;
    j["twist"] = e.q_f(9);
    return j;
}

nlohmann::ordered_json delta_json(const DeltaStructure& ds) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : ds.entries) {
        nlohmann::ordered_json x;
        x["name"] = e.name;
        x["repetitions"] = e.repetitions;
        nlohmann::ordered_json ref = nlohmann::ordered_json::array();
        for (const auto& [block, count] : e.reference) ref.push_back({{"block", block}, {"count", count}});
        x["reference_lfr_occurrences"] = ref;
        entries.push_back(x);
    }
    j["entries"] = entries;
    j["repetitions_meaning"] = "rank of the first-order sensitivity of [A B; C D]";
    return j;
}

CsvTable campbell_csv(const CampbellCurve& c) {
    CsvTable t;
    t.header.push_back("Omega (rad/s)");
    for (const auto& b : c.branches)
        t.header.push_back(std::string(mode_family_name(b.family)) + " " + std::to_string(b.index) + " (rad/s)");
    for (std::size_t i = 0; i < c.omega.size(); ++i) {
        std::vector<std::string> row{CsvTable::number(c.omega[i])};
        for (const auto& b : c.branches) row.push_back(CsvTable::number(b.frequency[i]));
        t.add_row(std::move(row));
    }
    return t;
}

CsvTable freqresp_csv(const std::vector<ResponsePoint>& pts) {
    CsvTable t;
    t.header = {"omega (rad/s)", "re", "im", "magnitude", "magnitude (dB)", "pole_on_grid"};
    for (const auto& p : pts) {
        const std::complex<double> g = p.gain.size() ? p.gain(0, 0) : std::complex<double>(0.0, 0.0);
        const double mag = p.pole_on_grid ? INFINITY : std::abs(g);
        t.add_row({CsvTable::number(p.omega), CsvTable::number(p.pole_on_grid ? INFINITY : g.real()),
                   CsvTable::number(p.pole_on_grid ? 0.0 : g.imag()), CsvTable::number(mag),
                   CsvTable::number(p.pole_on_grid ? INFINITY : 20.0 * std::log10(mag)),
                   p.pole_on_grid ? "1" : "0"});
    }
    return t;
}

std::vector<std::string> run_scenario(const ScenarioConfig& c, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> files;
    auto path = [&](const std::string& suffix) { return (std::filesystem::path(out_dir) / (c.output_prefix + suffix)).string(); };
    auto emit = [&](const std::string& p, const std::string& text) {
        write_text_file(p, text);
        files.push_back(p);
    };
    for (const auto& a : c.analyses) {
        switch (a.type) {
            case AnalysisType::Modal: {
                const TitopBlock model = scenario_model(c, c.omega);
                emit(path("_modal.json"), to_json_text(modal_json(modal_frequencies(model), model, c.omega)));
                break;
            }
            case AnalysisType::EquilibriumReport:
                emit(path("_equilibrium.json"), to_json_text(equilibrium_json(scenario_graph(c, c.omega), c.omega)));
                break;
            case AnalysisType::Table: {
                TableOptions o;
                if (!c.beams.empty()) o.beam = c.beams.front().props;
                o.elements = a.elements;
                o.oracle = a.oracle;
                o.oracle_elements = a.oracle_elements;
                emit(path("_table_" + a.table_kind + ".csv"), to_csv(generate_table(parse_table_kind(a.table_kind), o)));
                break;
            }
            case AnalysisType::Campbell:
                emit(path("_campbell.csv"), to_csv(campbell_csv(scenario_campbell(c, a.omega_max, a.steps, a.families, a.modes))));
                break;
            case AnalysisType::FreqResp:
                emit(path("_freqresp.csv"), to_csv(freqresp_csv(scenario_freqresp(c, a.channel, a.grid))));
                break;
            case AnalysisType::DeltaStructure:
                emit(path("_delta.json"), to_json_text(delta_json(scenario_delta_structure(c))));
                break;
        }
    }
    return files;
}

}  // namespace spinbeam
