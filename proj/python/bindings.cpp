#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinbeam/errors.hpp"
#include "spinbeam/runner.hpp"
#include "spinbeam/scenarios.hpp"
#include "spinbeam/tables.hpp"

namespace py = pybind11;
using namespace spinbeam;

namespace {

ScenarioConfig load(const std::string& scenario, std::optional<double> omega, std::optional<double> tip_mass) {
    ScenarioConfig c = resolve_scenario(scenario);
    apply_overrides(c, {omega, tip_mass});
    return c;
}

py::dict ratios_dict(const CantileverRatios& r) {
    py::dict d;
    d["eta"] = r.eta;
    d["in_plane"] = r.in_plane;
    d["out_of_plane"] = r.out_of_plane;
    d["traction"] = r.traction;
    d["torsion"] = r.torsion;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Linearized models of spinning rigid bodies and flexible beams";

    static py::exception<SchemaError> schema_error(m, "SchemaError", PyExc_ValueError);
    static py::exception<ModelInvalid> model_invalid(m, "ModelInvalid", PyExc_RuntimeError);
    static py::exception<NumericalFailure> numerical_failure(m, "NumericalFailure", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const SchemaError& e) {
            py::set_error(schema_error, e.what());
        } catch (const TopologyError& e) {
            py::set_error(schema_error, e.what());
        } catch (const ChannelError& e) {
            py::set_error(schema_error, e.what());
        } catch (const ModelInvalid& e) {
            py::set_error(model_invalid, e.what());
        } catch (const NumericalFailure& e) {
            py::set_error(numerical_failure, e.what());
        }
    });

    m.def("builtin_scenarios", &builtin_scenario_names);
    m.def("scenario_grammar", &scenario_grammar);

    m.def(
        "cantilever_ratios",
        [](double eta, double mu, double alpha, int elements) {
            return ratios_dict(cantilever_ratios(table_beam(), eta, mu, alpha, elements));
        },
        py::arg("eta"), py::arg("mu") = 0.0, py::arg("alpha") = 0.0, py::arg("elements") = 1);

    m.def(
        "table",
        [](const std::string& kind, int elements, bool oracle) {
            TableOptions o;
            o.elements = elements;
            o.oracle = oracle;
            return to_csv(generate_table(parse_table_kind(kind), o));
        },
        py::arg("kind"), py::arg("elements") = 0, py::arg("oracle") = false, "Table as CSV text.");

    m.def(
        "run",
        [](const std::string& scenario, const std::string& out_dir, std::optional<double> omega,
           std::optional<double> tip_mass) { return run_scenario(load(scenario, omega, tip_mass), out_dir); },
        py::arg("scenario"), py::arg("out_dir"), py::arg("omega") = py::none(), py::arg("tip_mass") = py::none(),
        "Runs every analysis of a scenario; returns the written paths.");

    m.def(
        "modes",
        [](const std::string& scenario, std::optional<double> omega, std::optional<double> tip_mass) {
            const ScenarioConfig c = load(scenario, omega, tip_mass);
            py::list out;
            for (const auto& md : modal_frequencies(scenario_model(c, c.omega)).modes) {
                py::dict d;
                d["lambda"] = md.lambda;
                d["frequency"] = md.frequency;
                d["damping_ratio"] = md.damping_ratio;
                d["family"] = mode_family_name(md.family);
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("omega") = py::none(), py::arg("tip_mass") = py::none());

    m.def(
        "freqresp",
        [](const std::string& scenario, const std::string& channel, const std::string& grid, std::optional<double> omega,
           std::optional<double> tip_mass) {
            std::vector<double> w;
            std::vector<std::complex<double>> g;
            for (const auto& p : scenario_freqresp(load(scenario, omega, tip_mass), channel, grid)) {
                w.push_back(p.omega);
                g.push_back(p.gain(0, 0));
            }
            return py::make_tuple(w, g);
        },
        py::arg("scenario"), py::arg("channel") = "Tin2:wdot2", py::arg("grid") = "log:1e-3:1e3:400",
        py::arg("omega") = py::none(), py::arg("tip_mass") = py::none());
}
