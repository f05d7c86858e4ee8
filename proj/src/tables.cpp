#include "spinbeam/tables.hpp"

#include "spinbeam/analysis.hpp"
#include "spinbeam/errors.hpp"
#include "spinbeam/oracle_fe.hpp"

namespace spinbeam {

TableKind parse_table_kind(const std::string& s) {
    if (s == "T1") return TableKind::T1;
    if (s == "T2") return TableKind::T2;
    if (s == "T3") return TableKind::T3;
    if (s == "T4") return TableKind::T4;
    throw SchemaError("unknown table '" + s + "' (expected T1, T2, T3 or T4)");
}

const char* table_kind_name(TableKind k) {
    switch (k) {
        case TableKind::T1: return "T1";
        case TableKind::T2: return "T2";
        case TableKind::T3: return "T3";
        case TableKind::T4: return "T4";
    }
    return "?";
}

TableCase table_case(TableKind k) {
    const std::vector<double> grid{0, 2, 4, 6, 8, 10};
    switch (k) {
        case TableKind::T1: return {0.0, 0.0, grid};
        case TableKind::T2: return {1.0, 0.0, grid};
        case TableKind::T3: return {0.0, 1.0, grid};
        case TableKind::T4: return {0.0, 0.0, {0, 3, 6, 12}};
    }
    return {};
}

CantileverRatios cantilever_ratios(const BeamProperties& beam, double eta, double mu, double alpha, int n_elements) {
    CantileverSpec s;
    s.beam = beam;
    s.omega = DimensionlessSetup::omega_for_eta_by(beam, eta);
    s.tip_mass = mu * beam.mass();
    s.offset = alpha * beam.l;
    s.n_elements = n_elements;
    const ModalResult modal = modal_frequencies(cantilever_model(s));
    const FrequencyRatios fr =
        frequency_ratio(modal, DimensionlessSetup::from(beam, s.omega, s.tip_mass, s.offset), beam);
    CantileverRatios r;
    r.eta = eta;
    r.in_plane = fr.in_plane;
    r.out_of_plane = fr.out_of_plane;
    if (!fr.traction.empty()) r.traction = fr.traction.front();
    if (!fr.torsion.empty()) r.torsion = fr.torsion.front();
    const double by = bending_scale(beam, beam.Jz);
    r.traction_bending_scale = r.traction / traction_scale(beam) * by;
    r.torsion_bending_scale = r.torsion / torsion_scale(beam) * by;
    return r;
}

std::pair<std::vector<double>, std::vector<double>> fe_ratios(const BeamProperties& beam, double eta, double mu,
                                                              double alpha, int n_elements) {
    const double omega = DimensionlessSetup::omega_for_eta_by(beam, eta);
    const double m = mu * beam.mass(), r = alpha * beam.l;
    std::vector<double> y = fe_in_plane_frequencies(beam, omega, m, r, n_elements);
    std::vector<double> z = fe_out_of_plane_frequencies(beam, omega, m, r, n_elements);
    for (double& f : y) f *= bending_scale(beam, beam.Jz);
    for (double& f : z) f *= bending_scale(beam, beam.Jy);
    return {y, z};
}

namespace {

const char* kOrdinal[] = {"1st", "2nd", "3rd", "4th"};

std::string at_or_empty(const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? CsvTable::number(v[i]) : std::string();
}

CsvTable bending_table(TableKind kind, const TableOptions& o) {
    const TableCase tc = table_case(kind);
    const int n = o.elements > 0 ? o.elements : 1;
    CsvTable t;
    t.header.push_back("eta");
    for (const char* ord : kOrdinal) t.header.push_back(std::string("In-plane bending ") + ord);
    for (const char* ord : kOrdinal) t.header.push_back(std::string("Out-of-plane bending ") + ord);
    t.header.insert(t.header.end(), {"Traction", "Torsion", "Traction (bending scale)", "Torsion (bending scale)",
                                     "Traction/torsion normalization"});
    if (o.oracle) t.header.insert(t.header.end(), {"FE in-plane bending 1st", "FE out-of-plane bending 1st"});
    for (double eta : tc.etas) {
        const CantileverRatios r = cantilever_ratios(o.beam, eta, tc.mu, tc.alpha, n);
        std::vector<std::string> row{CsvTable::number(eta)};
        for (std::size_t i = 0; i < 4; ++i) row.push_back(at_or_empty(r.in_plane, i));
        for (std::size_t i = 0; i < 4; ++i) row.push_back(at_or_empty(r.out_of_plane, i));
        row.insert(row.end(), {CsvTable::number(r.traction), CsvTable::number(r.torsion),
                               CsvTable::number(r.traction_bending_scale), CsvTable::number(r.torsion_bending_scale),
                               "unresolved"});
        if (o.oracle) {
            const auto fe = fe_ratios(o.beam, eta, tc.mu, tc.alpha, o.oracle_elements);
            row.push_back(at_or_empty(fe.first, 0));
            row.push_back(at_or_empty(fe.second, 0));
        }
        t.add_row(std::move(row));
    }
    return t;
}

CsvTable convergence_table(const TableOptions& o) {
    const TableCase tc = table_case(TableKind::T4);
    const int n = o.elements > 0 ? o.elements : 5;
    const std::string ne = " TITOP " + std::to_string(n) + " el.";
    const std::string fe = " FE " + std::to_string(o.oracle_elements) + " el.";
    CsvTable t;
    t.header = {"eta",         "f_b1^z TITOP 1 el.", "f_b1^z" + ne, "f_b1^z" + fe, "f_b1^y TITOP 1 el.",
                "f_b1^y" + ne, "f_b1^y" + fe,         "f_b2^z" + ne, "f_b2^z" + fe, "f_b3^z" + ne,
                "f_b3^z" + fe};
    for (double eta : tc.etas) {
        const CantileverRatios one = cantilever_ratios(o.beam, eta, tc.mu, tc.alpha, 1);
        const CantileverRatios many = cantilever_ratios(o.beam, eta, tc.mu, tc.alpha, n);
        const auto f = fe_ratios(o.beam, eta, tc.mu, tc.alpha, o.oracle_elements);
        t.add_row({CsvTable::number(eta), at_or_empty(one.out_of_plane, 0), at_or_empty(many.out_of_plane, 0),
                   at_or_empty(f.second, 0), at_or_empty(one.in_plane, 0), at_or_empty(many.in_plane, 0),
                   at_or_empty(f.first, 0), at_or_empty(many.out_of_plane, 1), at_or_empty(f.second, 1),
                   at_or_empty(many.out_of_plane, 2), at_or_empty(f.second, 2)});
    }
    return t;
}

}  // namespace

CsvTable generate_table(TableKind kind, const TableOptions& options) {
    if (options.elements < 0 || options.oracle_elements < 1) throw InvalidParameter("element counts must be positive");
    return kind == TableKind::T4 ? convergence_table(options) : bending_table(kind, options);
}

}  // namespace spinbeam
