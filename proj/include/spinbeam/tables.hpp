#pragma once

#include <string>
#include <vector>

#include "spinbeam/beam.hpp"
#include "spinbeam/scenarios.hpp"
#include "spinbeam/serialize.hpp"

namespace spinbeam {

enum class TableKind { T1, T2, T3, T4 };

/// Throws SchemaError for anything but T1..T4.
TableKind parse_table_kind(const std::string& s);
const char* table_kind_name(TableKind k);

struct TableCase {
    double alpha = 0.0;  // r / l
    double mu = 0.0;     // m / (rho S l)
    std::vector<double> etas;
};

TableCase table_case(TableKind k);

/// Frequency ratios of the clamped cantilever at a given in-plane speed ratio.
struct CantileverRatios {
    double eta = 0.0;
    std::vector<double> in_plane, out_of_plane;  // bending scale of the matching plane
    double traction = 0.0;                       // omega sqrt(rho l^2 / E)
    double torsion = 0.0;                        // omega sqrt(rho l^2 / G)
    double traction_bending_scale = 0.0;         // same modes on the in-plane bending scale
    double torsion_bending_scale = 0.0;
};

CantileverRatios cantilever_ratios(const BeamProperties& beam, double eta, double mu, double alpha, int n_elements);

/// FE oracle ratios (in-plane, out-of-plane) at the same setting.
std::pair<std::vector<double>, std::vector<double>> fe_ratios(const BeamProperties& beam, double eta, double mu,
                                                              double alpha, int n_elements);

struct TableOptions {
    int elements = 0;  // 0: one element for T1..T3, five for T4
    bool oracle = false;
    int oracle_elements = 40;
    BeamProperties beam = table_beam();
};

CsvTable generate_table(TableKind kind, const TableOptions& options = {});

}  // namespace spinbeam
