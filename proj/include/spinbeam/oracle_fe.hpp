#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spinbeam/beam.hpp"

namespace spinbeam {

/// Uniform Hermite-cubic mesh of a spinning cantilever with a tip mass m at offset r.
struct FeBeamMesh {
    int n_elements = 1;
    double element_length = 0.0;
    double l = 0.0, r = 0.0, m = 0.0, rhoS = 0.0, omega = 0.0;

    static FeBeamMesh make(const BeamProperties& props, double omega, double m, double r, int n_elements);
    /// Centrifugal axial force at abscissa x from the root.
    double axial_force(double x) const;
};

/// Clamped-root matrices (2 DOF per node, root DOF removed).
struct FeSystem {
    Eigen::MatrixXd K, M;
};

/// Bending stiffness with flexural rigidity EJ, consistent mass with the tip mass,
/// geometric stiffness, and optionally the in-plane softening term.
FeSystem fe_assemble(const FeBeamMesh& mesh, double EJ, bool softening);

/// Ascending natural frequencies in rad/s.
std::vector<double> fe_out_of_plane_frequencies(const BeamProperties& props, double omega, double m, double r,
                                                int n_elements);
std::vector<double> fe_in_plane_frequencies(const BeamProperties& props, double omega, double m, double r,
                                            int n_elements);

}  // namespace spinbeam
