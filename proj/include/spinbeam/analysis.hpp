#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinbeam/beam.hpp"
#include "spinbeam/block.hpp"

namespace spinbeam {

enum class ModeFamily { InPlane, OutOfPlane, Traction, Torsion, Rigid, Coupled };
const char* mode_family_name(ModeFamily f);

struct Mode {
    std::complex<double> lambda;
    double frequency = 0.0;      // rad/s, |lambda|
    double damping_ratio = 0.0;  // -Re(lambda)/|lambda|
    ModeFamily family = ModeFamily::Coupled;
    double dominance = 0.0;      // energy share of the winning family
    Eigen::VectorXcd shape;      // eigenvector of A
};

struct ModalResult {
    std::vector<std::complex<double>> eigenvalues;  // all eigenvalues of A
    std::vector<Mode> modes;                        // one per conjugate pair or real eigenvalue, by frequency
    std::vector<StateInfo> states;

    /// Ascending frequencies of one family.
    std::vector<double> frequencies(ModeFamily f) const;
    std::vector<const Mode*> family_modes(ModeFamily f) const;
};

/// Share of a family above which a mode is assigned to it.
inline constexpr double kDominanceThreshold = 0.6;

/// Dense eigen-decomposition of A with conjugate pairing and family classification.
/// Throws ChannelError when inputs remain open, NumericalFailure on unpaired complex eigenvalues.
ModalResult modal_frequencies(const TitopBlock& model);

struct DimensionlessSetup {
    double eta_by = 0.0, eta_bz = 0.0, eta_tx = 0.0, eta_rx = 0.0;
    double mu = 0.0, alpha = 0.0;

    static DimensionlessSetup from(const BeamProperties& props, double omega, double tip_mass, double offset);
    /// Spin rate giving the requested in-plane bending speed ratio.
    static double omega_for_eta_by(const BeamProperties& props, double eta);
};

/// Characteristic scales, multiply a frequency in rad/s to get a ratio.
double bending_scale(const BeamProperties& props, double J);
double traction_scale(const BeamProperties& props);
double torsion_scale(const BeamProperties& props);

struct FrequencyRatios {
    DimensionlessSetup setup;
    std::vector<double> in_plane, out_of_plane, traction, torsion;
    std::vector<std::string> absences;  // families missing from the modal result
};

FrequencyRatios frequency_ratio(const ModalResult& result, const DimensionlessSetup& setup, const BeamProperties& props);

struct CampbellBranch {
    ModeFamily family;
    int index;                       // 1-based order within the family at the first grid point
    std::vector<double> frequency;   // rad/s, one per retained grid point
};

struct CampbellCurve {
    std::vector<double> omega;
    std::vector<CampbellBranch> branches;
    std::string diagnostic;          // non-empty when the sweep was truncated
};

/// modes_per_family tracked branches for each requested family, matched between grid points by MAC.
CampbellCurve campbell_sweep(const std::function<TitopBlock(double)>& model_at, const std::vector<double>& omega_grid,
                             const std::vector<ModeFamily>& families, int modes_per_family);

struct ResponsePoint {
    double omega = 0.0;
    Eigen::MatrixXcd gain;      // outputs x inputs
    bool pole_on_grid = false;  // gain is infinite; entries are set to +inf
};

/// G(jw) = C (jwI - A)^{-1} B + D.
std::vector<ResponsePoint> frequency_response(const TitopBlock& model, const std::vector<double>& omega_grid);

/// Restricts to one scalar input/output pair of a named channel group.
TitopBlock select_port_channel(const TitopBlock& model, const std::string& input_port, ChannelKind input_kind,
                               int input_component, const std::string& output_port, ChannelKind output_kind,
                               int output_component);

}  // namespace spinbeam
