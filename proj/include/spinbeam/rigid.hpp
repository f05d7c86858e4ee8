#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinbeam/block.hpp"

namespace spinbeam {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix18d = Eigen::Matrix<double, 18, 18>;

Eigen::Matrix3d skew(const Eigen::Vector3d& v);

/// tau_PB = [I, (*PB); 0, I]: moves a motion from B to P.
Matrix6d kinematic_transport(const Eigen::Vector3d& PB);

/// diag(tau_CP, tau_CP, I6).
Matrix18d motion_transport(const Eigen::Vector3d& CP);

struct DcmTransport {
    Matrix6d wrench;   // P^{x2}
    Matrix18d motion;  // P^{x6}
};

/// Block-diagonal expansions of a direction cosine matrix.
DcmTransport dcm_transport(const Eigen::Matrix3d& dcm);

struct RigidBodyProperties {
    double m = 0.0;
    Eigen::Matrix3d J_A = Eigen::Matrix3d::Zero();  // inertia at the center of mass A
    Eigen::Vector3d AP = Eigen::Vector3d::Zero();   // from A to the port P
    Eigen::Vector3d PC = Eigen::Vector3d::Zero();   // from P to the child point C

    void validate() const;
    /// Inertia at P: J_A - m (*AP)^2.
    Eigen::Matrix3d J_P() const;
    /// D_P = [m I, m (*AP); -m (*AP), J_P].
    Matrix6d direct_dynamics() const;
};

/// Gyric matrix X_P(v_bar, omega_bar).
Matrix6d gyric_matrix(const RigidBodyProperties& props, const Eigen::Vector3d& v_bar, const Eigen::Vector3d& omega_bar);

/// Equilibrium wrench at P given the equilibrium wrench applied on the body at C.
Vector6d rigid_equilibrium_wrench(const RigidBodyProperties& props, const Eigen::Vector3d& v_bar,
                                  const Eigen::Vector3d& omega_bar, const Vector6d& W_C);

/// Static 24x24 model: inputs [dW_C(6); dm_P(18)], outputs [dm_C(18); dW_P(6)].
TitopBlock build_rigid_titop(const RigidBodyProperties& props, const Eigen::Vector3d& v_bar,
                             const Eigen::Vector3d& omega_bar, const std::string& name = "rigid");

/// Keeps the direct dynamics at P only (inputs dm_P, outputs dW_P).
TitopBlock reduce_one_port(const TitopBlock& block);

struct MainBodyPort {
    std::string name;             // port label, e.g. "C1"
    Eigen::Vector3d BC;           // from the center of mass B to the port point, body frame
};

/// Twelfth-order inverse model of the main body at its center of mass.
/// State [dv_B, dw_B, dx_B, dTheta_B]; inputs: external wrench at B then one wrench per port;
/// outputs: dm_B then dm_C for every port.
TitopBlock build_main_body(const RigidBodyProperties& props, const std::vector<MainBodyPort>& ports,
                           const Eigen::Vector3d& omega_bar, const std::string& name = "hub");

}  // namespace spinbeam
