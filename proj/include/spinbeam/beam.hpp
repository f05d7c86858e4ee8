#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "spinbeam/block.hpp"
#include "spinbeam/errors.hpp"
#include "spinbeam/rigid.hpp"
#include "spinbeam/shapes.hpp"

namespace spinbeam {

using Vector10d = Eigen::Matrix<double, 10, 1>;
using Vector16d = Eigen::Matrix<double, 16, 1>;
using Matrix16d = Eigen::Matrix<double, 16, 16>;

struct BeamProperties {
    double rho = 0.0, S = 0.0, l = 0.0, E = 0.0, nu = 0.0, G = 0.0;
    double Jy = 0.0, Jz = 0.0, Jpx = 0.0;
    bool G_overridden = false;

    /// G derived from E and nu.
    static BeamProperties make(double rho, double S, double l, double E, double nu, double Jy, double Jz, double Jpx);
    void validate() const;
    double mass() const { return rho * S * l; }
    /// Same section and material with a different length.
    BeamProperties with_length(double length) const;
};

/// Kinematic and load equilibrium at the ports, expressed in the beam frame.
struct EquilibriumState {
    Eigen::Vector3d x_P = Eigen::Vector3d::Zero();
    Eigen::Vector3d Theta_P = Eigen::Vector3d::Zero();
    Eigen::Vector3d v_P = Eigen::Vector3d::Zero();
    Eigen::Vector3d omega_P = Eigen::Vector3d::Zero();
    Vector6d W_C = Vector6d::Zero();  // applied by the child on the beam at C

    // filled by compute_equilibrium
    std::optional<Vector6d> W_P;    // applied by the beam on its parent at P
    std::optional<Vector10d> q_f;   // static elastic coordinates
    bool valid = false;
    double condition = 0.0;         // condition number of the equilibrium system
    std::string diagnostic;
};

/// Elastic coordinate layout q_f = [q_y(4), q_z(4), du, dphi].
struct GeneralizedCoords {
    Eigen::Vector4d q_y = Eigen::Vector4d::Zero();
    Eigen::Vector4d q_z = Eigen::Vector4d::Zero();
    double delta_u = 0.0;
    double delta_phi = 0.0;

    Vector10d stacked() const;
    static GeneralizedCoords from(const Vector10d& q);
};

struct BeamMatrixSet {
    Matrix16d M_T, K_T, G_T, K_V, F_c;
    Vector16d C_Q, C_Qdot;
    Eigen::Matrix<double, 6, 16> M_L, J_L;
    Vector6d C_L;
    Eigen::Matrix<double, 16, 12> N_bar;
    Eigen::Matrix<double, 6, 10> W_C_mat;
    Eigen::Matrix<double, 3, 10> K_c;
    Eigen::Matrix<double, 18, 6> M_l, D_l, K_l;
    Eigen::Matrix<double, 18, 10> M_r, D_r, K_r;
    Eigen::Matrix<double, 6, 10> G_vv, G_vp, G_p;
    Matrix6d tau_CP;
    // assembled second-order model M dQv' + D dQv + K dQp = N_bar [dW_P; dW_C]
    Matrix16d M, D, K;
    // intermediate integrals
    Eigen::Matrix3d M_p, J_P;
    Eigen::Matrix<double, 10, 3> M_m, M_mp, M_mpw;
    Matrix10d M_mm, K_soft, D_soft, E_i, E_ix, E_l;

    Matrix6d M_rr() const { return M.topLeftCorner<6, 6>(); }
    Eigen::Matrix<double, 6, 10> M_rf() const { return M.topRightCorner<6, 10>(); }
    Eigen::Matrix<double, 10, 6> M_fr() const { return M.bottomLeftCorner<10, 6>(); }
    Matrix10d M_ff() const { return M.bottomRightCorner<10, 10>(); }
    Matrix6d D_rr() const { return D.topLeftCorner<6, 6>(); }
    Eigen::Matrix<double, 6, 10> D_rf() const { return D.topRightCorner<6, 10>(); }
    Eigen::Matrix<double, 10, 6> D_fr() const { return D.bottomLeftCorner<10, 6>(); }
    Matrix10d D_ff() const { return D.bottomRightCorner<10, 10>(); }
    Matrix6d K_rr() const { return K.topLeftCorner<6, 6>(); }
    Eigen::Matrix<double, 6, 10> K_rf() const { return K.topRightCorner<6, 10>(); }
    Eigen::Matrix<double, 10, 6> K_fr() const { return K.bottomLeftCorner<10, 6>(); }
    Matrix10d K_ff() const { return K.bottomRightCorner<10, 10>(); }
};

BeamMatrixSet build_matrix_set(const BeamProperties& props, const EquilibriumState& eq);

/// Raised when a beam's static deformation fails the smallness test during propagation.
struct EquilibriumInvalid : ModelInvalid {
    EquilibriumInvalid(const std::string& what, std::string beam, const Vector10d& q, double length)
        : ModelInvalid(what), node(std::move(beam)), q_f(q), l(length) {}
    std::string node;
    Vector10d q_f;
    double l;
};

/// Smallness bounds on the static deformation.
struct EquilibriumLimits {
    double tip_deflection = 0.01;  // times l
    double axial = 0.001;          // times l
    double twist = 0.01;           // rad
};

/// Solves the static equations for W_P and q_f, sets the validity flag, and recomputes
/// W_P from the rigid rows. Throws NumericalFailure when the system is singular.
EquilibriumState compute_equilibrium(const BeamProperties& props, const EquilibriumState& kinematics,
                                     const EquilibriumLimits& limits = {});

struct RayleighDamping {
    double alpha = 0.0;  // 1/s
    double beta = 0.0;   // s
};

/// 20-state model: inputs [dW_C(6); dm_P(18)], outputs [dm_C(18); dW_P(6)].
/// Throws ModelInvalid unless eq carries a valid equilibrium.
TitopBlock build_titop_beam(const BeamProperties& props, const EquilibriumState& eq,
                            const std::optional<RayleighDamping>& damping = std::nullopt,
                            const std::string& name = "beam");

/// First-order DCM of the deformed tip frame relative to the root frame.
Eigen::Matrix3d deformed_frame_dcm(const ShapeBasis& basis, const GeneralizedCoords& q);

}  // namespace spinbeam
