#include "spinbeam/rigid.hpp"

#include <cmath>

#include "spinbeam/errors.hpp"

namespace spinbeam {

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
    Eigen::Matrix3d s;
    s << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
    return s;
}

Matrix6d kinematic_transport(const Eigen::Vector3d& PB) {
    Matrix6d t = Matrix6d::Identity();
    t.block<3, 3>(0, 3) = skew(PB);
    return t;
}

Matrix18d motion_transport(const Eigen::Vector3d& CP) {
    Matrix18d u = Matrix18d::Identity();
    const Matrix6d t = kinematic_transport(CP);
    u.block<6, 6>(0, 0) = t;
    u.block<6, 6>(6, 6) = t;
    return u;
}

DcmTransport dcm_transport(const Eigen::Matrix3d& dcm) {
    if (!dcm.allFinite() || !(dcm.transpose() * dcm - Eigen::Matrix3d::Identity()).isZero(1e-9) ||
        std::abs(dcm.determinant() - 1.0) > 1e-9)
        throw InvalidParameter("dcm_transport: matrix is not a rotation");
    DcmTransport t;
    t.wrench.setZero();
    t.motion.setZero();
    for (int k = 0; k < 2; ++k) t.wrench.block<3, 3>(3 * k, 3 * k) = dcm;
    for (int k = 0; k < 3; ++k) t.motion.block<6, 6>(6 * k, 6 * k) = t.wrench;
    return t;
}

void RigidBodyProperties::validate() const {
    if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidParameter("rigid body: mass must be non-negative");
    if (!J_A.allFinite() || !(J_A - J_A.transpose()).isZero(1e-12 * (1.0 + J_A.norm())))
        throw InvalidParameter("rigid body: inertia must be symmetric");
    if (!J_A.isZero(0.0)) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(J_A);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw InvalidParameter("rigid body: inertia must be positive definite or zero");
    }
    if (!AP.allFinite() || !PC.allFinite()) throw InvalidParameter("rigid body: non-finite geometry");
}

Eigen::Matrix3d RigidBodyProperties::J_P() const {
    const Eigen::Matrix3d s = skew(AP);
    return J_A - m * s * s;
}

Matrix6d RigidBodyProperties::direct_dynamics() const {
    const Eigen::Matrix3d s = skew(AP);
    Matrix6d d;
    d << m * Eigen::Matrix3d::Identity(), m * s, -m * s, J_P();
    return d;
}

Matrix6d gyric_matrix(const RigidBodyProperties& p, const Eigen::Vector3d& v, const Eigen::Vector3d& w) {
    const Eigen::Matrix3d sw = skew(w), sv = skew(v), sAP = skew(p.AP);
    const Eigen::Matrix3d JP = p.J_P();
    Matrix6d X;
    X.block<3, 3>(0, 0) = p.m * sw;
    X.block<3, 3>(0, 3) = p.m * (2.0 * sw * sAP - sAP * sw - sv);
    X.block<3, 3>(3, 0) = -p.m * sAP * sw;
    X.block<3, 3>(3, 3) = p.m * sAP * sv + sw * JP - skew(JP * w);
    return X;
}

Vector6d rigid_equilibrium_wrench(const RigidBodyProperties& p, const Eigen::Vector3d& v, const Eigen::Vector3d& w,
                                  const Vector6d& W_C) {
    Matrix6d L = Matrix6d::Zero();
    L.block<3, 3>(0, 0) = skew(w);
    L.block<3, 3>(3, 0) = skew(v);
    L.block<3, 3>(3, 3) = skew(w);
    Vector6d V;
    V << v, w;
    return kinematic_transport(-p.PC).transpose() * W_C - L * p.direct_dynamics() * V;
}

TitopBlock build_rigid_titop(const RigidBodyProperties& props, const Eigen::Vector3d& v_bar,
                             const Eigen::Vector3d& omega_bar, const std::string& name) {
    props.validate();
    const Matrix6d tau_CP = kinematic_transport(-props.PC);
    TitopBlock b;
    b.name = name;
    b.A.resize(0, 0);
    b.B.resize(0, 24);
    b.C.resize(24, 0);
    b.D = Eigen::MatrixXd::Zero(24, 24);
    b.D.block<18, 18>(0, 6) = motion_transport(-props.PC);
    b.D.block<6, 6>(18, 0) = tau_CP.transpose();
    b.D.block<6, 6>(18, 6) = -props.direct_dynamics();
    b.D.block<6, 6>(18, 12) = -gyric_matrix(props, v_bar, omega_bar);
    b.inputs = {{name + ".C", ChannelKind::Wrench, name}, {name + ".P", ChannelKind::Motion, name}};
    b.outputs = {{name + ".C", ChannelKind::Motion, name}, {name + ".P", ChannelKind::Wrench, name}};
    return b;
}

TitopBlock reduce_one_port(const TitopBlock& block) {
    if (block.n_inputs() != 24 || block.n_outputs() != 24 || block.n_states() != 0 || block.inputs.size() != 2 ||
        block.inputs[0].kind != ChannelKind::Wrench || block.inputs[1].kind != ChannelKind::Motion)
        throw ChannelError("reduce_one_port: expects a static 24x24 two-port block");
    TitopBlock r = remove_input(block, block.inputs[0].port, ChannelKind::Wrench);
    return remove_output(r, block.outputs[0].port, ChannelKind::Motion);
}

TitopBlock build_main_body(const RigidBodyProperties& props, const std::vector<MainBodyPort>& ports,
                           const Eigen::Vector3d& omega_bar, const std::string& name) {
    props.validate();
    if (props.m <= 0.0 || props.J_A.isZero(0.0)) throw InvalidParameter("main body: mass and inertia must be positive");
    const double spin = omega_bar.z();
    if (std::abs(omega_bar.x()) > 1e-12 * (1.0 + std::abs(spin)) ||
        std::abs(omega_bar.y()) > 1e-12 * (1.0 + std::abs(spin)))
        throw ModelInvalid("main body: only equilibria spinning about z are supported");

    RigidBodyProperties atB = props;
    atB.AP.setZero();
    const Matrix6d DB = atB.direct_dynamics();
    const Matrix6d DBinv = DB.inverse();
    const Matrix6d XB = gyric_matrix(atB, Eigen::Vector3d::Zero(), omega_bar);
    Matrix6d H = Matrix6d::Zero();
    H.block<3, 3>(0, 0) = skew(omega_bar);
    H.block<3, 3>(3, 3) = skew(omega_bar);

    const int np = static_cast<int>(ports.size());
    const int nu = 6 * (1 + np), ny = 18 * (1 + np);
    TitopBlock b;
    b.name = name;
    b.A = Eigen::MatrixXd::Zero(12, 12);
    b.A.block<6, 6>(0, 0) = -DBinv * XB;
    b.A.block<6, 6>(6, 0) = Matrix6d::Identity();
    b.A.block<6, 6>(6, 6) = -H;

    Eigen::MatrixXd Bw = Eigen::MatrixXd::Zero(6, nu);
    Bw.block<6, 6>(0, 0) = Matrix6d::Identity();
    for (int i = 0; i < np; ++i)
        Bw.block<6, 6>(0, 6 * (i + 1)) = kinematic_transport(-ports[i].BC).transpose();
    b.B = Eigen::MatrixXd::Zero(12, nu);
    b.B.topRows(6) = DBinv * Bw;

    // dm_B = [dv', dw', dv, dw, dx, dTheta]
    Eigen::MatrixXd CB = Eigen::MatrixXd::Zero(18, 12);
    Eigen::MatrixXd DBo = Eigen::MatrixXd::Zero(18, nu);
    CB.topRows(6) = b.A.topRows(6);
    CB.block<12, 12>(6, 0) = Eigen::MatrixXd::Identity(12, 12);
    DBo.topRows(6) = b.B.topRows(6);

    b.C = Eigen::MatrixXd::Zero(ny, 12);
    b.D = Eigen::MatrixXd::Zero(ny, nu);
    b.C.topRows(18) = CB;
    b.D.topRows(18) = DBo;
    b.inputs.push_back({name + ".B", ChannelKind::Wrench, name});
    b.outputs.push_back({name + ".B", ChannelKind::Motion, name});
    for (int i = 0; i < np; ++i) {
        const Matrix18d ups = motion_transport(-ports[i].BC);
        b.C.block(18 * (i + 1), 0, 18, 12) = ups * CB;
        b.D.block(18 * (i + 1), 0, 18, nu) = ups * DBo;
        b.inputs.push_back({name + "." + ports[i].name, ChannelKind::Wrench, name});
        b.outputs.push_back({name + "." + ports[i].name, ChannelKind::Motion, name});
    }
    const double sm = std::sqrt(props.m);
    for (int i = 0; i < 6; ++i) b.states.push_back({StateFamily::Rate, 0.0, name});
    for (int i = 0; i < 3; ++i) b.states.push_back({StateFamily::Rigid, sm, name});
    for (int i = 0; i < 3; ++i) b.states.push_back({StateFamily::Rigid, std::sqrt(props.J_A(i, i)), name});
    return b;
}

}  // namespace spinbeam
