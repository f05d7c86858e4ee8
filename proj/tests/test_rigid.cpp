#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spinbeam/analysis.hpp"
#include "spinbeam/block.hpp"
#include "spinbeam/errors.hpp"
#include "spinbeam/rigid.hpp"
#include "spinbeam/scenarios.hpp"

using namespace spinbeam;

TEST(Skew, CrossProductIdentities) {
    EXPECT_TRUE((skew({0, 0, 1}) * Eigen::Vector3d(1, 0, 0)).isApprox(Eigen::Vector3d(0, 1, 0)));
    EXPECT_TRUE(skew(Eigen::Vector3d::Zero()).isZero(0.0));
    std::mt19937 rng(3);
    std::normal_distribution<double> n;
    for (int i = 0; i < 10; ++i) {
        const Eigen::Vector3d v(n(rng), n(rng), n(rng)), w(n(rng), n(rng), n(rng));
        EXPECT_LT((skew(v) * w + skew(w) * v).norm(), 1e-15);
    }
}

TEST(DcmTransport, IdentityMountAndComposition) {
    const DcmTransport I = dcm_transport(Eigen::Matrix3d::Identity());
    EXPECT_TRUE(I.wrench.isIdentity(0.0));
    EXPECT_TRUE(I.motion.isIdentity(0.0));
    const DcmTransport F = dcm_transport(Eigen::Vector3d(-1, -1, 1).asDiagonal());
    Vector6d w = Vector6d::Zero();
    w(0) = 1.0;
    Vector6d expected = Vector6d::Zero();
    expected(0) = -1.0;
    EXPECT_TRUE((F.wrench * w).isApprox(expected));

    const Eigen::Matrix3d P1 = Eigen::AngleAxisd(0.3, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
    const Eigen::Matrix3d P2 = Eigen::AngleAxisd(-1.1, Eigen::Vector3d(0, 1, 1).normalized()).toRotationMatrix();
    const DcmTransport a = dcm_transport(P1 * P2), b = dcm_transport(P1), c = dcm_transport(P2);
    EXPECT_LT((a.wrench - b.wrench * c.wrench).norm(), 1e-14);
    EXPECT_LT((a.motion - b.motion * c.motion).norm(), 1e-14);
}

TEST(RigidBody, ParallelAxisInertia) {
    RigidBodyProperties p;
    p.m = 3.0;
    p.J_A = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
    p.AP = {0.5, 0.0, 0.0};
    const Eigen::Matrix3d J = p.J_P();
    EXPECT_NEAR(J(0, 0), 1.0, 1e-14);
    EXPECT_NEAR(J(1, 1), 2.0 + 3.0 * 0.25, 1e-14);
    EXPECT_NEAR(J(2, 2), 3.0 + 3.0 * 0.25, 1e-14);
}

TEST(RigidBody, PointMassNewton) {
    RigidBodyProperties p;
    p.m = 4.0;
    const TitopBlock b = build_rigid_titop(p, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
    EXPECT_EQ(b.n_states(), 0);
    const Eigen::MatrixXd acc_to_wrench = b.D.block(18, 6, 6, 6);
    Matrix6d expected = Matrix6d::Zero();
    expected.topLeftCorner<3, 3>() = -4.0 * Eigen::Matrix3d::Identity();
    EXPECT_TRUE(acc_to_wrench.isApprox(expected));
}

TEST(RigidBody, LeverArmAcceleration) {
    RigidBodyProperties p;
    p.m = 1.0;
    p.PC = {2.5, 0.0, 0.0};
    const TitopBlock b = build_rigid_titop(p, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
    const Eigen::Vector3d acc = b.D.block(0, 6 + 5, 3, 1);
    EXPECT_TRUE(acc.isApprox(Eigen::Vector3d(0.0, 2.5, 0.0)));
}

TEST(RigidBody, GyricCentripetalForce) {
    // X_P is the Jacobian of the quadratic inertial term Q(V), so X_P(V) V = 2 Q(V); the static
    // wrench itself is -Q(V).
    RigidBodyProperties p;
    p.m = 5.0;
    const double r = 2.0, W = 0.5;
    const Eigen::Vector3d v(0, r * W, 0), w(0, 0, W);
    Vector6d V;
    V << v, w;
    const double centripetal = p.m * r * W * W;
    const Vector6d f = gyric_matrix(p, v, w) * V;
    EXPECT_NEAR(f(0), -2.0 * centripetal, 1e-12);
    EXPECT_NEAR(f.tail<5>().norm(), 0.0, 1e-12);
    const Vector6d s = rigid_equilibrium_wrench(p, v, w, Vector6d::Zero());
    EXPECT_NEAR(s(0), centripetal, 1e-12);
    EXPECT_NEAR(s.tail<5>().norm(), 0.0, 1e-12);
}

TEST(RigidBody, GyricMatrixIsJacobianOfInertialTerm) {
    RigidBodyProperties p;
    p.m = 3.0;
    p.J_A << 2.0, 0.1, 0.0, 0.1, 3.0, 0.2, 0.0, 0.2, 4.0;
    p.AP = {0.3, -0.2, 0.5};
    const Eigen::Vector3d v(0.2, -0.4, 0.1), w(0.3, 0.1, -0.7);
    auto Q = [&](const Vector6d& V) -> Vector6d {
        Matrix6d L = Matrix6d::Zero();
        L.block<3, 3>(0, 0) = skew(V.tail<3>());
        L.block<3, 3>(3, 0) = skew(V.head<3>());
        L.block<3, 3>(3, 3) = skew(V.tail<3>());
        return L * p.direct_dynamics() * V;
    };
    Vector6d V0;
    V0 << v, w;
    Matrix6d Jac;
    for (int k = 0; k < 6; ++k) {
        Vector6d e = Vector6d::Zero();
        e(k) = 1e-5;
        Jac.col(k) = (Q(V0 + e) - Q(V0 - e)) / 2e-5;
    }
    EXPECT_LT((gyric_matrix(p, v, w) - Jac).norm(), 1e-9 * Jac.norm());
}

TEST(RigidBody, TipMassEquilibriumWrench) {
    RigidBodyProperties p;
    p.m = 5.0;
    const double R = 52.0, W = 0.5;
    const Vector6d w = rigid_equilibrium_wrench(p, {0, R * W, 0}, {0, 0, W}, Vector6d::Zero());
    EXPECT_NEAR(w(0), 65.0, 1e-12);
}

TEST(RigidBody, ReductionOfReducedBlockFails) {
    RigidBodyProperties p;
    p.m = 1.0;
    const TitopBlock r = reduce_one_port(build_rigid_titop(p, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()));
    EXPECT_EQ(r.n_inputs(), 18);
    EXPECT_EQ(r.n_outputs(), 6);
    EXPECT_THROW(reduce_one_port(r), ChannelError);
}

TEST(MainBody, StaticGainIsInverseInertia) {
    const TitopBlock hub = build_main_body(hub_properties(), {}, Eigen::Vector3d::Zero());
    EXPECT_EQ(hub.n_states(), 12);
    const TitopBlock siso = select_port_channel(hub, "hub.B", ChannelKind::Wrench, 4, "hub.B", ChannelKind::Motion, 4);
    for (const auto& pt : frequency_response(siso, {1e-3, 1.0, 1e3}))
        EXPECT_LT(oracle::rel(pt.gain(0, 0).real(), 1.0 / 570.42), 1e-12);
}

TEST(MainBody, NutationMatchesEulerEquations) {
    const RigidBodyProperties hub = hub_properties();
    for (double W : {0.1, 0.5, 2.0}) {
        const TitopBlock b = build_main_body(hub, {}, Eigen::Vector3d(0, 0, W));
        const double ref = oracle::nutation_frequency(hub.J_A, W);
        EXPECT_NEAR(ref, (1000.0 / 570.42 - 1.0) * W, 1e-9 * W);
        Eigen::EigenSolver<Eigen::MatrixXd> es(b.A);
        double best = 1e300;
        for (const auto& l : es.eigenvalues()) best = std::min(best, std::abs(std::abs(l) - ref));
        EXPECT_LE(best, 1e-8 * ref) << "Omega = " << W;
    }
}

TEST(MainBody, NonSpinningHasSixRigidModes) {
    const TitopBlock hub =
        remove_input(build_main_body(hub_properties(), {}, Eigen::Vector3d::Zero()), "hub.B", ChannelKind::Wrench);
    const ModalResult m = modal_frequencies(hub);
    int zeros = 0;
    for (const auto& l : m.eigenvalues) zeros += std::abs(l) < 1e-12;
    EXPECT_EQ(zeros, 12);
    EXPECT_EQ(m.family_modes(ModeFamily::Rigid).size(), 12u);
}
