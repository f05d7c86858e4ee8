#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spinbeam/assembly.hpp"
#include "spinbeam/beam.hpp"
#include "spinbeam/errors.hpp"
#include "spinbeam/scenarios.hpp"

using namespace spinbeam;

namespace {

EquilibriumState spinning(double r, double omega, double tip_force = 0.0) {
    EquilibriumState k;
    k.x_P = {r, 0.0, 0.0};
    k.v_P = {0.0, r * omega, 0.0};
    k.omega_P = {0.0, 0.0, omega};
    k.W_C(0) = tip_force;
    return k;
}

TitopBlock clamped_free(const TitopBlock& b) {
    return apply_boundary(apply_boundary(b, Closure::Clamp, b.name + ".P"), Closure::Free, b.name + ".C");
}

Eigen::VectorXcd spectrum(const TitopBlock& b) { return Eigen::EigenSolver<Eigen::MatrixXd>(b.A).eigenvalues(); }

}  // namespace

TEST(BeamProperties, ShearModulusAndValidation) {
    const BeamProperties p = boom_beam();
    EXPECT_NEAR(p.G, p.E / (2.0 * (1.0 + p.nu)), 1e-9 * p.G);
    EXPECT_NO_THROW(p.validate());
    BeamProperties bad = p;
    bad.S = -1.0;
    EXPECT_THROW(bad.validate(), InvalidParameter);
    bad = p;
    bad.nu = 0.5;
    EXPECT_THROW(bad.validate(), InvalidParameter);
    bad = p;
    bad.G *= 1.01;
    EXPECT_THROW(bad.validate(), InvalidParameter);
}

TEST(BeamMatrices, NonSpinningHasNoGyroscopicTerms) {
    const BeamMatrixSet s = build_matrix_set(boom_beam(), EquilibriumState{});
    EXPECT_TRUE(s.K_T.isZero(0.0));
    EXPECT_TRUE(s.G_T.isZero(0.0));
    EXPECT_TRUE(s.C_Q.isZero(0.0));
    EXPECT_TRUE(s.M_L.isZero(0.0));
    EXPECT_TRUE(s.J_L.isZero(0.0));
    EXPECT_TRUE(s.C_L.isZero(0.0));
}

TEST(BeamMatrices, MassMatrixSymmetricPositiveAndCarriesBeamMass) {
    for (double omega : {0.0, 0.5, 2.0}) {
        const BeamMatrixSet s = build_matrix_set(boom_beam(), spinning(2.0, omega));
        EXPECT_LT((s.M_T - s.M_T.transpose()).norm(), 1e-12 * s.M_T.norm());
        Eigen::SelfAdjointEigenSolver<Matrix16d> es(0.5 * (s.M_T + s.M_T.transpose()));
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
        EXPECT_TRUE((s.M_T.topLeftCorner<3, 3>() - 42.39 * Eigen::Matrix3d::Identity()).isZero(1e-9));
    }
}

TEST(BeamMatrices, GyroscopicPartIsSkew) {
    const BeamMatrixSet s = build_matrix_set(boom_beam(), spinning(2.0, 0.7));
    const Matrix16d Gs = 0.5 * (s.G_T.transpose() - s.G_T);
    EXPECT_TRUE((Gs + Gs.transpose()).isZero(0.0));
    EXPECT_GT(Gs.norm(), 0.0);
}

TEST(BeamMatrices, ElasticStiffnessLayout) {
    const BeamProperties p = boom_beam();
    const BeamMatrixSet s = build_matrix_set(p, EquilibriumState{});
    EXPECT_TRUE((s.K_V.topLeftCorner<6, 16>().isZero(0.0)));
    EXPECT_NEAR(s.K_V(14, 14), p.E * p.S / p.l, 1e-9 * p.E * p.S / p.l);
    EXPECT_NEAR(s.K_V(15, 15), p.G * p.Jpx / p.l, 1e-9 * p.G * p.Jpx / p.l);
    EXPECT_TRUE((s.K_V.block<4, 4>(6, 10).isZero(0.0)));
    Eigen::SelfAdjointEigenSolver<Matrix16d> es(s.K_V);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9 * s.K_V.norm());
}

TEST(BeamEquilibrium, UnloadedStaticBeam) {
    const EquilibriumState e = compute_equilibrium(boom_beam(), EquilibriumState{});
    ASSERT_TRUE(e.W_P && e.q_f);
    EXPECT_TRUE(e.W_P->isZero(0.0));
    EXPECT_TRUE(e.q_f->isZero(0.0));
    EXPECT_TRUE(e.valid);
}

TEST(BeamEquilibrium, AxialStretchMatchesStaticRod) {
    const BeamProperties p = boom_beam();
    const double r = 2.0, omega = 0.5, m = 5.0;
    const double F = m * (p.l + r) * omega * omega;
    EXPECT_DOUBLE_EQ(F, 65.0);
    const EquilibriumState e = compute_equilibrium(p, spinning(r, omega, F));
    ASSERT_TRUE(e.q_f);
    const double rhoS = p.rho * p.S;
    const double ref =
        oracle::static_rod_tip(p.E * p.S, p.l, [&](double x) { return rhoS * omega * omega * (r + x); }, F);
    EXPECT_LT(oracle::rel((*e.q_f)(8), ref), 0.02);
    EXPECT_TRUE(e.valid);
}

TEST(BeamEquilibrium, BareBeamRootWrenchIsCentrifugalResultant) {
    // W_P is the wrench the beam applies on its parent: the outward centrifugal pull.
    const BeamProperties p = boom_beam();
    const double r = 2.0, omega = 0.5;
    const EquilibriumState e = compute_equilibrium(p, spinning(r, omega));
    const double ref = p.rho * p.S * omega * omega * (r * p.l + p.l * p.l / 2.0);
    EXPECT_LT(oracle::rel((*e.W_P)(0), ref), 1e-9);
    EXPECT_NEAR((*e.W_P).tail<5>().norm(), 0.0, 1e-9 * ref);
}

TEST(BeamEquilibrium, LargeDeformationIsFlaggedInvalid) {
    const BeamProperties p = boom_beam();
    const EquilibriumState e = compute_equilibrium(p, spinning(2.0, 0.5, 5e6));
    EXPECT_FALSE(e.valid);
    EXPECT_FALSE(e.diagnostic.empty());
    EXPECT_THROW(build_titop_beam(p, e), ModelInvalid);
    EXPECT_THROW(build_titop_beam(p, EquilibriumState{}), ModelInvalid);
}

TEST(BeamModel, Dimensions) {
    const BeamProperties p = boom_beam();
    const TitopBlock b = build_titop_beam(p, compute_equilibrium(p, EquilibriumState{}));
    EXPECT_EQ(b.n_states(), 20);
    EXPECT_EQ(b.n_inputs(), 24);
    EXPECT_EQ(b.n_outputs(), 24);
    EXPECT_EQ(b.input_offset("beam.C", ChannelKind::Wrench), 0);
    EXPECT_EQ(b.input_offset("beam.P", ChannelKind::Motion), 6);
    EXPECT_EQ(b.output_offset("beam.C", ChannelKind::Motion), 0);
    EXPECT_EQ(b.output_offset("beam.P", ChannelKind::Wrench), 18);
}

TEST(BeamModel, UndampedNonSpinningSpectrumIsOscillatory) {
    const BeamProperties p = boom_beam();
    const TitopBlock b = clamped_free(build_titop_beam(p, compute_equilibrium(p, EquilibriumState{})));
    for (const auto& l : spectrum(b)) EXPECT_LE(std::abs(l.real()), 1e-8 * std::abs(l));
}

TEST(BeamModel, RayleighDampingMakesElasticModesStable) {
    const BeamProperties p = boom_beam();
    const TitopBlock b = clamped_free(build_titop_beam(p, compute_equilibrium(p, spinning(2.0, 0.5)), kBoomDamping));
    for (const auto& l : spectrum(b)) EXPECT_LT(l.real(), 0.0);
}

TEST(BeamModel, SingleElementClassicalCantilever) {
    const BeamProperties p = table_beam();
    const TitopBlock b = clamped_free(build_titop_beam(p, compute_equilibrium(p, EquilibriumState{})));
    const double scale = std::sqrt(p.rho * p.S * std::pow(p.l, 4) / (p.E * p.Jz));
    double wmin = 1e300;
    for (const auto& l : spectrum(b)) wmin = std::min(wmin, std::abs(l));
    EXPECT_LT(oracle::rel(wmin * scale, 3.5160), 5e-4);
}

TEST(DeformedFrame, IdentityAndSlopeEntry) {
    const ShapeBasis b = make_shape_basis(2.0);
    EXPECT_TRUE(deformed_frame_dcm(b, GeneralizedCoords{}).isIdentity(0.0));
    GeneralizedCoords q;
    q.q_y(2) = 1e-3;
    EXPECT_NEAR(deformed_frame_dcm(b, q)(1, 0), 1e-3, 1e-15);
}

TEST(DeformedFrame, NearOrthogonalForSmallCoordinates) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    const ShapeBasis b = make_shape_basis(1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Vector10d v;
        for (int i = 0; i < 10; ++i) v(i) = u(rng);
        const GeneralizedCoords q = GeneralizedCoords::from(v);
        const Eigen::Matrix3d P = deformed_frame_dcm(b, q);
        const double tz = b.dphi(1.0).dot(q.q_y), ty = b.dphi(1.0).dot(q.q_z);
        const double qeff2 = tz * tz + ty * ty + q.delta_phi * q.delta_phi;
        EXPECT_LE((P.transpose() * P - Eigen::Matrix3d::Identity()).norm(), 2.0 * qeff2 + 1e-15);
    }
}

TEST(GeneralizedCoords, StackRoundTrip) {
    Vector10d v;
    for (int i = 0; i < 10; ++i) v(i) = i + 1.0;
    const GeneralizedCoords q = GeneralizedCoords::from(v);
    EXPECT_DOUBLE_EQ(q.delta_u, 9.0);
    EXPECT_DOUBLE_EQ(q.delta_phi, 10.0);
    EXPECT_TRUE(q.stacked() == v);
}
