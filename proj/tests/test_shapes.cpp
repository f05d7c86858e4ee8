#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spinbeam/shapes.hpp"

using namespace spinbeam;

TEST(Shapes, FirstBasisCoefficientsAtUnitLength) {
    const ShapeBasis b = make_shape_basis(1.0);
    const std::vector<double> expected{0.0, 0.0, 0.5, -1.5, 1.5, -0.5};
    const auto& c = b.phi_y[0].coefficients();
    ASSERT_EQ(c.size(), expected.size());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i], expected[i], 1e-14);
    EXPECT_NEAR(b.phi_y[0](1.0), 0.0, 1e-14);
}

TEST(Shapes, InterpolationConditions) {
    for (double l : {0.5, 2.0, 50.0}) {
        const ShapeBasis b = make_shape_basis(l);
        EXPECT_TRUE(b.phi(0.0).isZero(0.0));
        EXPECT_NEAR(b.phi(l)(1), 1.0, 1e-12);    // tip deflection
        EXPECT_NEAR(b.dphi(l)(2), 1.0, 1e-12);   // tip slope
        EXPECT_NEAR(b.ddphi(l)(3), 1.0, 1e-12);  // tip curvature
        EXPECT_NEAR(b.ddphi(0.0)(0), 1.0, 1e-12);
        EXPECT_NEAR(b.tau(l), 1.0, 1e-14);
        EXPECT_NEAR(b.sigma(l), 1.0, 1e-14);
    }
}

TEST(Shapes, IntegrateProductTrivialCases) {
    const Polynomial one = Polynomial::constant(1.0);
    const Polynomial x = Polynomial::monomial(1);
    EXPECT_DOUBLE_EQ(integrate_product(one, one, 0, 0.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(integrate_product(x, x, 1, 0.0, 1.0), 0.25);
}

TEST(Shapes, IntegrateProductAgainstSimpson) {
    const ShapeBasis b = make_shape_basis(1.0);
    const Polynomial& p = b.phi_y[1];
    const double exact = integrate_product(p, p, 0, 0.0, 1.0);
    const double ref = oracle::simpson([&](double x) { return p(x) * p(x); }, 0.0, 1.0);
    EXPECT_LT(oracle::rel(exact, ref), 1e-12);
}

TEST(Shapes, StiffnessMatrixEntryAgainstSimpson) {
    const ShapeBasis b = make_shape_basis(1.0);
    const Eigen::Matrix4d K = stiffness_integral_matrix(b, 1.0);
    const Polynomial dd = b.phi_y[1].derivative(2);
    // sextic integrand: 2000 intervals leave a 5e-12 quadrature error, so refine the oracle
    const double ref = oracle::simpson([&](double x) { return dd(x) * dd(x); }, 0.0, 1.0, 20000);
    EXPECT_LT(oracle::rel(K(1, 1), ref), 1e-12);
}

TEST(Shapes, StiffnessSymmetricAndLinearInEJ) {
    const ShapeBasis b = make_shape_basis(3.0);
    const Eigen::Matrix4d K1 = stiffness_integral_matrix(b, 1.7);
    const Eigen::Matrix4d K2 = stiffness_integral_matrix(b, 3.4);
    EXPECT_TRUE((K1 - K1.transpose()).isZero(0.0));
    EXPECT_LT((K2 - 2.0 * K1).norm(), 1e-12 * K2.norm());
}

TEST(Shapes, GeometricIntegralsVanishAtRootAndArePsd) {
    const ShapeBasis b = make_shape_basis(1.0);
    const GeometricIntegrals g = geometric_integral_family(b, 1.0);
    EXPECT_TRUE(g.E_y(0.0).isZero(0.0));
    const Eigen::Matrix4d El = g.E_y(1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(El);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12 * El.norm());
    const Polynomial d = b.phi_y[1].derivative();
    const double ref = oracle::simpson([&](double x) { return d(x) * d(x); }, 0.0, 1.0);
    EXPECT_LT(oracle::rel(El(1, 1), ref), 1e-12);
}

TEST(Shapes, GeometricIntegralWeightsAgainstSimpson) {
    const double rhoS = 2.5, l = 2.0;
    const ShapeBasis b = make_shape_basis(l);
    const GeometricIntegrals g = geometric_integral_family(b, rhoS);
    const double ei = oracle::simpson([&](double x) { return g.E_y(x)(2, 3); }, 0.0, l);
    const double eix = oracle::simpson([&](double x) { return x * g.E_y(x)(2, 3); }, 0.0, l);
    EXPECT_LT(oracle::rel(g.Ei(2, 3), rhoS * ei), 1e-10);
    EXPECT_LT(oracle::rel(g.Eix(6, 7), rhoS * eix), 1e-10);
}
