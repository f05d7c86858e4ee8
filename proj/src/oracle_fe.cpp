#include "spinbeam/oracle_fe.hpp"

#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "spinbeam/errors.hpp"

namespace spinbeam {

namespace {

// 4-point Gauss-Legendre rule on [-1, 1]; exact to degree 7.
constexpr std::array<double, 4> kGaussX{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                        0.8611363115940526};
constexpr std::array<double, 4> kGaussW{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                        0.3478548451374538};

// Hermite shape function slopes at local coordinate s in [0, h].
Eigen::Vector4d hermite_slope(double s, double h) {
    const double t = s / h;
    return Eigen::Vector4d((-6.0 * t + 6.0 * t * t) / h, 1.0 - 4.0 * t + 3.0 * t * t, (6.0 * t - 6.0 * t * t) / h,
                           -2.0 * t + 3.0 * t * t);
}

}  // namespace

FeBeamMesh FeBeamMesh::make(const BeamProperties& props, double omega, double m, double r, int n_elements) {
    props.validate();
    if (n_elements < 1) throw InvalidParameter("FE mesh needs at least one element");
    if (!(m >= 0.0)) throw InvalidParameter("FE mesh: tip mass must be non-negative");
    FeBeamMesh mesh;
    mesh.n_elements = n_elements;
    mesh.element_length = props.l / n_elements;
    mesh.l = props.l;
    mesh.r = r;
    mesh.m = m;
    mesh.rhoS = props.rho * props.S;
    mesh.omega = omega;
    return mesh;
}

double FeBeamMesh::axial_force(double x) const {
    return omega * omega * (m * (l + r) + rhoS * (r * (l - x) + 0.5 * (l * l - x * x)));
}

FeSystem fe_assemble(const FeBeamMesh& mesh, double EJ, bool softening) {
    const int nd = 2 * (mesh.n_elements + 1);
    const double h = mesh.element_length;
    Eigen::Matrix4d ke;
    ke << 12, 6 * h, -12, 6 * h, 6 * h, 4 * h * h, -6 * h, 2 * h * h, -12, -6 * h, 12, -6 * h, 6 * h, 2 * h * h,
        -6 * h, 4 * h * h;
    ke *= EJ / (h * h * h);
    Eigen::Matrix4d me;
    me << 156, 22 * h, 54, -13 * h, 22 * h, 4 * h * h, 13 * h, -3 * h * h, 54, 13 * h, 156, -22 * h, -13 * h,
        -3 * h * h, -22 * h, 4 * h * h;
    me *= mesh.rhoS * h / 420.0;

    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nd, nd), M = Eigen::MatrixXd::Zero(nd, nd);
    for (int e = 0; e < mesh.n_elements; ++e) {
        const double x0 = e * h;
        Eigen::Matrix4d kg = Eigen::Matrix4d::Zero();
        for (std::size_t q = 0; q < kGaussX.size(); ++q) {
            const double s = 0.5 * h * (kGaussX[q] + 1.0);
            const Eigen::Vector4d d = hermite_slope(s, h);
            kg += 0.5 * h * kGaussW[q] * mesh.axial_force(x0 + s) * d * d.transpose();
        }
        Eigen::Matrix4d kt = ke + kg;
        if (softening) kt -= mesh.omega * mesh.omega * me;
        K.block<4, 4>(2 * e, 2 * e) += kt;
        M.block<4, 4>(2 * e, 2 * e) += me;
    }
    M(nd - 2, nd - 2) += mesh.m;
    if (softening) K(nd - 2, nd - 2) -= mesh.omega * mesh.omega * mesh.m;
    return {K.bottomRightCorner(nd - 2, nd - 2), M.bottomRightCorner(nd - 2, nd - 2)};
}

namespace {

std::vector<double> solve(const FeSystem& s) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(s.K, s.M);
    if (es.info() != Eigen::Success) throw NumericalFailure("FE oracle: mass matrix is singular");
    std::vector<double> f;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()(i);
        if (ev < 0.0) throw NumericalFailure("FE oracle: negative stiffness eigenvalue (buckled by softening)");
        f.push_back(std::sqrt(ev));
    }
    return f;
}

}  // namespace

std::vector<double> fe_out_of_plane_frequencies(const BeamProperties& props, double omega, double m, double r,
                                                int n_elements) {
    return solve(fe_assemble(FeBeamMesh::make(props, omega, m, r, n_elements), props.E * props.Jy, false));
}

std::vector<double> fe_in_plane_frequencies(const BeamProperties& props, double omega, double m, double r,
                                            int n_elements) {
    return solve(fe_assemble(FeBeamMesh::make(props, omega, m, r, n_elements), props.E * props.Jz, true));
}

}  // namespace spinbeam
