#pragma once
// Independent reference computations used by the tests. Nothing here calls into the library's
// model builders; only plain Eigen.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Composite Simpson rule with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Central-difference Jacobian of the torque-free Euler equations J w' = -w x J w at w0.
inline Eigen::Matrix3d euler_jacobian(const Eigen::Matrix3d& J, const Eigen::Vector3d& w0, double h = 1e-6) {
    const Eigen::Matrix3d Ji = J.inverse();
    auto f = [&](const Eigen::Vector3d& w) -> Eigen::Vector3d { return -Ji * w.cross(J * w); };
    Eigen::Matrix3d Jac;
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e(k) = h;
        Jac.col(k) = (f(w0 + e) - f(w0 - e)) / (2.0 * h);
    }
    return Jac;
}

/// Largest |Im| among the eigenvalues of the Euler-equation Jacobian.
inline double nutation_frequency(const Eigen::Matrix3d& J, double omega) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(euler_jacobian(J, Eigen::Vector3d(0, 0, omega)));
    double w = 0.0;
    for (int i = 0; i < 3; ++i) w = std::max(w, std::abs(es.eigenvalues()(i).imag()));
    return w;
}

/// Moment of inertia about the y axis through the origin of a uniform rod along x on [a, b]
/// plus point masses at given x stations.
inline double rod_Jyy(double line_density, double a, double b, const std::vector<std::pair<double, double>>& points = {}) {
    double J = line_density * (b * b * b - a * a * a) / 3.0;
    for (const auto& [m, x] : points) J += m * x * x;
    return J;
}

/// Tip displacement of a clamped rod [0, l] under distributed axial load q(x) and tip force F,
/// linear finite elements with n elements and nodal loads from Simpson quadrature.
inline double static_rod_tip(double EA, double l, const std::function<double(double)>& q, double F, int n = 400) {
    const double h = l / n;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    for (int e = 0; e < n; ++e) {
        const double x0 = e * h, x1 = x0 + h;
        const double f0 = simpson([&](double x) { return q(x) * (x1 - x) / h; }, x0, x1, 20);
        const double f1 = simpson([&](double x) { return q(x) * (x - x0) / h; }, x0, x1, 20);
        const int i = e - 1, j = e;  // free DOF indices, node 0 clamped
        if (i >= 0) {
            K(i, i) += EA / h;
            K(i, j) -= EA / h;
            K(j, i) -= EA / h;
            f(i) += f0;
        }
        K(j, j) += EA / h;
        f(j) += f1;
    }
    f(n - 1) += F;
    return K.ldlt().solve(f)(n - 1);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace oracle
