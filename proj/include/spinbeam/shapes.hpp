#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace spinbeam {

/// Real polynomial stored in ascending powers of x.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients);

    static Polynomial constant(double c);
    static Polynomial monomial(int power, double coefficient = 1.0);

    double operator()(double x) const;
    int degree() const;
    const std::vector<double>& coefficients() const { return c_; }

    Polynomial derivative(int order = 1) const;
    /// Antiderivative vanishing at x = 0.
    Polynomial antiderivative() const;
    double integrate(double a, double b) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(double s) const;

private:
    void trim();
    std::vector<double> c_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }

/// Exact value of the integral of x^w p(x) q(x) over [a, b].
double integrate_product(const Polynomial& p, const Polynomial& q, int weight_power, double a, double b);

/// Quintic bending basis (4 members per plane) plus linear traction/torsion fields.
struct ShapeBasis {
    double l = 0.0;
    std::array<Polynomial, 4> phi_y;
    std::array<Polynomial, 4> phi_z;
    Polynomial tau;
    Polynomial sigma;

    Eigen::Vector4d phi(double x) const;
    Eigen::Vector4d dphi(double x) const;
    Eigen::Vector4d ddphi(double x) const;
};

ShapeBasis make_shape_basis(double l);

/// K_b = EJ * int_0^l phi'' phi''^T dx.
Eigen::Matrix4d stiffness_integral_matrix(const ShapeBasis& basis, double EJ);

/// Gram matrix int_0^l x^w phi^(i) phi^(j)^T dx for derivative orders i, j.
Eigen::Matrix4d gram_matrix(const ShapeBasis& basis, int di, int dj, int weight_power = 0);

using Matrix10d = Eigen::Matrix<double, 10, 10>;

/// E_yz(x) = int_0^x phi' phi'^T dr (block diagonal, padded to 10x10) and its
/// weighted integrals over the span.
struct GeometricIntegrals {
    std::array<std::array<Polynomial, 4>, 4> e;  // entries of E_y(x) = E_z(x)
    Matrix10d Ei;   // rhoS * int E_yz(x) dx
    Matrix10d Eix;  // rhoS * int x E_yz(x) dx
    Matrix10d El;   // E_yz(l)

    Eigen::Matrix4d E_y(double x) const;
    Matrix10d E_yz(double x) const;
};

GeometricIntegrals geometric_integral_family(const ShapeBasis& basis, double rhoS = 1.0);

}  // namespace spinbeam
