#include "spinbeam/shapes.hpp"

#include <algorithm>
#include <cmath>

#include "spinbeam/errors.hpp"

namespace spinbeam {

Polynomial::Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int power, double coefficient) {
    std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
    c.back() = coefficient;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

int Polynomial::degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }

Polynomial Polynomial::derivative(int order) const {
    std::vector<double> c = c_;
    for (int k = 0; k < order; ++k) {
        if (c.empty()) break;
        std::vector<double> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
        c = std::move(d);
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::antiderivative() const {
    std::vector<double> c(c_.size() + 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Polynomial(std::move(c));
}

double Polynomial::integrate(double a, double b) const {
    Polynomial P = antiderivative();
    return P(b) - P(a);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return *this * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return Polynomial();
    std::vector<double> c(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(double s) const {
    std::vector<double> c = c_;
    for (double& v : c) v *= s;
    return Polynomial(std::move(c));
}

double integrate_product(const Polynomial& p, const Polynomial& q, int weight_power, double a, double b) {
    if (weight_power < 0) throw InvalidParameter("integrate_product: negative weight power");
    if (a > b) throw InvalidParameter("integrate_product: a > b");
    return (Polynomial::monomial(weight_power) * p * q).integrate(a, b);
}

Eigen::Vector4d ShapeBasis::phi(double x) const {
    return {phi_y[0](x), phi_y[1](x), phi_y[2](x), phi_y[3](x)};
}

Eigen::Vector4d ShapeBasis::dphi(double x) const {
    Eigen::Vector4d v;
    for (int i = 0; i < 4; ++i) v[i] = phi_y[i].derivative()(x);
    return v;
}

Eigen::Vector4d ShapeBasis::ddphi(double x) const {
    Eigen::Vector4d v;
    for (int i = 0; i < 4; ++i) v[i] = phi_y[i].derivative(2)(x);
    return v;
}

ShapeBasis make_shape_basis(double l) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidParameter("make_shape_basis: length must be positive");
    const double l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l;
    ShapeBasis b;
    b.l = l;
    b.phi_y = {Polynomial({0.0, 0.0, 0.5, -1.5 / l, 1.5 / l2, -0.5 / l3}),
               Polynomial({0.0, 0.0, 0.0, 10.0 / l3, -15.0 / l4, 6.0 / l5}),
               Polynomial({0.0, 0.0, 0.0, -4.0 / l2, 7.0 / l3, -3.0 / l4}),
               Polynomial({0.0, 0.0, 0.0, 0.5 / l, -1.0 / l2, 0.5 / l3})};
    b.phi_z = b.phi_y;
    b.tau = Polynomial({0.0, 1.0 / l});
    b.sigma = Polynomial({0.0, 1.0 / l});
    return b;
}

Eigen::Matrix4d gram_matrix(const ShapeBasis& basis, int di, int dj, int weight_power) {
    Eigen::Matrix4d G;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (di == dj && j < i) {
                G(i, j) = G(j, i);  // exactly symmetric
                continue;
            }
            G(i, j) = integrate_product(basis.phi_y[i].derivative(di), basis.phi_y[j].derivative(dj),
                                        weight_power, 0.0, basis.l);
        }
    return G;
}

Eigen::Matrix4d stiffness_integral_matrix(const ShapeBasis& basis, double EJ) {
    if (!(EJ > 0.0)) throw InvalidParameter("stiffness_integral_matrix: EJ must be positive");
    return EJ * gram_matrix(basis, 2, 2);
}

Eigen::Matrix4d GeometricIntegrals::E_y(double x) const {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = e[i][j](x);
    return m;
}

Matrix10d GeometricIntegrals::E_yz(double x) const {
    Matrix10d m = Matrix10d::Zero();
    const Eigen::Matrix4d ey = E_y(x);
    m.block<4, 4>(0, 0) = ey;
    m.block<4, 4>(4, 4) = ey;
    return m;
}

GeometricIntegrals geometric_integral_family(const ShapeBasis& basis, double rhoS) {
    GeometricIntegrals g;
    const Polynomial x = Polynomial::monomial(1);
    Eigen::Matrix4d ei, eix, el;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            g.e[i][j] = (basis.phi_y[i].derivative() * basis.phi_y[j].derivative()).antiderivative();
            ei(i, j) = rhoS * g.e[i][j].integrate(0.0, basis.l);
            eix(i, j) = rhoS * (x * g.e[i][j]).integrate(0.0, basis.l);
            el(i, j) = g.e[i][j](basis.l);
        }
    }
    g.Ei.setZero();
    g.Eix.setZero();
    g.El.setZero();
    for (int b : {0, 4}) {
        g.Ei.block<4, 4>(b, b) = ei;
        g.Eix.block<4, 4>(b, b) = eix;
        g.El.block<4, 4>(b, b) = el;
    }
    return g;
}

}  // namespace spinbeam
