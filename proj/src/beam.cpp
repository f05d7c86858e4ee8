#include "spinbeam/beam.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "spinbeam/errors.hpp"

namespace spinbeam {

namespace {

using PolyVec = std::array<Polynomial, 10>;

// Columns of M1(x) (10x3): displacement field u = M1^T(x) q_f.
std::array<PolyVec, 3> m1_columns(const ShapeBasis& b) {
    std::array<PolyVec, 3> m1;
    m1[0][8] = b.tau;
    for (int i = 0; i < 4; ++i) {
        m1[1][i] = b.phi_y[i];
        m1[2][4 + i] = b.phi_z[i];
    }
    return m1;
}

// M2^T(x) evaluated at a point (3x10): small rotation field.
Eigen::Matrix<double, 3, 10> m2t_at(const ShapeBasis& b, double x) {
    Eigen::Matrix<double, 3, 10> m = Eigen::Matrix<double, 3, 10>::Zero();
    m(0, 9) = b.sigma(x);
    for (int i = 0; i < 4; ++i) {
        m(1, 4 + i) = -b.phi_z[i].derivative()(x);
        m(2, i) = b.phi_y[i].derivative()(x);
    }
    return m;
}

Eigen::Matrix<double, 10, 3> m1_at(const std::array<PolyVec, 3>& m1, double x) {
    Eigen::Matrix<double, 10, 3> m;
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 10; ++i) m(i, a) = m1[a][i](x);
    return m;
}

// int_0^l x^w M1[:,a] M1[:,b]^T dx
Matrix10d m1_gram(const std::array<PolyVec, 3>& m1, int a, int b, int w, double l) {
    Matrix10d g;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) g(i, j) = integrate_product(m1[a][i], m1[b][j], w, 0.0, l);
    return g;
}

Eigen::Matrix<double, 10, 1> m1_moment(const std::array<PolyVec, 3>& m1, int a, int w, double l) {
    Eigen::Matrix<double, 10, 1> v;
    for (int i = 0; i < 10; ++i) v(i) = integrate_product(m1[a][i], Polynomial::constant(1.0), w, 0.0, l);
    return v;
}

}  // namespace

BeamProperties BeamProperties::make(double rho, double S, double l, double E, double nu, double Jy, double Jz,
                                    double Jpx) {
    BeamProperties p;
    p.rho = rho;
    p.S = S;
    p.l = l;
    p.E = E;
    p.nu = nu;
    p.G = E / (2.0 * (1.0 + nu));
    p.Jy = Jy;
    p.Jz = Jz;
    p.Jpx = Jpx;
    return p;
}

void BeamProperties::validate() const {
    for (double v : {rho, S, l, E, G, Jy, Jz, Jpx})
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameter("beam: rho, S, l, E, G, Jy, Jz, Jpx must be positive");
    if (!(nu >= 0.0 && nu < 0.5)) throw InvalidParameter("beam: Poisson ratio must lie in [0, 0.5)");
    if (!G_overridden && std::abs(G - E / (2.0 * (1.0 + nu))) > 1e-9 * G)
        throw InvalidParameter("beam: G inconsistent with E and nu (set G_overridden to keep it)");
}

BeamProperties BeamProperties::with_length(double length) const {
    BeamProperties p = *this;
    p.l = length;
    return p;
}

Vector10d GeneralizedCoords::stacked() const {
    Vector10d q;
    q << q_y, q_z, delta_u, delta_phi;
    return q;
}

GeneralizedCoords GeneralizedCoords::from(const Vector10d& q) {
    GeneralizedCoords g;
    g.q_y = q.segment<4>(0);
    g.q_z = q.segment<4>(4);
    g.delta_u = q(8);
    g.delta_phi = q(9);
    return g;
}

BeamMatrixSet build_matrix_set(const BeamProperties& props, const EquilibriumState& eq) {
    props.validate();
    const double l = props.l, rs = props.rho * props.S, m = rs * l;
    const ShapeBasis basis = make_shape_basis(l);
    const auto m1 = m1_columns(basis);
    const Eigen::Vector3d& v = eq.v_P;
    const Eigen::Vector3d& w = eq.omega_P;
    const Vector6d& Wc = eq.W_C;
    const Eigen::Matrix3d sw = skew(w), sv = skew(v);
    const Eigen::Matrix3d sx = skew(Eigen::Vector3d::UnitX());  // *P0 = x * sx

    BeamMatrixSet s;
    std::array<std::array<Matrix10d, 3>, 3> I;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) I[a][b] = m1_gram(m1, a, b, 0, l);
    std::array<Eigen::Matrix<double, 10, 1>, 3> mom0, mom1;
    for (int a = 0; a < 3; ++a) {
        mom0[a] = m1_moment(m1, a, 0, l);
        mom1[a] = m1_moment(m1, a, 1, l);
    }

    s.M_p = rs * (l * l / 2.0) * sx;
    for (int a = 0; a < 3; ++a) s.M_m.col(a) = rs * mom0[a];

    const Eigen::Matrix3d nsw2 = -sw * sw;
    s.K_soft.setZero();
    s.D_soft.setZero();
    s.M_mm.setZero();
    for (int a = 0; a < 3; ++a) {
        s.M_mm += rs * I[a][a];
        for (int b = 0; b < 3; ++b) {
            s.K_soft += rs * nsw2(a, b) * I[a][b];
            s.D_soft += rs * sw(a, b) * I[a][b];
        }
    }
    Eigen::Matrix<double, 10, 3> X1;  // int x M1
    for (int a = 0; a < 3; ++a) X1.col(a) = mom1[a];
    s.M_mpw = rs * X1 * (sw * sx);
    s.M_mp = rs * X1 * sx.transpose();

    const GeometricIntegrals geo = geometric_integral_family(basis, rs);
    s.E_i = geo.Ei;
    s.E_ix = geo.Eix;
    s.E_l = geo.El;

    const double Msig = rs * basis.sigma.integrate(0.0, l);
    const double Msigsig = rs * (basis.sigma * basis.sigma).integrate(0.0, l);
    const double js = props.Jpx / props.S;
    s.J_P = -rs * (l * l * l / 3.0) * sx * sx;
    s.J_P(0, 0) += m * js;
    s.M_mp(9, 0) += js * Msig;
    s.M_mm(9, 9) += js * Msigsig;

    Matrix16d& MT = s.M_T;
    MT.setZero();
    MT.block<3, 3>(0, 0) = m * Eigen::Matrix3d::Identity();
    MT.block<3, 3>(0, 3) = s.M_p.transpose();
    MT.block<3, 10>(0, 6) = s.M_m.transpose();
    MT.block<3, 3>(3, 0) = s.M_p;
    MT.block<3, 3>(3, 3) = s.J_P;
    MT.block<3, 10>(3, 6) = s.M_mp.transpose();
    MT.block<10, 3>(6, 0) = s.M_m;
    MT.block<10, 3>(6, 3) = s.M_mp;
    MT.block<10, 10>(6, 6) = s.M_mm;

    s.K_T.setZero();
    s.K_T.block<10, 10>(6, 6) =
        s.K_soft + (w(1) * v(2) - w(2) * v(1)) * s.E_i - (w(2) * w(2) + w(1) * w(1)) * s.E_ix;

    s.G_T.setZero();
    s.G_T.block<10, 3>(6, 0) = -2.0 * s.M_m * sw;
    s.G_T.block<10, 3>(6, 3) = 2.0 * s.M_m * sv + 2.0 * s.M_mp * sw + 4.0 * s.M_mpw;
    s.G_T.block<10, 10>(6, 6) = -2.0 * v(0) * s.E_i - 2.0 * s.D_soft;

    s.K_V.setZero();
    s.K_V.block<4, 4>(6, 6) = stiffness_integral_matrix(basis, props.E * props.Jz);
    s.K_V.block<4, 4>(10, 10) = stiffness_integral_matrix(basis, props.E * props.Jy);
    s.K_V(14, 14) = props.E * props.S * (basis.tau.derivative() * basis.tau.derivative()).integrate(0.0, l);
    s.K_V(15, 15) = props.G * props.Jpx * (basis.sigma.derivative() * basis.sigma.derivative()).integrate(0.0, l);

    s.C_Q.setZero();
    s.C_Q.segment<10>(6) = (v.transpose() * sw * s.M_m.transpose() + w.transpose() * s.M_mpw.transpose()).transpose();
    Vector6d Vbar;
    Vbar << v, w;
    s.C_Qdot = (Vbar.transpose() * MT.topRows<6>()).transpose();

    Matrix6d Lop = Matrix6d::Zero();
    Lop.block<3, 3>(0, 0) = sw;
    Lop.block<3, 3>(3, 0) = sv;
    Lop.block<3, 3>(3, 3) = sw;
    Eigen::Matrix<double, 6, 16> sub = Eigen::Matrix<double, 6, 16>::Zero();
    const Eigen::Matrix3d t1 = m * sv + skew(s.M_p.transpose() * w);
    sub.block<3, 3>(0, 3) = t1;
    sub.block<3, 3>(3, 0) = t1;
    sub.block<3, 3>(3, 3) = skew(s.M_p * v) + skew(s.J_P * w);
    s.M_L = Lop * MT.topRows<6>() - sub;
    s.J_L = Lop * (0.5 * s.G_T.leftCols<6>().transpose());
    s.C_L = Lop * s.C_Qdot.head<6>();

    s.tau_CP = kinematic_transport(Eigen::Vector3d(-l, 0.0, 0.0));
    const Eigen::Matrix<double, 10, 3> m1l = m1_at(m1, l);
    const Eigen::Matrix<double, 3, 10> m2tl = m2t_at(basis, l);
    s.N_bar.setZero();
    s.N_bar.block<6, 6>(0, 0) = -Matrix6d::Identity();
    s.N_bar.block<6, 6>(0, 6) = s.tau_CP.transpose();
    s.N_bar.block<10, 3>(6, 6) = m1l;
    s.N_bar.block<10, 3>(6, 9) = m2tl.transpose();

    const Eigen::Vector4d phil = basis.phi(l), dphil = basis.dphi(l);
    const double sigl = basis.sigma(l), taul = basis.tau(l);
    Eigen::Matrix<double, 6, 10>& Wm = s.W_C_mat;
    Wm.setZero();
    for (int k = 0; k < 2; ++k) {
        const int r = 3 * k;
        Wm.block<1, 4>(r, 0) = -dphil.transpose() * Wc(r + 1);
        Wm.block<1, 4>(r, 4) = -dphil.transpose() * Wc(r + 2);
        Wm.block<1, 4>(r + 1, 0) = dphil.transpose() * Wc(r);
        Wm(r + 1, 9) = -sigl * Wc(r + 2);
        Wm.block<1, 4>(r + 2, 4) = dphil.transpose() * Wc(r);
        Wm(r + 2, 9) = sigl * Wc(r + 1);
    }
    Eigen::Matrix<double, 3, 10>& Kc = s.K_c;
    Kc.setZero();
    Kc.block<1, 4>(0, 0) = phil.transpose() * Wc(2);
    Kc.block<1, 4>(0, 4) = -phil.transpose() * Wc(1);
    Kc.block<1, 4>(1, 4) = phil.transpose() * Wc(0);
    Kc(1, 8) = -taul * Wc(2);
    Kc.block<1, 4>(2, 0) = -phil.transpose() * Wc(0);
    Kc(2, 8) = taul * Wc(1);
    Kc = -Kc;

    // The deformed-frame wrench correction is moved to the left-hand side, hence the minus sign.
    s.F_c.setZero();
    s.F_c.block<3, 10>(3, 6) = Kc;
    s.F_c.block<10, 10>(6, 6) = s.E_l * Wc(0);
    s.F_c.rightCols<10>() -= s.N_bar.rightCols<6>() * Wm;

    s.M = MT;
    s.D = 0.5 * (s.G_T.transpose() - s.G_T);
    s.D.topRows<6>() += s.M_L;
    s.K = s.K_V - s.K_T + s.F_c;
    s.K.topRows<6>() += s.J_L;

    // output maps at C
    s.G_vv.topRows<3>() = m1l.transpose();
    s.G_vv.bottomRows<3>() = m2tl;
    Eigen::Matrix<double, 3, 10> M3T = Eigen::Matrix<double, 3, 10>::Zero();
    M3T.block<1, 4>(0, 0) = dphil.transpose() * (v(1) + l * w(2));
    M3T.block<1, 4>(0, 4) = dphil.transpose() * (v(2) - l * w(1));
    M3T.block<1, 4>(1, 0) = -dphil.transpose() * v(0);
    M3T(1, 9) = sigl * (v(2) - l * w(1));
    M3T.block<1, 4>(2, 4) = -dphil.transpose() * v(0);
    M3T(2, 9) = -sigl * (v(1) + l * w(2));
    Eigen::Matrix<double, 3, 10> low = Eigen::Matrix<double, 3, 10>::Zero();
    low.block<1, 4>(0, 0) = dphil.transpose() * w(1);
    low.block<1, 4>(0, 4) = dphil.transpose() * w(2);
    low.block<1, 4>(1, 0) = -dphil.transpose() * w(0);
    low(1, 9) = sigl * w(2);
    low.block<1, 4>(2, 4) = -dphil.transpose() * w(0);
    low(2, 9) = -sigl * w(1);
    s.G_vp.topRows<3>() = sw * m1l.transpose() + M3T;
    s.G_vp.bottomRows<3>() = low;
    const Eigen::Vector3d& x = eq.x_P;
    s.G_p.setZero();
    s.G_p.block<1, 4>(0, 0) = dphil.transpose() * x(1);
    s.G_p.block<1, 4>(0, 4) = dphil.transpose() * x(2);
    s.G_p(0, 8) = taul;
    s.G_p.block<1, 4>(1, 0) = -dphil.transpose() * (x(0) + l) + phil.transpose();
    s.G_p(1, 9) = sigl * x(2);
    s.G_p.block<1, 4>(2, 4) = -dphil.transpose() * (x(0) + l) + phil.transpose();
    s.G_p(2, 9) = -sigl * x(1);
    s.G_p.bottomRows<3>() = m2tl;

    s.M_l.setZero();
    s.D_l.setZero();
    s.K_l.setZero();
    s.M_l.topRows<6>() = s.tau_CP;
    s.D_l.middleRows<6>(6) = s.tau_CP;
    s.K_l.bottomRows<6>() = Matrix6d::Identity();
    s.M_r.setZero();
    s.D_r.setZero();
    s.K_r.setZero();
    s.M_r.topRows<6>() = s.G_vv;
    s.D_r.topRows<6>() = s.G_vp;
    s.D_r.middleRows<6>(6) = s.G_vv;
    s.K_r.middleRows<6>(6) = s.G_vp;
    s.K_r.bottomRows<6>() = s.G_p;
    return s;
}

EquilibriumState compute_equilibrium(const BeamProperties& props, const EquilibriumState& kin,
                                     const EquilibriumLimits& limits) {
    const BeamMatrixSet s = build_matrix_set(props, kin);
    // Rigid quasi-coordinates of the static solution multiply null columns and are dropped.
    Matrix16d Ks = s.K_V - s.K_T;
    Ks.topRows<6>() += s.J_L;
    Matrix16d sys;
    sys.leftCols<6>() = -s.N_bar.leftCols<6>();
    sys.rightCols<10>() = Ks.rightCols<10>();
    Vector16d rhs = s.C_Q + s.N_bar.rightCols<6>() * kin.W_C;
    rhs.head<6>() -= s.C_L;

    Eigen::JacobiSVD<Matrix16d> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    EquilibriumState out = kin;
    out.condition = sv(0) / sv(15);
    if (!(sv(15) > 1e-13 * sv(0))) {
        std::ostringstream os;
        os << "equilibrium system is rank deficient; null direction [" << svd.matrixV().col(15).transpose() << "]";
        throw NumericalFailure(os.str());
    }
    const Vector16d z = sys.partialPivLu().solve(rhs);
    const Vector10d q = z.tail<10>();
    out.q_f = q;

    const double l = props.l;
    const bool ok = std::abs(q(1)) <= limits.tip_deflection * l && std::abs(q(5)) <= limits.tip_deflection * l &&
                    std::abs(q(8)) <= limits.axial * l && std::abs(q(9)) <= limits.twist;
    out.valid = ok;
    std::ostringstream os;
    os.precision(6);
    os << "q_y2=" << q(1) << " m, q_z2=" << q(5) << " m, du=" << q(8) << " m, dphi=" << q(9) << " rad";
    if (out.condition > 1e10) os << "; condition number " << out.condition;
    out.diagnostic = os.str();

    // W_P from the rigid rows with q_f neglected.
    out.W_P = s.tau_CP.transpose() * kin.W_C + s.C_Q.head<6>() - s.C_L;
    return out;
}

TitopBlock build_titop_beam(const BeamProperties& props, const EquilibriumState& eq,
                            const std::optional<RayleighDamping>& damping, const std::string& name) {
    if (!eq.q_f || !eq.valid)
        throw ModelInvalid("beam '" + name + "': equilibrium not computed or invalid (" + eq.diagnostic + ")");
    const BeamMatrixSet s = build_matrix_set(props, eq);
    const Matrix10d Mff = s.M_ff(), Kff = s.K_ff();
    Matrix10d Dff = s.D_ff();
    if (damping) Dff += damping->alpha * Mff + damping->beta * Kff;

    const Eigen::LLT<Matrix10d> llt(Mff);
    if (llt.info() != Eigen::Success) throw NumericalFailure("beam '" + name + "': M_ff not positive definite");
    const Matrix10d Mi = llt.solve(Matrix10d::Identity());
    const Matrix6d Nrr = s.N_bar.topLeftCorner<6, 6>();
    Eigen::FullPivLU<Matrix6d> nlu(Nrr);
    if (!nlu.isInvertible()) throw NumericalFailure("beam '" + name + "': N_rr is singular");
    const Matrix6d Nri = nlu.inverse();
    const Eigen::Matrix<double, 10, 6> Nff = s.N_bar.bottomRightCorner<10, 6>();
    const Matrix6d Nrf = s.N_bar.topRightCorner<6, 6>();

    Eigen::Matrix<double, 10, 18> MDK_fr;
    MDK_fr << s.M_fr(), s.D_fr(), s.K_fr();
    Eigen::Matrix<double, 6, 18> MDK_rr;
    MDK_rr << s.M_rr(), s.D_rr(), s.K_rr();
    Eigen::Matrix<double, 6, 10> Drf = s.D_rf();
    Eigen::Matrix<double, 18, 18> lft;
    lft << s.M_l, s.D_l, s.K_l;

    TitopBlock b;
    b.name = name;
    b.A = Eigen::MatrixXd::Zero(20, 20);
    b.A.block<10, 10>(0, 10) = Matrix10d::Identity();
    b.A.block<10, 10>(10, 0) = -Mi * Kff;
    b.A.block<10, 10>(10, 10) = -Mi * Dff;
    b.B = Eigen::MatrixXd::Zero(20, 24);
    b.B.block<10, 6>(10, 0) = Mi * Nff;
    b.B.block<10, 18>(10, 6) = -Mi * MDK_fr;
    b.C = Eigen::MatrixXd::Zero(24, 20);
    b.C.block<18, 10>(0, 0) = -s.M_r * Mi * Kff + s.K_r;
    b.C.block<18, 10>(0, 10) = -s.M_r * Mi * Dff + s.D_r;
    b.C.block<6, 10>(18, 0) = -Nri * (s.M_rf() * Mi * Kff - s.K_rf());
    b.C.block<6, 10>(18, 10) = -Nri * (s.M_rf() * Mi * Dff - Drf);
    b.D = Eigen::MatrixXd::Zero(24, 24);
    b.D.block<18, 6>(0, 0) = s.M_r * Mi * Nff;
    b.D.block<18, 18>(0, 6) = -s.M_r * Mi * MDK_fr + lft;
    b.D.block<6, 6>(18, 0) = Nri * (s.M_rf() * Mi * Nff - Nrf);
    b.D.block<6, 18>(18, 6) = Nri * MDK_rr - Nri * s.M_rf() * Mi * MDK_fr;

    b.inputs = {{name + ".C", ChannelKind::Wrench, name + "(C)"}, {name + ".P", ChannelKind::Motion, name}};
    b.outputs = {{name + ".C", ChannelKind::Motion, name + "(C)"}, {name + ".P", ChannelKind::Wrench, name}};
    const StateFamily fam[10] = {StateFamily::InPlane,    StateFamily::InPlane,    StateFamily::InPlane,
                                 StateFamily::InPlane,    StateFamily::OutOfPlane, StateFamily::OutOfPlane,
                                 StateFamily::OutOfPlane, StateFamily::OutOfPlane, StateFamily::Traction,
                                 StateFamily::Torsion};
    for (int i = 0; i < 10; ++i) b.states.push_back({fam[i], std::sqrt(Mff(i, i)), name});
    for (int i = 0; i < 10; ++i) b.states.push_back({StateFamily::Rate, 0.0, name});
    return b;
}

Eigen::Matrix3d deformed_frame_dcm(const ShapeBasis& basis, const GeneralizedCoords& q) {
    const double l = basis.l;
    const Eigen::Vector4d d = basis.dphi(l);
    const double ty = d.dot(q.q_y), tz = d.dot(q.q_z), tx = basis.sigma(l) * q.delta_phi;
    Eigen::Matrix3d P;
    P << 1.0, -ty, -tz, ty, 1.0, -tx, tz, tx, 1.0;
    return P;
}

}  // namespace spinbeam
