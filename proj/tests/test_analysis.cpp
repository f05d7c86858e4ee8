#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "spinbeam/analysis.hpp"
#include "spinbeam/config.hpp"
#include "spinbeam/errors.hpp"
#include "spinbeam/runner.hpp"
#include "spinbeam/scenarios.hpp"
#include "spinbeam/tables.hpp"

using namespace spinbeam;

namespace {

double first_peak(const std::vector<ResponsePoint>& pts) {
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double a = std::abs(pts[i - 1].gain(0, 0)), b = std::abs(pts[i].gain(0, 0)), c = std::abs(pts[i + 1].gain(0, 0));
        if (b > a && b > c) return pts[i].omega;
    }
    return NAN;
}

// Coarse scan, then a fine linear scan around the first local maximum.
double first_peak(const TitopBlock& siso, const std::vector<double>& coarse) {
    const double p = first_peak(frequency_response(siso, coarse));
    const double step = coarse[1] / coarse[0];
    std::vector<double> fine;
    for (int i = 0; i <= 4000; ++i) fine.push_back(p / step + (p * step - p / step) * i / 4000.0);
    return first_peak(frequency_response(siso, fine));
}

std::vector<double> log_grid(double a, double b, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    return g;
}

TitopBlock spacecraft_siso(double omega, double tip_mass, int out_component) {
    SpacecraftSpec s;
    s.omega = omega;
    s.tip_mass = tip_mass;
    return select_port_channel(assemble(propagate_equilibrium(spacecraft_graph(s), omega)), "hub.B", ChannelKind::Wrench,
                               4, "hub.B", ChannelKind::Motion, out_component);
}

}  // namespace

TEST(Modal, ClassicalCantileverRatios) {
    const CantileverRatios r = cantilever_ratios(table_beam(), 0.0, 0.0, 0.0, 1);
    const std::vector<double> ref{3.5160, 22.1578, 63.3466, 281.5963};
    ASSERT_GE(r.in_plane.size(), 4u);
    for (int i = 0; i < 4; ++i) {
        EXPECT_LT(oracle::rel(r.in_plane[i], ref[i]), 5e-4) << i;
        EXPECT_LT(oracle::rel(r.out_of_plane[i], ref[i]), 5e-4) << i;
    }
}

TEST(Modal, SingleElementTractionIsSqrtThree) {
    for (double eta : {0.0, 4.0, 10.0}) {
        const CantileverRatios r = cantilever_ratios(table_beam(), eta, 0.0, 0.0, 1);
        EXPECT_NEAR(r.traction, std::sqrt(3.0), eta == 0.0 ? 1e-6 : 1e-2);
    }
}

TEST(Modal, TipMassOutOfPlaneAtHighSpin) {
    const CantileverRatios r = cantilever_ratios(table_beam(), 10.0, 1.0, 0.0, 1);
    EXPECT_LT(oracle::rel(r.out_of_plane[0], 10.5128), 5e-4);
}

TEST(Modal, CantileverModesAreClassified) {
    CantileverSpec s;
    s.omega = DimensionlessSetup::omega_for_eta_by(s.beam, 6.0);
    const ModalResult m = modal_frequencies(cantilever_model(s));
    EXPECT_EQ(m.modes.size(), 10u);
    EXPECT_EQ(m.family_modes(ModeFamily::Coupled).size(), 0u);
    EXPECT_EQ(m.frequencies(ModeFamily::InPlane).size(), 4u);
    EXPECT_EQ(m.frequencies(ModeFamily::OutOfPlane).size(), 4u);
    EXPECT_EQ(m.frequencies(ModeFamily::Traction).size(), 1u);
    EXPECT_EQ(m.frequencies(ModeFamily::Torsion).size(), 1u);
    for (const auto& mode : m.modes) EXPECT_GE(mode.dominance, kDominanceThreshold);
}

TEST(Modal, OpenInputsAreRejected) {
    const TitopBlock hub = build_main_body(hub_properties(), {}, Eigen::Vector3d::Zero());
    EXPECT_THROW(modal_frequencies(hub), ChannelError);
}

TEST(Modal, RatiosInvariantUnderUnitCoScaling) {
    // change of length, mass and time units
    const double L = 1.9, M = 0.6, T = 0.37;
    const BeamProperties p = table_beam();
    BeamProperties q = p;
    q.l *= L;
    q.S *= L * L;
    q.Jy *= std::pow(L, 4);
    q.Jz *= std::pow(L, 4);
    q.Jpx *= std::pow(L, 4);
    q.rho *= M / std::pow(L, 3);
    q.E *= M / (L * T * T);
    q.G *= M / (L * T * T);
    for (double eta : {0.0, 5.0}) {
        const CantileverRatios a = cantilever_ratios(p, eta, 0.5, 0.2, 1);
        const CantileverRatios b = cantilever_ratios(q, eta, 0.5, 0.2, 1);
        for (int i = 0; i < 4; ++i) {
            EXPECT_LT(oracle::rel(b.in_plane[i], a.in_plane[i]), 1e-8);
            EXPECT_LT(oracle::rel(b.out_of_plane[i], a.out_of_plane[i]), 1e-8);
        }
        EXPECT_LT(oracle::rel(b.traction, a.traction), 1e-8);
        EXPECT_LT(oracle::rel(b.torsion, a.torsion), 1e-8);
    }
}

TEST(Campbell, SinglePointEqualsModal) {
    CantileverSpec s;
    s.omega = 0.3;
    const auto model = [&](double w) {
        CantileverSpec t = s;
        t.omega = w;
        return cantilever_model(t);
    };
    const CampbellCurve c = campbell_sweep(model, {0.3}, {ModeFamily::OutOfPlane}, 2);
    const auto f = modal_frequencies(model(0.3)).frequencies(ModeFamily::OutOfPlane);
    ASSERT_EQ(c.branches.size(), 2u);
    EXPECT_DOUBLE_EQ(c.branches[0].frequency[0], f[0]);
    EXPECT_DOUBLE_EQ(c.branches[1].frequency[0], f[1]);
}

TEST(Campbell, FigureSevenBranchesAreContinuous) {
    // Above 0.6 rad/s the branches grow nearly linearly with spin, so a 0.05 rad/s step moves them
    // by less than 10 %; below that the relative step itself exceeds 10 %.
    const CampbellCurve c =
        scenario_campbell(resolve_scenario("fig7"), 2.0, 40, {ModeFamily::InPlane, ModeFamily::OutOfPlane}, 2);
    ASSERT_EQ(c.omega.size(), 41u);
    for (const auto& br : c.branches)
        for (std::size_t i = 1; i < c.omega.size(); ++i) {
            EXPECT_GT(br.frequency[i], br.frequency[i - 1]);
            if (c.omega[i - 1] >= 0.6)
                EXPECT_LT(std::abs(br.frequency[i] / br.frequency[i - 1] - 1.0), 0.10) << c.omega[i];
        }
    for (std::size_t i = 0; i < c.omega.size(); ++i) {
        EXPECT_LT(c.branches[0].frequency[i], c.branches[1].frequency[i]);
        EXPECT_LE(c.branches[0].frequency[i], c.branches[2].frequency[i]);
    }
}

TEST(Campbell, TruncatesOnInvalidEquilibrium) {
    CantileverSpec s;
    s.beam = boom_beam();
    s.tip_mass = 5.0;
    s.offset = 2.0;
    const auto model = [&](double w) {
        CantileverSpec t = s;
        t.omega = w;
        return cantilever_model(t);
    };
    const CampbellCurve c = campbell_sweep(model, {0.0, 1.0, 500.0}, {ModeFamily::OutOfPlane}, 1);
    EXPECT_EQ(c.omega.size(), 2u);
    EXPECT_FALSE(c.diagnostic.empty());
}

TEST(FrequencyResponse, IntegratorSlope) {
    const TitopBlock siso = select_port_channel(build_main_body(hub_properties(), {}, Eigen::Vector3d::Zero()), "hub.B",
                                                ChannelKind::Wrench, 4, "hub.B", ChannelKind::Motion, 10);
    const auto pts = frequency_response(siso, {0.01, 1.0});
    const double slope = 20.0 * std::log10(std::abs(pts[1].gain(0, 0)) / std::abs(pts[0].gain(0, 0))) / 2.0;
    EXPECT_NEAR(slope, -20.0, 0.1);
}

TEST(FrequencyResponse, PoleOnGridIsFlagged) {
    TitopBlock b;
    b.A = (Eigen::Matrix2d() << 0.0, 1.0, -1.0, 0.0).finished();
    b.B = Eigen::MatrixXd::Identity(2, 1);
    b.C = Eigen::MatrixXd::Identity(1, 2);
    b.D = Eigen::MatrixXd::Zero(1, 1);
    b.states = {{StateFamily::Rigid, 1.0, "x"}, {StateFamily::Rate, 1.0, "x"}};
    const auto pts = frequency_response(b, {0.5, 1.0});
    EXPECT_FALSE(pts[0].pole_on_grid);
    EXPECT_TRUE(pts[1].pole_on_grid);
    EXPECT_TRUE(std::isinf(std::abs(pts[1].gain(0, 0))));
}

TEST(FrequencyResponse, ResonanceShiftsRightWithSpinAndTipMass) {
    const auto grid = log_grid(0.01, 1.0, 600);
    double prev = 0.0;
    for (double w : {0.0, 0.25, 0.5}) {
        const double p = first_peak(spacecraft_siso(w, 5.0, 4), grid);
        EXPECT_GT(p, prev) << "Omega = " << w;
        prev = p;
    }
    prev = 0.0;
    for (double m : {1.0, 5.0, 10.0}) {
        const double p = first_peak(spacecraft_siso(0.5, m, 4), grid);
        EXPECT_GT(p, prev) << "m = " << m;
        prev = p;
    }
}
