#include "spinbeam/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "spinbeam/errors.hpp"

namespace spinbeam {

const char* mode_family_name(ModeFamily f) {
    switch (f) {
        case ModeFamily::InPlane: return "in-plane bending";
        case ModeFamily::OutOfPlane: return "out-of-plane bending";
        case ModeFamily::Traction: return "traction";
        case ModeFamily::Torsion: return "torsion";
        case ModeFamily::Rigid: return "rigid";
        case ModeFamily::Coupled: return "coupled";
    }
    return "?";
}

namespace {

constexpr int kFamilies = 5;  // InPlane..Rigid

int family_index(StateFamily f) {
    switch (f) {
        case StateFamily::InPlane: return 0;
        case StateFamily::OutOfPlane: return 1;
        case StateFamily::Traction: return 2;
        case StateFamily::Torsion: return 3;
        case StateFamily::Rigid: return 4;
        case StateFamily::Rate: return -1;
    }
    return -1;
}

std::array<double, kFamilies> family_energy(const Eigen::VectorXcd& v, const std::vector<StateInfo>& states) {
    std::array<double, kFamilies> e{};
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const int k = family_index(states[static_cast<std::size_t>(i)].family);
        if (k < 0) continue;
        const double w = states[static_cast<std::size_t>(i)].weight;
        e[static_cast<std::size_t>(k)] += w * w * std::norm(v(i));
    }
    return e;
}

void classify(Mode& m, const std::vector<StateInfo>& states) {
    const auto e = family_energy(m.shape, states);
    const double total = std::accumulate(e.begin(), e.end(), 0.0);
    if (!(total > 0.0)) {
        m.family = ModeFamily::Rigid;
        m.dominance = 1.0;
        return;
    }
    const auto it = std::max_element(e.begin(), e.end());
    m.dominance = *it / total;
    m.family = m.dominance >= kDominanceThreshold ? static_cast<ModeFamily>(it - e.begin()) : ModeFamily::Coupled;
}

// Unit norm, largest entry real and positive.
void normalize_shape(Eigen::VectorXcd& v) {
    const double n = v.norm();
    if (n == 0.0) return;
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const std::complex<double> ph = v(imax) / std::abs(v(imax));
    v /= (n * ph);
}

// Rotates eigenvectors of a near-degenerate cluster so that each lies in as few families as possible.
void separate_cluster(std::vector<Mode>& modes, const std::vector<std::size_t>& idx, const std::vector<StateInfo>& states) {
    const Eigen::Index n = modes[idx[0]].shape.size();
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd V(n, k);
    for (Eigen::Index j = 0; j < k; ++j) V.col(j) = modes[idx[static_cast<std::size_t>(j)]].shape;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(k, k), H = Eigen::MatrixXcd::Zero(k, k);
    for (int f = 0; f < kFamilies; ++f) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i)
            if (family_index(states[static_cast<std::size_t>(i)].family) == f)
                d(i) = states[static_cast<std::size_t>(i)].weight * states[static_cast<std::size_t>(i)].weight;
        const Eigen::MatrixXcd Gf = V.adjoint() * d.asDiagonal() * V;
        G += Gf;
        H += static_cast<double>(f + 1) * Gf;
    }
    G = 0.5 * (G + G.adjoint().eval());
    H = 0.5 * (H + H.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(G);
    if (gs.info() != Eigen::Success || gs.eigenvalues().minCoeff() <= 1e-12 * gs.eigenvalues().maxCoeff()) return;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, G);
    if (es.info() != Eigen::Success) return;
    const Eigen::MatrixXcd W = V * es.eigenvectors();
    for (Eigen::Index j = 0; j < k; ++j) {
        Mode& m = modes[idx[static_cast<std::size_t>(j)]];
        m.shape = W.col(j);
        normalize_shape(m.shape);
        classify(m, states);
    }
}

}  // namespace

std::vector<double> ModalResult::frequencies(ModeFamily f) const {
    std::vector<double> out;
    for (const auto& m : modes)
        if (m.family == f) out.push_back(m.frequency);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<const Mode*> ModalResult::family_modes(ModeFamily f) const {
    std::vector<const Mode*> out;
    for (const auto& m : modes)
        if (m.family == f) out.push_back(&m);
    std::stable_sort(out.begin(), out.end(), [](const Mode* a, const Mode* b) { return a->frequency < b->frequency; });
    return out;
}

ModalResult modal_frequencies(const TitopBlock& model) {
    const Eigen::Index n = model.A.rows();
    if (model.A.cols() != n) throw ChannelError("modal_frequencies: A is not square");
    if (model.B.cols() != 0 && !model.inputs.empty())
        throw ChannelError("modal_frequencies: model has open inputs; apply boundary conditions first");
    if (static_cast<Eigen::Index>(model.states.size()) != n) throw ChannelError("modal_frequencies: missing state tags");
    ModalResult r;
    r.states = model.states;
    if (n == 0) return r;

    Eigen::EigenSolver<Eigen::MatrixXd> es(model.A, true);
    if (es.info() != Eigen::Success) throw NumericalFailure("modal_frequencies: eigen-decomposition failed");
    const Eigen::VectorXcd lam = es.eigenvalues();
    const Eigen::MatrixXcd vec = es.eigenvectors();
    for (Eigen::Index i = 0; i < n; ++i) r.eigenvalues.push_back(lam(i));

    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        const std::complex<double> l = lam(i);
        const double scale = std::max(1.0, std::abs(l));
        used[static_cast<std::size_t>(i)] = true;
        Mode m;
        if (std::abs(l.imag()) <= 1e-9 * scale) {
            m.lambda = {l.real(), 0.0};
            m.shape = vec.col(i);
        } else {
            Eigen::Index partner = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double d = std::abs(lam(j) - std::conj(l));
                if (d < best) {
                    best = d;
                    partner = j;
                }
            }
            if (partner < 0 || best > 1e-6 * scale) {
                std::ostringstream os;
                os << "modal_frequencies: eigenvalue " << l << " has no conjugate partner";
                throw NumericalFailure(os.str());
            }
            used[static_cast<std::size_t>(partner)] = true;
            const Eigen::Index up = l.imag() > 0.0 ? i : partner;
            m.lambda = lam(up);
            m.shape = vec.col(up);
        }
        m.frequency = std::abs(m.lambda);
        if (m.frequency < 1e-9) m.frequency = 0.0;
        m.damping_ratio = m.frequency > 0.0 ? -m.lambda.real() / m.frequency : 0.0;
        normalize_shape(m.shape);
        classify(m, r.states);
        r.modes.push_back(std::move(m));
    }
    std::stable_sort(r.modes.begin(), r.modes.end(), [](const Mode& a, const Mode& b) {
        if (a.frequency != b.frequency) return a.frequency < b.frequency;
        return a.lambda.real() < b.lambda.real();
    });

    // near-degenerate clusters, e.g. equal in-plane and out-of-plane frequencies at rest
    for (std::size_t i = 0; i < r.modes.size();) {
        std::size_t j = i + 1;
        while (j < r.modes.size() &&
               std::abs(r.modes[j].lambda - r.modes[i].lambda) <= 1e-6 * std::abs(r.modes[i].lambda) + 1e-9)
            ++j;
        if (j - i > 1) {
            std::vector<std::size_t> idx(j - i);
            std::iota(idx.begin(), idx.end(), i);
            separate_cluster(r.modes, idx, r.states);
        }
        i = j;
    }
    return r;
}

double bending_scale(const BeamProperties& p, double J) { return std::sqrt(p.rho * p.S * std::pow(p.l, 4) / (p.E * J)); }
double traction_scale(const BeamProperties& p) { return std::sqrt(p.rho * p.l * p.l / p.E); }
double torsion_scale(const BeamProperties& p) { return std::sqrt(p.rho * p.l * p.l / p.G); }

DimensionlessSetup DimensionlessSetup::from(const BeamProperties& props, double omega, double tip_mass, double offset) {
    props.validate();
    DimensionlessSetup s;
    s.eta_by = omega * bending_scale(props, props.Jz);
    s.eta_bz = omega * bending_scale(props, props.Jy);
    s.eta_tx = omega * traction_scale(props);
    s.eta_rx = omega * torsion_scale(props);
    s.mu = tip_mass / props.mass();
    s.alpha = offset / props.l;
    return s;
}

double DimensionlessSetup::omega_for_eta_by(const BeamProperties& props, double eta) {
    return eta / bending_scale(props, props.Jz);
}

FrequencyRatios frequency_ratio(const ModalResult& result, const DimensionlessSetup& setup, const BeamProperties& props) {
    FrequencyRatios t;
    t.setup = setup;
    auto fill = [&](ModeFamily f, double scale, std::vector<double>& out) {
        for (double w : result.frequencies(f))
            if (w > 0.0) out.push_back(w * scale);
        if (out.empty()) t.absences.push_back(mode_family_name(f));
    };
    fill(ModeFamily::InPlane, bending_scale(props, props.Jz), t.in_plane);
    fill(ModeFamily::OutOfPlane, bending_scale(props, props.Jy), t.out_of_plane);
    fill(ModeFamily::Traction, traction_scale(props), t.traction);
    fill(ModeFamily::Torsion, torsion_scale(props), t.torsion);
    return t;
}

namespace {

double mac(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    const double na = a.squaredNorm(), nb = b.squaredNorm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace

CampbellCurve campbell_sweep(const std::function<TitopBlock(double)>& model_at, const std::vector<double>& grid,
                             const std::vector<ModeFamily>& families, int modes_per_family) {
    if (grid.empty()) throw InvalidParameter("campbell_sweep: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidParameter("campbell_sweep: grid must be strictly increasing");
    if (modes_per_family < 1) throw InvalidParameter("campbell_sweep: modes_per_family must be >= 1");

    CampbellCurve c;
    std::vector<Eigen::VectorXcd> last;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        ModalResult r;
        try {
            r = modal_frequencies(model_at(grid[g]));
        } catch (const ModelInvalid& e) {
            std::ostringstream os;
            os << "truncated at Omega=" << grid[g] << ": " << e.what();
            c.diagnostic = os.str();
            break;
        }
        if (g == 0) {
            for (ModeFamily f : families) {
                int k = 0;
                for (const Mode* m : r.family_modes(f)) {
                    if (m->frequency <= 0.0) continue;
                    if (k == modes_per_family) break;
                    c.branches.push_back({f, ++k, {m->frequency}});
                    last.push_back(m->shape);
                }
            }
        } else {
            std::vector<const Mode*> cand;
            for (const auto& m : r.modes)
                if (m.frequency > 0.0) cand.push_back(&m);
            struct Pair {
                double mac, df;
                std::size_t b, m;
            };
            std::vector<Pair> pairs;
            for (std::size_t b = 0; b < c.branches.size(); ++b)
                for (std::size_t m = 0; m < cand.size(); ++m)
                    pairs.push_back({mac(last[b], cand[m]->shape),
                                     std::abs(cand[m]->frequency - c.branches[b].frequency.back()), b, m});
            std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
                if (std::abs(a.mac - b.mac) > 1e-9) return a.mac > b.mac;
                return a.df < b.df;
            });
            std::vector<bool> bdone(c.branches.size(), false), mdone(cand.size(), false);
            for (const auto& p : pairs) {
                if (bdone[p.b] || mdone[p.m]) continue;
                bdone[p.b] = mdone[p.m] = true;
                c.branches[p.b].frequency.push_back(cand[p.m]->frequency);
                last[p.b] = cand[p.m]->shape;
            }
            for (std::size_t b = 0; b < bdone.size(); ++b)
                if (!bdone[b]) throw NumericalFailure("campbell_sweep: fewer modes than tracked branches");
        }
        c.omega.push_back(grid[g]);
    }
    return c;
}

std::vector<ResponsePoint> frequency_response(const TitopBlock& model, const std::vector<double>& grid) {
    const Eigen::Index n = model.A.rows();
    if (model.A.cols() != n || model.B.rows() != n || model.C.cols() != n || model.D.rows() != model.C.rows() ||
        model.D.cols() != model.B.cols())
        throw ChannelError("frequency_response: inconsistent model dimensions");
    Eigen::VectorXcd poles;
    if (n > 0) poles = Eigen::EigenSolver<Eigen::MatrixXd>(model.A, false).eigenvalues();
    std::vector<ResponsePoint> out;
    out.reserve(grid.size());
    const Eigen::MatrixXcd Bc = model.B.cast<std::complex<double>>();
    const Eigen::MatrixXcd Cc = model.C.cast<std::complex<double>>();
    for (double w : grid) {
        if (!std::isfinite(w)) throw InvalidParameter("frequency_response: non-finite grid point");
        ResponsePoint p;
        p.omega = w;
        const std::complex<double> s(0.0, w);
        for (Eigen::Index i = 0; i < poles.size(); ++i)
            if (std::abs(s - poles(i)) <= 1e-10 * std::max(1.0, std::abs(w))) p.pole_on_grid = true;
        if (p.pole_on_grid) {
            p.gain = Eigen::MatrixXcd::Constant(model.D.rows(), model.D.cols(),
                                                {std::numeric_limits<double>::infinity(), 0.0});
        } else {
            p.gain = model.D.cast<std::complex<double>>();
            if (n > 0) {
                Eigen::MatrixXcd M = -model.A.cast<std::complex<double>>();
                M.diagonal().array() += s;
                p.gain += Cc * M.partialPivLu().solve(Bc);
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

TitopBlock select_port_channel(const TitopBlock& model, const std::string& input_port, ChannelKind input_kind,
                               int input_component, const std::string& output_port, ChannelKind output_kind,
                               int output_component) {
    const Eigen::Index iu = model.input_offset(input_port, input_kind);
    const Eigen::Index iy = model.output_offset(output_port, output_kind);
    if (iu < 0) throw ChannelError("no input channel group '" + input_port + "'");
    if (iy < 0) throw ChannelError("no output channel group '" + output_port + "'");
    if (input_component < 0 || input_component >= channel_size(input_kind) || output_component < 0 ||
        output_component >= channel_size(output_kind))
        throw ChannelError("channel component out of range");
    return select_channel(model, iu + input_component, iy + output_component);
}

}  // namespace spinbeam
