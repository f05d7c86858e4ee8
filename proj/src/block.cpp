#include "spinbeam/block.hpp"

#include <limits>
#include <sstream>

#include "spinbeam/errors.hpp"

namespace spinbeam {

namespace {

Eigen::Index group_offset(const std::vector<ChannelGroup>& groups, const std::string& port, ChannelKind kind) {
    Eigen::Index off = 0;
    for (const auto& g : groups) {
        if (g.port == port && g.kind == kind) return off;
        off += g.size();
    }
    return -1;
}

const char* kind_name(ChannelKind k) { return k == ChannelKind::Wrench ? "wrench" : "motion"; }

std::vector<Eigen::Index> keep_indices(const std::vector<ChannelGroup>& groups, const std::string& port,
                                       ChannelKind kind, std::vector<ChannelGroup>& kept) {
    std::vector<Eigen::Index> idx;
    Eigen::Index off = 0;
    for (const auto& g : groups) {
        if (!(g.port == port && g.kind == kind)) {
            kept.push_back(g);
            for (int i = 0; i < g.size(); ++i) idx.push_back(off + i);
        }
        off += g.size();
    }
    return idx;
}

Eigen::MatrixXd take_cols(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd r(m.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) r.col(static_cast<Eigen::Index>(k)) = m.col(idx[k]);
    return r;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd r(static_cast<Eigen::Index>(idx.size()), m.cols());
    for (std::size_t k = 0; k < idx.size(); ++k) r.row(static_cast<Eigen::Index>(k)) = m.row(idx[k]);
    return r;
}

}  // namespace

Eigen::Index TitopBlock::input_offset(const std::string& port, ChannelKind kind) const {
    return group_offset(inputs, port, kind);
}

Eigen::Index TitopBlock::output_offset(const std::string& port, ChannelKind kind) const {
    return group_offset(outputs, port, kind);
}

void TitopBlock::check() const {
    Eigen::Index nu = 0, ny = 0;
    for (const auto& g : inputs) nu += g.size();
    for (const auto& g : outputs) ny += g.size();
    const Eigen::Index nx = A.rows();
    if (A.cols() != nx || B.rows() != nx || C.cols() != nx || B.cols() != nu || C.rows() != ny ||
        D.rows() != ny || D.cols() != nu || static_cast<Eigen::Index>(states.size()) != nx) {
        std::ostringstream os;
        os << "block '" << name << "': inconsistent dimensions (nx=" << nx << ", nu=" << nu << ", ny=" << ny
           << ", A " << A.rows() << "x" << A.cols() << ", B " << B.rows() << "x" << B.cols() << ", C "
           << C.rows() << "x" << C.cols() << ", D " << D.rows() << "x" << D.cols() << ")";
        throw ChannelError(os.str());
    }
}

TitopBlock append(const TitopBlock& a, const TitopBlock& b, const std::string& name) {
    TitopBlock r;
    r.name = name;
    const Eigen::Index nx = a.n_states() + b.n_states();
    const Eigen::Index nu = a.n_inputs() + b.n_inputs();
    const Eigen::Index ny = a.n_outputs() + b.n_outputs();
    r.A = Eigen::MatrixXd::Zero(nx, nx);
    r.B = Eigen::MatrixXd::Zero(nx, nu);
    r.C = Eigen::MatrixXd::Zero(ny, nx);
    r.D = Eigen::MatrixXd::Zero(ny, nu);
    r.A.topLeftCorner(a.n_states(), a.n_states()) = a.A;
    r.A.bottomRightCorner(b.n_states(), b.n_states()) = b.A;
    r.B.topLeftCorner(a.n_states(), a.n_inputs()) = a.B;
    r.B.bottomRightCorner(b.n_states(), b.n_inputs()) = b.B;
    r.C.topLeftCorner(a.n_outputs(), a.n_states()) = a.C;
    r.C.bottomRightCorner(b.n_outputs(), b.n_states()) = b.C;
    r.D.topLeftCorner(a.n_outputs(), a.n_inputs()) = a.D;
    r.D.bottomRightCorner(b.n_outputs(), b.n_inputs()) = b.D;
    r.inputs = a.inputs;
    r.inputs.insert(r.inputs.end(), b.inputs.begin(), b.inputs.end());
    r.outputs = a.outputs;
    r.outputs.insert(r.outputs.end(), b.outputs.begin(), b.outputs.end());
    r.states = a.states;
    r.states.insert(r.states.end(), b.states.begin(), b.states.end());
    r.loop_conditions = a.loop_conditions;
    r.loop_conditions.insert(r.loop_conditions.end(), b.loop_conditions.begin(), b.loop_conditions.end());
    return r;
}

TitopBlock close_feedback(const TitopBlock& blk, const std::vector<FeedbackLink>& links) {
    blk.check();
    const Eigen::Index nu = blk.n_inputs(), ny = blk.n_outputs();
    // u = E u_free + G y
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nu, ny);
    for (const auto& lk : links) {
        const Eigen::Index iu = blk.input_offset(lk.input_port, lk.input_kind);
        const Eigen::Index iy = blk.output_offset(lk.output_port, lk.output_kind);
        if (iu < 0 || iy < 0) {
            std::ostringstream os;
            os << "block '" << blk.name << "': cannot link " << kind_name(lk.output_kind) << " output of '"
               << lk.output_port << "' to " << kind_name(lk.input_kind) << " input of '" << lk.input_port
               << "' (channel missing or already closed)";
            throw ChannelError(os.str());
        }
        const int su = channel_size(lk.input_kind), sy = channel_size(lk.output_kind);
        if (lk.gain.rows() != su || lk.gain.cols() != sy) throw ChannelError("feedback gain has wrong shape");
        if (!G.block(iu, 0, su, ny).isZero(0.0)) throw ChannelError("input '" + lk.input_port + "' linked twice");
        G.block(iu, iy, su, sy) = lk.gain;
    }
    const Eigen::MatrixXd loop = Eigen::MatrixXd::Identity(ny, ny) - blk.D * G;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(loop);
    if (!lu.isInvertible()) throw NumericalFailure("block '" + blk.name + "': algebraic loop is singular");
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(loop);
    const auto& s = svd.singularValues();
    const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(cond < 1e14)) throw NumericalFailure("block '" + blk.name + "': algebraic loop is ill-conditioned");

    const Eigen::MatrixXd LC = lu.solve(blk.C);
    const Eigen::MatrixXd LD = lu.solve(blk.D);

    TitopBlock full;
    full.name = blk.name;
    full.A = blk.A + blk.B * G * LC;
    full.B = blk.B + blk.B * G * LD;
    full.C = LC;
    full.D = LD;
    full.inputs = blk.inputs;
    full.outputs = blk.outputs;
    full.states = blk.states;
    full.loop_conditions = blk.loop_conditions;
    full.loop_conditions.push_back(cond);

    TitopBlock r = full;
    for (const auto& lk : links) {
        r = remove_input(r, lk.input_port, lk.input_kind);
        r = remove_output(r, lk.output_port, lk.output_kind);
    }
    return r;
}

TitopBlock remove_input(const TitopBlock& blk, const std::string& port, ChannelKind kind) {
    if (!blk.has_input(port, kind))
        throw ChannelError("block '" + blk.name + "': no open " + kind_name(kind) + " input at '" + port + "'");
    TitopBlock r = blk;
    r.inputs.clear();
    const auto idx = keep_indices(blk.inputs, port, kind, r.inputs);
    r.B = take_cols(blk.B, idx);
    r.D = take_cols(blk.D, idx);
    return r;
}

TitopBlock remove_output(const TitopBlock& blk, const std::string& port, ChannelKind kind) {
    if (!blk.has_output(port, kind))
        throw ChannelError("block '" + blk.name + "': no " + kind_name(kind) + " output at '" + port + "'");
    TitopBlock r = blk;
    r.outputs.clear();
    const auto idx = keep_indices(blk.outputs, port, kind, r.outputs);
    r.C = take_rows(blk.C, idx);
    r.D = take_rows(blk.D, idx);
    return r;
}

TitopBlock select_channel(const TitopBlock& blk, Eigen::Index input_index, Eigen::Index output_index) {
    if (input_index < 0 || input_index >= blk.n_inputs() || output_index < 0 || output_index >= blk.n_outputs())
        throw ChannelError("select_channel: index out of range");
    TitopBlock r;
    r.name = blk.name;
    r.A = blk.A;
    r.B = blk.B.col(input_index);
    r.C = blk.C.row(output_index);
    r.D = blk.D.block(output_index, input_index, 1, 1);
    r.states = blk.states;
    r.loop_conditions = blk.loop_conditions;
    return r;
}

}  // namespace spinbeam
