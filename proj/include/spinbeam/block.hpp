#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinbeam {

enum class ChannelKind { Wrench, Motion };

inline int channel_size(ChannelKind k) { return k == ChannelKind::Wrench ? 6 : 18; }

/// A contiguous group of input or output channels attached to a connection point.
struct ChannelGroup {
    std::string port;   // qualified port name, e.g. "boom1.C"
    ChannelKind kind;
    std::string frame;  // frame the channels are projected in
    int size() const { return channel_size(kind); }
};

/// Tag used for modal classification; Rate marks velocity states that are ignored.
enum class StateFamily { InPlane, OutOfPlane, Traction, Torsion, Rigid, Rate };

struct StateInfo {
    StateFamily family;
    double weight;      // energy weight applied to |x_i|^2
    std::string owner;  // block that contributed the state
};

/// Labeled linear state-space model: x' = Ax + Bu, y = Cx + Du.
struct TitopBlock {
    std::string name;
    Eigen::MatrixXd A, B, C, D;
    std::vector<ChannelGroup> inputs, outputs;
    std::vector<StateInfo> states;
    /// Condition numbers of every algebraic loop resolved while building this block.
    std::vector<double> loop_conditions;

    Eigen::Index n_states() const { return A.rows(); }
    Eigen::Index n_inputs() const { return B.cols(); }
    Eigen::Index n_outputs() const { return C.rows(); }

    /// Offset of an input group, or -1 when absent.
    Eigen::Index input_offset(const std::string& port, ChannelKind kind) const;
    Eigen::Index output_offset(const std::string& port, ChannelKind kind) const;
    bool has_input(const std::string& port, ChannelKind kind) const { return input_offset(port, kind) >= 0; }
    bool has_output(const std::string& port, ChannelKind kind) const { return output_offset(port, kind) >= 0; }

    /// Throws ChannelError when matrix sizes disagree with the channel groups.
    void check() const;
};

/// Block diagonal juxtaposition; channels and states are concatenated.
TitopBlock append(const TitopBlock& a, const TitopBlock& b, const std::string& name);

struct FeedbackLink {
    std::string input_port;
    ChannelKind input_kind;
    std::string output_port;
    ChannelKind output_kind;
    Eigen::MatrixXd gain;  // u_in = gain * y_out
};

/// Closes the listed links by explicit elimination of the algebraic loop; the linked
/// inputs and outputs are removed from the result.
TitopBlock close_feedback(const TitopBlock& blk, const std::vector<FeedbackLink>& links);

/// Drops an input group (the input is held at zero).
TitopBlock remove_input(const TitopBlock& blk, const std::string& port, ChannelKind kind);
TitopBlock remove_output(const TitopBlock& blk, const std::string& port, ChannelKind kind);

/// Keeps a single scalar input / output channel.
TitopBlock select_channel(const TitopBlock& blk, Eigen::Index input_index, Eigen::Index output_index);

}  // namespace spinbeam
