#pragma once

#include <stdexcept>
#include <string>

namespace spinbeam {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Equilibrium fails the smallness test or a model is built from an invalid equilibrium.
struct ModelInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Singular systems, ill-posed loops, failed decompositions.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TopologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spinbeam
