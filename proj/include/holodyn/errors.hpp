#pragma once

#include <stdexcept>
#include <string>

namespace holodyn {

// Error taxonomy. The CLI maps these onto exit codes: configuration problems
// exit with 2, pipeline (propagation/decomposition/numeric) failures with 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};
struct NumericError : Error {
    using Error::Error;
};
struct DegeneracyError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct PropagationError : Error {
    using Error::Error;
};
struct DecompositionError : Error {
    using Error::Error;
};
struct GridError : Error {
    using Error::Error;
};

} // namespace holodyn
