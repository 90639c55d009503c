#pragma once

#include <stdexcept>
#include <string>

namespace ttvsr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension or shape mismatch; message names the offending dims.
struct SizeError : Error {
    using Error::Error;
};

/// Malformed file contents (.flo, TTWB, PNG); message names the field.
struct FormatError : Error {
    using Error::Error;
};

/// Index outside a grid or list.
struct BoundsError : Error {
    using Error::Error;
};

/// Weight-file schema violation; message names the tensor.
struct LoadError : Error {
    using Error::Error;
};

/// Contract breach on an operation input.
struct PreconditionError : Error {
    using Error::Error;
};

/// Requested functionality compiled out or unavailable.
struct FeatureError : Error {
    using Error::Error;
};

} // namespace ttvsr
