#pragma once

#include <stdexcept>
#include <string>

namespace multent {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The subshift has no admissible infinite configuration.
struct EmptyLanguage : Error {
    using Error::Error;
};

// A spectral operation needs a primitive (mixing) transition matrix.
struct NotPrimitive : Error {
    using Error::Error;
};

// A state-space or size cap would be exceeded; raise the cap or loosen the tolerance.
struct CapExceeded : Error {
    using Error::Error;
};

// A tree vertex is not in the dependency set required by the requested map.
struct NotDependent : Error {
    using Error::Error;
};

// A structural self-check (tiling, multiplicity bookkeeping) did not hold.
struct VerificationFailed : Error {
    using Error::Error;
};

struct BadInput : Error {
    using Error::Error;
};

} // namespace multent
