#pragma once

#include <stdexcept>
#include <string>

namespace epiqm {

// Root of the library's error hierarchy. Every throwing path uses a subtype
// so callers can dispatch on the failure kind.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix preconditions.
struct NotHermitian : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct NotProjector : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct NotPure : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct InvalidChannel : Error { using Error::Error; };

// Classical / hybrid preconditions.
struct SpaceMismatch : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct ZeroEvidence : Error { using Error::Error; };
struct Incompatible : Error { using Error::Error; };
struct JointlyIncompatible : Error { using Error::Error; };
struct BadWeights : Error { using Error::Error; };
struct UnsupportedDecomposition : Error { using Error::Error; };

// Construction-time invariant violations and malformed configuration.
struct InvalidState : Error { using Error::Error; };
struct BadConfig : Error { using Error::Error; };

}  // namespace epiqm
