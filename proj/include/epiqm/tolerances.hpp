#pragma once

namespace epiqm {

// Absolute tolerance for scalar and entrywise matrix comparisons
// (hermiticity checks, zero-evidence cutoffs, eigenvalue clamping).
inline constexpr double kAtol = 1e-10;

// Relative tolerance for reconstruction-style checks (projector idempotence,
// unitarity, Kraus completeness, PVM resolution of identity).
inline constexpr double kRtol = 1e-8;

// Default cutoff separating genuine support from numerical noise, for both
// probability entries and density-operator eigenvalues.
inline constexpr double kSupportTol = 1e-9;

// Slack allowed on probability normalization (sum to one, row sums,
// hybrid-state branch weights).
inline constexpr double kProbTol = 1e-9;

// Eigenvalue-2 proximity when counting the intersection dimension of two
// orthogonal projectors through the spectrum of their sum.
inline constexpr double kIntersectionTol = 1e-8;

// Benefit-of-the-doubt parameter must stay well above the support cutoff
// and strictly below 1/2 so the perturbed assignment remains biased.
inline constexpr double kEpsilonMin = 1e-6;
inline constexpr double kEpsilonMax = 0.5;

}  // namespace epiqm
