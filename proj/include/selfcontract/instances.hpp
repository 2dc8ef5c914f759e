#pragma once

// Seeded instance generators. Everything here is a pure function of its seed,
// so tests and the command line tool can regenerate identical corpora.

#include "selfcontract/curves.hpp"
#include "selfcontract/prox.hpp"

namespace selfcontract {

// Random strongly convex quadratic in the given dimension. The matrix is
// built as B^T B / dim + 0.2 I from gaussian entries, so it is symmetric
// positive definite with a modest condition number.
ConvexFunction random_psd_quadratic(std::uint64_t seed, int dim);

// Random step schedule with all steps in (0, 1]. Rotates through the
// constant / geometric / harmonic / explicit families by seed.
ProxSchedule random_schedule(std::uint64_t seed);

// Canonical corpus element: a proximal trace of a random quadratic from a
// random start, 30 iterations, dimension cycling through {2, 3, 5}.
ProxTrace corpus_prox_trace(std::uint64_t seed);

// Random walk with gaussian increments; generically violates every
// monotonicity predicate in this library.
DiscreteCurve random_walk_curve(std::uint64_t seed, int dim, std::size_t count,
                                double step_scale = 1.0);

} // namespace selfcontract
