#pragma once

#include <cstdint>
#include <vector>

#include "multent/errors.hpp"
#include "multent/subshift.hpp"

namespace multent {

/// Primitivity of a 0/1 matrix: some power is entrywise positive. Small
/// matrices use boolean squaring up to the n^2 exponent bound; large ones use
/// strong connectivity plus cycle-gcd aperiodicity (equivalent for 0/1
/// matrices).
bool is_primitive(const Adjacency& adj);

/// Linear-operator interface for power iteration: y = A x and y = A^T x.
struct SparsePairs {
    int n = 0;
    // (row, col) with A[row][col] == 1, sorted.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    void apply_transpose(const std::vector<double>& x, std::vector<double>& y) const;
};

SparsePairs to_pairs(const Adjacency& adj);

/// Deterministic power iteration (all-ones start, relative change < 1e-14 for
/// three consecutive sweeps, at most 1e6 sweeps), then residual polishing to
/// 1e-12 relative. Assumes primitivity was already checked.
SpectralData power_iteration(const SparsePairs& op);

} // namespace multent
