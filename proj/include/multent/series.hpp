#pragma once

#include <vector>

#include "multent/estimate.hpp"
#include "multent/grid.hpp"
#include "multent/subshift.hpp"

namespace multent {

struct Chain {
    long long start = 1;  // not divisible by p
    long long length = 1; // |{start, start*p, start*p^2, ...} inside [1, m]|
};

/// Partition of [1, m] into geometric chains {i, ip, ip^2, ...} over starts
/// i with p not dividing i.
struct ChainDecomposition {
    long long m = 0;
    int p = 2;
    std::vector<Chain> chains;
};

ChainDecomposition decompose_interval(long long m, int p);

/// counts[k-1] = number of chains of [1, m] with exactly k elements,
/// k = 1 .. floor(log_p m) + 1. Computed arithmetically, no enumeration.
std::vector<long long> chain_length_counts(long long m, int p);

/// Entropy of the one-dimensional multiplicative shift built from omega with
/// modulus p: the weighted word-count series with per-term weight
/// ((p-1)^2/p^2) / p^{i-1}, truncated once the crude alphabet^i tail bound
/// drops below tol.
EntropyEstimate entropy_1d_mult(const SubshiftSpec& omega, int p, double tol);

/// Entropy of the product of two multiplicative shifts on the plane: the
/// doubly weighted box-count series. Truncation is per-axis deep caps plus a
/// joint corner cap (the corner is where the transfer DP is expensive); the
/// tail bound stays the closed-form alphabet^{i1*i2} mass. Throws CapExceeded
/// when the requested tolerance needs boxes beyond the DP cap.
EntropyEstimate entropy_n2_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                     int p1, int p2, double tol, const GridCaps& caps = {});

/// Entropy of a multiplicative shift crossed with an ordinary shift: the
/// strip-growth-rate series with weights ((p-1)^2/p^2) / p^{i-1}.
EntropyEstimate entropy_n2_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                      double tol, const GridCaps& caps = {});

struct MultiplicativeFactor {
    SubshiftSpec omega;
    int p = 2;
};

/// Axial products on N^d, d = (#multiplicative) + (#ordinary) <= 4.
/// No ordinary axes: exact box-count series. One ordinary axis: strip growth
/// rates from cross-section transfer operators. Two or more ordinary axes
/// (or none of either kind beyond plain shifts): finite-size estimates,
/// flagged non-rigorous with an empirical uncertainty.
EntropyEstimate entropy_nd(const std::vector<MultiplicativeFactor>& mults,
                           const std::vector<SubshiftSpec>& shifts, double tol,
                           const GridCaps& caps = {});

} // namespace multent
