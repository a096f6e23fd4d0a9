#pragma once

#include <utility>
#include <vector>

#include "multent/estimate.hpp"
#include "multent/series.hpp"
#include "multent/tree_entropy.hpp"

namespace multent {

struct ResidualPoint {
    long long m = 0, n = 0; // trees use n only (m == 0)
    double residual = 0.0;
    double normalizer = 0.0;
    double ratio = 0.0;
};

struct ResidualSeries {
    std::vector<ResidualPoint> points;
    EntropyEstimate entropy; // the subtracted entropy, with its tail bound
};

/// log pattern count of the m x n box minus m*n*h for the product of two
/// multiplicative shifts. The log count is assembled exactly from the chain
/// decomposition of both axes (product over chain pairs of small box
/// counts); h is computed to the tightest reachable tolerance and taken at
/// the midpoint of its bracket. Normalizer: n log m + m log n.
ResidualSeries residual_n2_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                     int p1, int p2,
                                     const std::vector<std::pair<long long, long long>>& points,
                                     const GridCaps& caps = {});

/// Same for a multiplicative shift crossed with an ordinary shift. The log
/// count is the chain-decomposition product of strip counts; the normalizer
/// is n log m + m * sum_k |H(k)| / p^{k-1} with H the strip eigenvector
/// correction, truncated where the strips become infeasible.
ResidualSeries residual_n2_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                      const std::vector<std::pair<long long, long long>>& points,
                                      const GridCaps& caps = {});

/// Tree residual: sum over the ball decomposition of multiplicity * log
/// shape count, minus |ball| * h. Normalizer: B^n.
ResidualSeries residual_tree_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                       int p1, int p2, long long n_max);

ResidualSeries residual_tree_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                        long long n_max);

} // namespace multent
