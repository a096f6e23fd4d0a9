#pragma once

#include <vector>

#include "multent/bigint.hpp"
#include "multent/errors.hpp"
#include "multent/spectral.hpp"
#include "multent/subshift.hpp"

namespace multent {

/// Box pattern query: dims[i] is the extent along axis i, factors[i]
/// constrains every axis-i line. All factors share one alphabet.
struct BoxQuery {
    std::vector<long long> dims;
    std::vector<SubshiftSpec> factors;
};

struct GridCaps {
    long long dp_states = 1000000;    // transfer state cap for count_box
    long long strip_side = 4096;      // matrix side cap for strip spectra
    long long pair_cap = 60000000;    // transition pair cap
    long long corner_work = 400000000; // pair*step budget for series corner boxes
};

/// Exact number of labelings of the box such that every axis-i line is a
/// word of factor i's language. Transfer DP along the axis of largest
/// extent; axes with full factors are split off exactly. Factors must be
/// 1-step presentable (see one_step_adjacency). Throws CapExceeded when the
/// state space would exceed the cap.
BigInt count_box(const BoxQuery& q, const GridCaps& caps = {});

/// Same contract by exhaustive search with direct per-line checks; requires
/// alphabet^cells <= 2^26.
BigInt brute_force_box(const BoxQuery& q);

/// Transfer engine for the strip of the given width: states are width-long
/// words of the column factor, one step applies the row factor's adjacency
/// componentwise. Counts of the width x j box are read off after j-1 steps,
/// with each cell's row required to end in a row-live symbol.
class StripEngine {
  public:
    StripEngine(const SubshiftSpec& col_factor, const SubshiftSpec& row_factor, long long width,
                long long state_cap, long long pair_cap = 60000000);

    long long side() const { return side_; }
    const SparsePairs& transitions() const { return trans_; }

    /// counts[j-1] = exact pattern count of the width x j box, j = 1..j_max
    std::vector<BigInt> count_profile(long long j_max) const;
    /// log counts via scaled double transfer (absolute error ~1e-11 at j ~ 1000)
    std::vector<double> log_count_profile(long long j_max) const;

  private:
    long long width_ = 0;
    long long side_ = 0;
    SparsePairs trans_;
    std::vector<std::uint8_t> end_mask_; // state has every symbol row-live
};

struct StripSpectrum {
    long long width = 0;
    long long side = 0;      // transfer matrix side = count_words(col, width)
    double lambda = 0.0;     // log Perron eigenvalue
    double correction = 0.0; // log( sum(left) * sum(right) / rho )
    SpectralData spectral;   // empty vectors when a product shortcut applied
};

/// Spectral data of the width-i strip of omega (columns) crossed with x
/// (rows). Full factors are handled by exact product structure without
/// building the matrix; otherwise the matrix side is capped at
/// caps.strip_side. Throws NotPrimitive when the strip matrix is not mixing.
StripSpectrum strip_spectrum(const SubshiftSpec& omega, const SubshiftSpec& x, long long width,
                             const GridCaps& caps = {});

/// All labelings of a small box admissible for the given factors, row-major
/// cell order, enumerated depth-first in lexicographic order.
std::vector<std::vector<int>> enumerate_box_patterns(const std::vector<long long>& dims,
                                                     const std::vector<SubshiftSpec>& factors,
                                                     long long cap);

/// log Perron eigenvalue of the transfer operator whose states are the
/// admissible patterns of the cross-section box and whose step applies x
/// componentwise. Used for multi-axis strips.
double cross_section_lambda(const std::vector<long long>& dims,
                            const std::vector<SubshiftSpec>& factors, const SubshiftSpec& x,
                            const GridCaps& caps = {});

} // namespace multent
