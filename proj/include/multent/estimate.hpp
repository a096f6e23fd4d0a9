#pragma once

#include <vector>

namespace multent {

/// Truncated-series value with a certified tail. For a monotone series of
/// nonnegative terms the true value lies in [value, value + tail_bound].
/// rigorous == false marks results that involved floating-point term
/// evaluation beyond the exact-integer cap or finite-size limit estimates;
/// uncertainty then carries the empirical error indicator.
struct EntropyEstimate {
    double value = 0.0;
    double tail_bound = 0.0;
    std::vector<long long> truncation;
    long long terms_used = 0;
    bool rigorous = true;
    double uncertainty = 0.0;

    double midpoint() const { return value + tail_bound / 2.0; }
};

} // namespace multent
