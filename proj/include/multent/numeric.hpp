#pragma once

#include <cmath>
#include <cstdint>

namespace multent {

// Compensated accumulator; summation order is fixed by the caller so results
// are bit-reproducible.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

// Partial mass of the normalized geometric-weight identity
//   ((p-1)^2/p^2) * sum_{i=1}^{N} i / p^{i-1}  ->  1  as N -> infinity.
// Closed form: 1 - (N+1) p^-N + N p^-(N+1).
inline double geometric_weight_mass(int p, long long n_terms) {
    if (n_terms <= 0) return 0.0;
    const double pn = std::pow(double(p), double(-n_terms));
    return 1.0 - double(n_terms + 1) * pn + double(n_terms) * pn / double(p);
}

// Weight of the single series term at index i: ((p-1)^2/p^2) / p^{i-1}.
inline double geometric_weight(int p, long long i) {
    const double q = (double(p) - 1.0) / double(p);
    return q * q * std::pow(double(p), double(1 - i));
}

} // namespace multent
