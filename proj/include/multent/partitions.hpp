#pragma once

#include <vector>

#include "multent/bigint.hpp"
#include "multent/errors.hpp"

namespace multent {

/// One part of an alternating composition: the axis it came from (1 or 2) and
/// its value p_axis^t - 1, t >= 1. Axes must alternate along a composition.
struct TaggedPart {
    int axis = 1;
    long long value = 0;
    bool operator==(const TaggedPart&) const = default;
    auto operator<=>(const TaggedPart&) const = default;
};

using SingleComposition = std::vector<long long>;     // parts in {1} U {p^t : t >= 1}
using AlternatingComposition = std::vector<TaggedPart>;

struct SingleCompositionSet {
    int p = 2;
    long long n = 0;
    std::vector<SingleComposition> parts_lists;
};

struct AlternatingCompositionSet {
    int p1 = 2, p2 = 2;
    long long n = 0;
    std::vector<AlternatingComposition> parts_lists;
};

/// All ordered compositions of n with parts in {1} U {p^t : t >= 1},
/// lexicographically sorted. Enumeration is capped (default 30).
SingleCompositionSet enumerate_single(int p, long long n, long long cap = 30);

/// All compositions of n into parts p1^t - 1 and p2^t - 1 taken from the two
/// axes alternately. Both starting axes occur; elements carry their axis
/// tags, so for p1 == p2 a value tuple appears once per admissible tagging.
AlternatingCompositionSet enumerate_alternating(int p1, int p2, long long n, long long cap = 30);

/// Counting-only versions (suffix-sum dynamic programs, no enumeration).
BigInt count_single(int p, long long n);
BigInt count_alternating(int p1, int p2, long long n);

/// Growth data of the majorant recurrence a(n) = a(n-1) + 2a(n-2) - a(n-3)
/// with a(0)=a(1)=1, a(2)=3, whose characteristic polynomial is
/// x^3 - 2x^2 - x + 1. B = 1/|x_min| bounds the composition counts above.
struct GrowthModel {
    std::vector<double> roots; // ascending by value: x1 < x2 < x3
    double B = 0.0;            // 1 / |root of smallest absolute value|
    std::vector<BigInt> a_of(long long n_max) const;
};

GrowthModel growth_model();

} // namespace multent
