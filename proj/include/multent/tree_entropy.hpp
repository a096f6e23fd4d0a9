#pragma once

#include <map>
#include <vector>

#include "multent/estimate.hpp"
#include "multent/subshift.hpp"
#include "multent/tree_shapes.hpp"

namespace multent {

struct TreePatternCount {
    BigInt count;
    double log_count = 0.0;
};

/// Pattern count on an explicit reshaped tree: leaf-to-root product DP where
/// every edge is one adjacency step of the factor matching its direction
/// label (edge cost never enters; chain elements are consecutive letters of
/// one factor word). Factors must be 1-step presentable and share one
/// alphabet with each other.
TreePatternCount count_shape(const ReshapedTree& shape, const SubshiftSpec& dir1_factor,
                             const SubshiftSpec& dir2_factor);

/// Exact-integer bit cap for shape counts; beyond it the series evaluators
/// switch to log-domain doubles. Overridden by MULTENT_CAP_BITS.
long long exact_count_cap_bits();

/// Memoized pattern counter over implicit reshaped trees. Subtree values are
/// keyed by (ray direction, chain position, remaining budget), so series
/// evaluation never materializes large trees.
class ShapeCounter {
  public:
    ShapeCounter(const TreeParams& params, const SubshiftSpec& dir1_factor,
                 const SubshiftSpec& dir2_factor, long long cap_bits = exact_count_cap_bits());

    /// Vertex count of the shape (double; huge budgets overflow 64-bit).
    double tree_size(VertexType root, long long budget);

    /// Exact count; throws CapExceeded when the result would exceed cap_bits.
    BigInt exact_count(VertexType root, long long budget);

    /// log of the pattern count. Uses the exact path when it fits the bit
    /// cap, otherwise a scaled log-domain evaluation; *exact reports which.
    double log_count(VertexType root, long long budget, bool* exact = nullptr);

  private:
    struct LogVec {
        double scale = 0.0;
        std::vector<double> w;
    };
    using Key = std::tuple<int, long long, long long>;

    std::vector<ReshapedChild> children(int dir, long long pos, long long budget) const;
    const std::vector<BigInt>& exact_vec(int dir, long long pos, long long budget);
    const LogVec& log_vec(int dir, long long pos, long long budget);
    Key root_key(VertexType root, long long budget) const;

    TreeParams params_;
    int alphabet_ = 0;
    Adjacency adj_[2];
    long long cap_bits_ = 0;
    std::map<Key, std::vector<BigInt>> exact_memo_;
    std::map<Key, LogVec> log_memo_;
    std::map<Key, double> size_memo_;
};

/// Exhaustive pattern count on the radius-n ball under the tree constraints:
/// every maximal ray is scanned and its chains (multiplicative directions) or
/// consecutive pairs (ordinary direction) are checked against the factor
/// adjacency. Requires alphabet^(2^{n+1}-1) <= 2^26.
BigInt brute_force_tree(long long n, const TreeParams& params, const SubshiftSpec& dir1_factor,
                        const SubshiftSpec& dir2_factor);

/// Tree entropy of the product of two multiplicative shifts: the weighted
/// shape-count series over chain-minimal vertex classes, truncated by total
/// index with the geometric B-bound tail.
EntropyEstimate entropy_tree_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                       int p1, int p2, double tol,
                                       long long cap_bits = exact_count_cap_bits());

/// Tree entropy of a multiplicative shift crossed with an ordinary shift
/// (multiplicative rule on direction 1).
EntropyEstimate entropy_tree_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                        double tol, long long cap_bits = exact_count_cap_bits());

/// Ratio |dependency set of the root in the depth-n ball| / |ball| on the
/// d-ary tree, n = 0..n_max. moduli[a] >= 2 marks direction a as
/// multiplicative with that modulus, 0 as an ordinary shift direction.
/// The axial-product entropy series applies when this tends to zero.
std::vector<double> density_check_d(int d, const std::vector<int>& moduli, long long n_max);

} // namespace multent
