#pragma once

#include <string>
#include <vector>

#include "multent/bigint.hpp"
#include "multent/errors.hpp"
#include "multent/partitions.hpp"

namespace multent {

/// Constraint layout on the binary tree. TwoSided: both generator directions
/// carry a multiplicative rule (moduli p1, p2). OneSidedLeft: direction 1 is
/// multiplicative with modulus p1 and direction 2 is an ordinary shift.
enum class TreeMode { TwoSided, OneSidedLeft };

struct TreeParams {
    TreeMode mode = TreeMode::TwoSided;
    int p1 = 2;
    int p2 = 2; // ignored in OneSidedLeft
    bool operator==(const TreeParams&) const = default;
};

/// Position of a vertex inside its maximal run: (index, 1) for a vertex that
/// is the index-th element of a direction-1 run, (1, index) for direction 2.
/// The root of the whole tree has type (1, 1), stored as dir=1, index=1.
struct VertexType {
    int dir = 1;
    long long index = 1;
    bool operator==(const VertexType&) const = default;
    auto operator<=>(const VertexType&) const = default;
};

struct ReshapedVertex {
    int parent = -1;      // index into vertices; -1 for the root
    int in_dir = 0;       // direction of the hop from the parent (0 for root)
    long long in_cost = 0;// ambient edge count of that hop
    long long depth = 0;  // ambient distance from the root
    int ray_dir = 0;      // direction of the ray the vertex sits on
    long long chain_pos = 1; // position within that ray (1-based)
    std::string word;     // ambient word relative to the root, letters '1'/'2'
};

/// The dependency set of a vertex of the given type, re-linked so every
/// vertex's parent is its chain predecessor, restricted to ambient distance
/// <= budget. Vertices are in BFS order, root first.
struct ReshapedTree {
    VertexType root_type;
    long long budget = 0;
    TreeParams params;
    std::vector<ReshapedVertex> vertices;
    long long size() const { return (long long)vertices.size(); }
};

/// Dependency successors of a vertex sitting on a `ray_dir` ray at position
/// `chain_pos`: continue along the ray to the next chain element, or start a
/// fresh ray in the other direction. Cost is the ambient edge count.
struct ReshapedChild {
    int dir;
    long long chain_pos;
    long long cost;
};
std::vector<ReshapedChild> reshaped_children(int ray_dir, long long chain_pos,
                                             const TreeParams& params);

/// Any root type (i,1) or (1,j) with index >= 1 is accepted: the dependency
/// set below a vertex is defined uniformly by its ray position, whether or
/// not the vertex is itself chain-minimal. Ball decompositions only ever use
/// chain-minimal roots.
ReshapedTree build_reshaped(VertexType root_type, long long budget, const TreeParams& params);

/// Word (over letters '1'/'2') <-> composition maps for dependent vertices of
/// the root. Throw NotDependent when the word is not in the dependency set.

/// Two-sided: run lengths map to tagged parts (axis = run direction,
/// value = run length, which must be p_axis^t - 1). Empty word -> empty list.
AlternatingComposition word_to_alternating_parts(const std::string& word, const TreeParams& params);
std::string alternating_parts_to_word(const AlternatingComposition& parts, const TreeParams& params);

/// One-sided: a word of length k maps to a composition of k+1 with parts in
/// {1} U {p1^t}. Direction-1 runs of length a become the part a+1; a
/// direction-2 run of length b becomes b-1 ones in the interior, b ones at
/// either end, and b+1 ones when it is the whole word. Empty word -> (1).
SingleComposition word_to_single_parts(const std::string& word, const TreeParams& params);
std::string single_parts_to_word(const SingleComposition& parts, const TreeParams& params);

struct TreeComponent {
    long long multiplicity = 1; // a power of two
    ReshapedTree shape;
};

struct TreeDecomposition {
    long long n = 0;
    TreeParams params;
    std::vector<TreeComponent> components;
    BigInt total_vertices() const;
};

/// Decomposition of the radius-n ball of the binary tree into reshaped
/// dependency trees, one per chain-minimal vertex class: interior terms
/// 2^{n-i-k} x (type (i,1), budget k) with i+k <= n, boundary terms with
/// budget n+1-i, the symmetric (1,j) family in two-sided mode, and the
/// root component of budget n. Self-checked against an explicit vertex
/// assignment; throws VerificationFailed if the pieces do not tile the ball.
TreeDecomposition decompose_tree(long long n, const TreeParams& params, bool verify = true);

/// Upper bound sum_{t=1}^{k+1} B^t on the size of any reshaped tree of
/// budget k, with B from growth_model().
double size_bound(long long k);

} // namespace multent
