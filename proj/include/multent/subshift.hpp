#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multent/bigint.hpp"
#include "multent/errors.hpp"

namespace multent {

enum class SubshiftKind { Full, Sft, ForbiddenWords };

/// One-dimensional subshift over a finite alphabet {0, ..., alphabet-1}.
/// Presented either with no constraints (full shift), a 0/1 adjacency matrix
/// (vertex shift / SFT), or a finite list of forbidden words of length >= 2.
struct SubshiftSpec {
    std::string name;
    int alphabet = 2;
    SubshiftKind kind = SubshiftKind::Full;
    // kind == Sft: square 0/1 matrix, adjacency[a][b] == 1 iff "ab" is allowed.
    std::vector<std::vector<std::uint8_t>> adjacency;
    // kind == ForbiddenWords: each word is a sequence of symbols, length >= 2.
    std::vector<std::vector<int>> forbidden;

    static SubshiftSpec full(int alphabet, std::string name = "full");
    static SubshiftSpec sft(std::vector<std::vector<std::uint8_t>> adjacency,
                            std::string name = "sft");
    static SubshiftSpec forbidden_words(int alphabet, std::vector<std::vector<int>> words,
                                        std::string name = "forbidden");
    /// The shift on {0,1} forbidding "11".
    static SubshiftSpec golden_mean();
};

void validate(const SubshiftSpec& spec);

/// True when the spec places no constraint at all (full kind, all-ones
/// adjacency, or an empty forbidden list).
bool is_full_shift(const SubshiftSpec& spec);

/// Higher-block presentation: returns an equivalent spec of kind Sft. For a
/// forbidden-word spec with maximal word length k the result lives on the
/// alphabet of admissible (k-1)-blocks, and its length-n words are in
/// bijection with the original ones for n >= k-1. Throws EmptyLanguage when
/// no infinite admissible configuration exists.
SubshiftSpec recode_to_sft(const SubshiftSpec& spec);

/// Exact number of length-n words in the language (factors of infinite
/// admissible configurations), arbitrary precision.
BigInt count_words(const SubshiftSpec& spec, long long n);

/// Membership of a finite word in the language, checked directly against the
/// presentation (substring scan plus right-extendability). Used by the
/// brute-force oracles; deliberately does not share the transfer-matrix path.
bool is_language_word(const SubshiftSpec& spec, const std::vector<int>& word);

/// Same check with the per-spec tables built once; use this in loops.
std::function<bool(const std::vector<int>&)> language_word_checker(const SubshiftSpec& spec);

struct SpectralData {
    double rho = 0.0;                // Perron eigenvalue
    std::vector<double> left, right; // left*A = rho*left, A*right = rho*right
    long long iterations = 0;
    // Normalization: max(right) == 1 and dot(left, right) == 1.
};

/// Perron data of the (recoded) adjacency matrix. Requires primitivity;
/// throws NotPrimitive otherwise. Power iteration from the all-ones vector,
/// deterministic, residuals below 1e-12 relative.
SpectralData perron(const SubshiftSpec& spec);

// --- helpers shared by the counting modules ---------------------------------

struct Adjacency {
    int n = 0;
    std::vector<std::uint8_t> bits; // row-major n*n
    std::uint8_t at(int i, int j) const { return bits[std::size_t(i) * n + j]; }
};

/// 1-step adjacency over the original alphabet. Only specs whose forbidden
/// words have length <= 2 admit one; longer words need recode_to_sft and a
/// change of alphabet, which the grid/tree counters do not perform. Throws
/// BadInput in that case.
Adjacency one_step_adjacency(const SubshiftSpec& spec);

/// Symbols from which an infinite admissible ray exists (greatest fixed point
/// of "has a successor in the set").
std::vector<std::uint8_t> live_symbols(const Adjacency& adj);

} // namespace multent
