#include "multent/subshift.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "multent/spectral.hpp"

namespace multent {

SubshiftSpec SubshiftSpec::full(int alphabet, std::string name) {
    SubshiftSpec s;
    s.name = std::move(name);
    s.alphabet = alphabet;
    s.kind = SubshiftKind::Full;
    return s;
}

SubshiftSpec SubshiftSpec::sft(std::vector<std::vector<std::uint8_t>> adjacency, std::string name) {
    SubshiftSpec s;
    s.name = std::move(name);
    s.alphabet = int(adjacency.size());
    s.kind = SubshiftKind::Sft;
    s.adjacency = std::move(adjacency);
    validate(s);
    return s;
}

SubshiftSpec SubshiftSpec::forbidden_words(int alphabet, std::vector<std::vector<int>> words,
                                           std::string name) {
    SubshiftSpec s;
    s.name = std::move(name);
    s.alphabet = alphabet;
    s.kind = SubshiftKind::ForbiddenWords;
    s.forbidden = std::move(words);
    validate(s);
    return s;
}

SubshiftSpec SubshiftSpec::golden_mean() {
    return sft({{1, 1}, {1, 0}}, "golden-mean");
}

void validate(const SubshiftSpec& spec) {
    if (spec.alphabet < 1) throw BadInput("subshift: alphabet size must be positive");
    switch (spec.kind) {
    case SubshiftKind::Full:
        break;
    case SubshiftKind::Sft:
        if (int(spec.adjacency.size()) != spec.alphabet)
            throw BadInput("subshift: adjacency must be alphabet x alphabet");
        for (const auto& row : spec.adjacency) {
            if (int(row.size()) != spec.alphabet)
                throw BadInput("subshift: adjacency must be square");
            for (auto v : row)
                if (v > 1) throw BadInput("subshift: adjacency entries must be 0/1");
        }
        break;
    case SubshiftKind::ForbiddenWords:
        for (const auto& w : spec.forbidden) {
            if (w.size() < 2) throw BadInput("subshift: forbidden words must have length >= 2");
            for (int c : w)
                if (c < 0 || c >= spec.alphabet)
                    throw BadInput("subshift: forbidden word symbol out of range");
        }
        break;
    }
}

bool is_full_shift(const SubshiftSpec& spec) {
    switch (spec.kind) {
    case SubshiftKind::Full:
        return true;
    case SubshiftKind::ForbiddenWords:
        return spec.forbidden.empty();
    case SubshiftKind::Sft:
        for (const auto& row : spec.adjacency)
            for (auto v : row)
                if (!v) return false;
        return true;
    }
    return false;
}

std::vector<std::uint8_t> live_symbols(const Adjacency& adj) {
    std::vector<std::uint8_t> live(adj.n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < adj.n; ++i) {
            if (!live[i]) continue;
            bool ok = false;
            for (int j = 0; j < adj.n && !ok; ++j)
                ok = adj.at(i, j) && live[j];
            if (!ok) {
                live[i] = 0;
                changed = true;
            }
        }
    }
    return live;
}

namespace {

Adjacency adjacency_of(const SubshiftSpec& spec) {
    Adjacency a;
    a.n = spec.alphabet;
    a.bits.assign(std::size_t(a.n) * a.n, 1);
    if (spec.kind == SubshiftKind::Sft) {
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j)
                a.bits[std::size_t(i) * a.n + j] = spec.adjacency[i][j];
    }
    return a;
}

// Enumerate admissible (k-1)-blocks of a forbidden-word spec and their
// transitions. Block b -> b' allowed iff they overlap in k-2 symbols and the
// joined k-window contains no forbidden word.
struct BlockGraph {
    int block_len = 0;
    std::vector<std::vector<int>> blocks;
    Adjacency adj;
};

bool contains_forbidden(const std::vector<int>& w, const std::vector<std::vector<int>>& forb) {
    for (const auto& f : forb) {
        if (f.size() > w.size()) continue;
        for (std::size_t s = 0; s + f.size() <= w.size(); ++s) {
            if (std::equal(f.begin(), f.end(), w.begin() + s)) return true;
        }
    }
    return false;
}

BlockGraph build_block_graph(const SubshiftSpec& spec) {
    std::size_t k = 2;
    for (const auto& w : spec.forbidden) k = std::max(k, w.size());
    BlockGraph g;
    g.block_len = int(k - 1);

    std::vector<int> cur(g.block_len, 0);
    // odometer over all blocks, keep the admissible ones
    while (true) {
        if (!contains_forbidden(cur, spec.forbidden)) g.blocks.push_back(cur);
        int pos = g.block_len - 1;
        while (pos >= 0 && cur[pos] == spec.alphabet - 1) cur[pos--] = 0;
        if (pos < 0) break;
        ++cur[pos];
    }

    const int n = int(g.blocks.size());
    g.adj.n = n;
    g.adj.bits.assign(std::size_t(n) * n, 0);
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[g.blocks[i]] = i;

    std::vector<int> window(k);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < spec.alphabet; ++c) {
            std::copy(g.blocks[i].begin(), g.blocks[i].end(), window.begin());
            window[k - 1] = c;
            if (contains_forbidden(window, spec.forbidden)) continue;
            std::vector<int> next(window.begin() + 1, window.end());
            auto it = index.find(next);
            if (it != index.end()) g.adj.bits[std::size_t(i) * n + it->second] = 1;
        }
    }
    return g;
}

} // namespace

SubshiftSpec recode_to_sft(const SubshiftSpec& spec) {
    validate(spec);
    SubshiftSpec out;
    out.kind = SubshiftKind::Sft;
    out.name = spec.name.empty() ? "sft" : spec.name + "-sft";

    Adjacency adj;
    if (spec.kind == SubshiftKind::ForbiddenWords && !spec.forbidden.empty()) {
        auto g = build_block_graph(spec);
        adj = g.adj;
    } else {
        adj = adjacency_of(spec);
    }

    auto live = live_symbols(adj);
    if (std::find(live.begin(), live.end(), std::uint8_t(1)) == live.end())
        throw EmptyLanguage("recode_to_sft: every word is eventually forbidden");

    out.alphabet = adj.n;
    out.adjacency.assign(adj.n, std::vector<std::uint8_t>(adj.n, 0));
    for (int i = 0; i < adj.n; ++i)
        for (int j = 0; j < adj.n; ++j)
            out.adjacency[i][j] = adj.at(i, j);
    return out;
}

Adjacency one_step_adjacency(const SubshiftSpec& spec) {
    validate(spec);
    if (spec.kind == SubshiftKind::ForbiddenWords) {
        for (const auto& w : spec.forbidden)
            if (w.size() > 2)
                throw BadInput("factor '" + spec.name +
                               "' has forbidden words longer than 2; give it as an SFT");
        Adjacency a = adjacency_of(spec);
        for (const auto& w : spec.forbidden)
            a.bits[std::size_t(w[0]) * a.n + w[1]] = 0;
        return a;
    }
    return adjacency_of(spec);
}

BigInt count_words(const SubshiftSpec& spec, long long n) {
    if (n < 1) throw BadInput("count_words: length must be positive");
    validate(spec);
    if (is_full_shift(spec)) return big_pow(BigInt(spec.alphabet), (unsigned long long)n);

    Adjacency adj;
    int block_len = 1;
    std::vector<std::vector<int>> blocks;
    if (spec.kind == SubshiftKind::ForbiddenWords) {
        auto g = build_block_graph(spec);
        adj = g.adj;
        block_len = g.block_len;
        blocks = std::move(g.blocks);
    } else {
        adj = adjacency_of(spec);
    }
    auto live = live_symbols(adj);
    if (std::find(live.begin(), live.end(), std::uint8_t(1)) == live.end())
        throw EmptyLanguage("count_words: empty language");

    if (n < block_len) {
        // words shorter than the block length: distinct prefixes of live blocks
        std::vector<std::vector<int>> prefixes;
        for (int i = 0; i < adj.n; ++i)
            if (live[i]) prefixes.emplace_back(blocks[i].begin(), blocks[i].begin() + n);
        std::sort(prefixes.begin(), prefixes.end());
        prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
        return BigInt(prefixes.size());
    }

    // paths of n - block_len steps ending in a live state
    std::vector<BigInt> v(adj.n);
    for (int i = 0; i < adj.n; ++i) v[i] = live[i] ? 1 : 0;
    for (long long step = 0; step < n - block_len; ++step) {
        std::vector<BigInt> w(adj.n, 0);
        for (int i = 0; i < adj.n; ++i) {
            for (int j = 0; j < adj.n; ++j)
                if (adj.at(i, j) && !v[j].is_zero()) w[i] += v[j];
        }
        v.swap(w);
    }
    BigInt total = 0;
    for (const auto& x : v) total += x;
    return total;
}

std::function<bool(const std::vector<int>&)> language_word_checker(const SubshiftSpec& spec) {
    validate(spec);
    const int alphabet = spec.alphabet;
    if (is_full_shift(spec)) {
        return [alphabet](const std::vector<int>& w) {
            for (int c : w)
                if (c < 0 || c >= alphabet) return false;
            return true;
        };
    }

    if (spec.kind == SubshiftKind::Sft) {
        auto adj = spec.adjacency;
        auto live = live_symbols(adjacency_of(spec));
        return [alphabet, adj = std::move(adj), live = std::move(live)](const std::vector<int>& w) {
            if (w.empty()) return true;
            for (int c : w)
                if (c < 0 || c >= alphabet) return false;
            for (std::size_t t = 0; t + 1 < w.size(); ++t)
                if (!adj[std::size_t(w[t])][std::size_t(w[t + 1])]) return false;
            return live[std::size_t(w.back())] != 0;
        };
    }

    // forbidden-word spec: substring scan, then right-extendability of the
    // final window through the block graph
    auto g = build_block_graph(spec);
    auto live = live_symbols(g.adj);
    auto forbidden = spec.forbidden;
    return [alphabet, g = std::move(g), live = std::move(live),
            forbidden = std::move(forbidden)](const std::vector<int>& w) {
        if (w.empty()) return true;
        for (int c : w)
            if (c < 0 || c >= alphabet) return false;
        if (contains_forbidden(w, forbidden)) return false;
        if (w.size() < std::size_t(g.block_len)) {
            for (int i = 0; i < g.adj.n; ++i) {
                if (!live[std::size_t(i)]) continue;
                if (std::equal(w.begin(), w.end(), g.blocks[std::size_t(i)].begin())) return true;
            }
            return false;
        }
        std::vector<int> tail(w.end() - g.block_len, w.end());
        for (int i = 0; i < g.adj.n; ++i)
            if (live[std::size_t(i)] && g.blocks[std::size_t(i)] == tail) return true;
        return false;
    };
}

bool is_language_word(const SubshiftSpec& spec, const std::vector<int>& word) {
    return language_word_checker(spec)(word);
}

SpectralData perron(const SubshiftSpec& spec) {
    SubshiftSpec coded = recode_to_sft(spec);
    Adjacency adj = adjacency_of(coded);
    if (!is_primitive(adj)) throw NotPrimitive("perron: adjacency matrix is not primitive");
    return power_iteration(to_pairs(adj));
}

} // namespace multent
