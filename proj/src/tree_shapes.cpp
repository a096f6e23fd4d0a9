#include "multent/tree_shapes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace multent {

namespace {

void check_params(const TreeParams& params) {
    if (params.p1 < 2) throw BadInput("tree: p1 must be >= 2");
    if (params.mode == TreeMode::TwoSided && params.p2 < 2)
        throw BadInput("tree: p2 must be >= 2");
}

bool is_power_of(long long v, int p) {
    if (v < p) return false;
    while (v % p == 0) v /= p;
    return v == 1;
}

struct RunView {
    int dir;
    long long len;
};

std::vector<RunView> runs_of(const std::string& word) {
    std::vector<RunView> runs;
    for (char c : word) {
        if (c != '1' && c != '2') throw BadInput("tree word: letters must be '1' or '2'");
        int d = c - '0';
        if (!runs.empty() && runs.back().dir == d)
            ++runs.back().len;
        else
            runs.push_back({d, 1});
    }
    return runs;
}

} // namespace

std::vector<ReshapedChild> reshaped_children(int ray_dir, long long chain_pos,
                                             const TreeParams& params) {
    std::vector<ReshapedChild> out;
    if (params.mode == TreeMode::TwoSided) {
        const long long pa = (ray_dir == 1) ? params.p1 : params.p2;
        const long long pb = (ray_dir == 1) ? params.p2 : params.p1;
        ReshapedChild cont{ray_dir, chain_pos * pa, chain_pos * (pa - 1)};
        ReshapedChild swit{3 - ray_dir, pb, pb - 1};
        if (ray_dir == 1) {
            out = {cont, swit};
        } else {
            out = {swit, cont};
        }
    } else {
        if (ray_dir == 1) {
            out.push_back({1, chain_pos * params.p1, chain_pos * (params.p1 - 1)});
            out.push_back({2, 2, 1});
        } else {
            out.push_back({1, params.p1, params.p1 - 1});
            out.push_back({2, chain_pos + 1, 1});
        }
    }
    return out;
}

ReshapedTree build_reshaped(VertexType root_type, long long budget, const TreeParams& params) {
    check_params(params);
    if (budget < 0) throw BadInput("build_reshaped: budget must be >= 0");
    if (root_type.index < 1) throw BadInput("build_reshaped: type index must be >= 1");
    if (root_type.dir != 1 && root_type.dir != 2)
        throw BadInput("build_reshaped: type direction must be 1 or 2");
    if (root_type.index == 1 && root_type.dir == 2) root_type.dir = 1; // (1,1) canonical

    ReshapedTree tree;
    tree.root_type = root_type;
    tree.budget = budget;
    tree.params = params;

    ReshapedVertex root;
    root.ray_dir = root_type.dir;
    root.chain_pos = root_type.index;
    tree.vertices.push_back(root);

    for (std::size_t head = 0; head < tree.vertices.size(); ++head) {
        const auto v = tree.vertices[head]; // copy: vector may reallocate
        for (const auto& ch : reshaped_children(v.ray_dir, v.chain_pos, params)) {
            if (v.depth + ch.cost > budget) continue;
            ReshapedVertex w;
            w.parent = int(head);
            w.in_dir = ch.dir;
            w.in_cost = ch.cost;
            w.depth = v.depth + ch.cost;
            w.ray_dir = ch.dir;
            w.chain_pos = ch.chain_pos;
            w.word = v.word + std::string(std::size_t(ch.cost), char('0' + ch.dir));
            tree.vertices.push_back(std::move(w));
            if (tree.vertices.size() > (1u << 22))
                throw CapExceeded("build_reshaped: tree over 2^22 vertices");
        }
    }
    return tree;
}

AlternatingComposition word_to_alternating_parts(const std::string& word,
                                                 const TreeParams& params) {
    check_params(params);
    if (params.mode != TreeMode::TwoSided)
        throw BadInput("word_to_alternating_parts: two-sided mode only");
    AlternatingComposition parts;
    for (const auto& r : runs_of(word)) {
        const int p = (r.dir == 1) ? params.p1 : params.p2;
        if (!is_power_of(r.len + 1, p))
            throw NotDependent("word run length " + std::to_string(r.len) +
                               " is not of the form p^t - 1");
        parts.push_back({r.dir, r.len});
    }
    return parts;
}

std::string alternating_parts_to_word(const AlternatingComposition& parts,
                                      const TreeParams& params) {
    check_params(params);
    if (params.mode != TreeMode::TwoSided)
        throw BadInput("alternating_parts_to_word: two-sided mode only");
    std::string word;
    int prev_axis = 0;
    for (const auto& part : parts) {
        if (part.axis != 1 && part.axis != 2) throw NotDependent("part axis must be 1 or 2");
        if (part.axis == prev_axis) throw NotDependent("parts must alternate axes");
        const int p = (part.axis == 1) ? params.p1 : params.p2;
        if (!is_power_of(part.value + 1, p))
            throw NotDependent("part value is not of the form p^t - 1");
        word += std::string(std::size_t(part.value), char('0' + part.axis));
        prev_axis = part.axis;
    }
    return word;
}

SingleComposition word_to_single_parts(const std::string& word, const TreeParams& params) {
    check_params(params);
    if (params.mode != TreeMode::OneSidedLeft)
        throw BadInput("word_to_single_parts: one-sided mode only");
    SingleComposition parts;
    auto runs = runs_of(word);
    if (runs.empty()) return {1};
    for (std::size_t t = 0; t < runs.size(); ++t) {
        const auto& r = runs[t];
        if (r.dir == 1) {
            if (!is_power_of(r.len + 1, params.p1))
                throw NotDependent("direction-1 run length + 1 is not a power of p");
            parts.push_back(r.len + 1);
        } else {
            long long ones = r.len - 1;
            if (t == 0) ++ones;
            if (t + 1 == runs.size()) ++ones;
            parts.insert(parts.end(), std::size_t(ones), 1);
        }
    }
    return parts;
}

std::string single_parts_to_word(const SingleComposition& parts, const TreeParams& params) {
    check_params(params);
    if (params.mode != TreeMode::OneSidedLeft)
        throw BadInput("single_parts_to_word: one-sided mode only");
    if (parts.empty()) throw NotDependent("empty composition has no vertex");
    for (long long v : parts)
        if (v != 1 && !is_power_of(v, params.p1))
            throw NotDependent("part is neither 1 nor a power of p");

    // split into maximal blocks of ones and single large parts
    std::string word;
    std::size_t i = 0;
    bool all_ones = std::all_of(parts.begin(), parts.end(), [](long long v) { return v == 1; });
    if (all_ones) return std::string(parts.size() - 1, '2');

    bool first = true;
    while (i < parts.size()) {
        if (parts[i] == 1) {
            std::size_t j = i;
            while (j < parts.size() && parts[j] == 1) ++j;
            long long ones = (long long)(j - i);
            // leading and trailing blocks keep their length; interior blocks
            // of g ones stand for a run of g+1 direction-2 letters
            long long len = (first || j == parts.size()) ? ones : ones + 1;
            word += std::string(std::size_t(len), '2');
            i = j;
        } else {
            if (!first && parts[i - 1] != 1) word += '2'; // empty interior block
            word += std::string(std::size_t(parts[i] - 1), '1');
            ++i;
        }
        first = false;
    }
    return word;
}

BigInt TreeDecomposition::total_vertices() const {
    BigInt total = 0;
    for (const auto& c : components) total += BigInt(c.multiplicity) * c.shape.size();
    return total;
}

namespace {

// terminal-run type of an ambient word; empty word -> (1,1)
VertexType type_of_word(const std::string& w) {
    if (w.empty()) return {1, 1};
    auto runs = runs_of(w);
    return {runs.back().dir, runs.back().len + 1};
}

// chain predecessor of a vertex; false when the vertex is chain-minimal
bool chain_predecessor(const std::string& w, const TreeParams& params, std::string* pred) {
    if (w.empty()) return false;
    auto runs = runs_of(w);
    const int dir = runs.back().dir;
    const long long pos = runs.back().len + 1;
    if (params.mode == TreeMode::OneSidedLeft && dir == 2) {
        *pred = w.substr(0, w.size() - 1);
        return true;
    }
    const int p = (dir == 1) ? params.p1 : params.p2;
    if (pos % p != 0) return false;
    *pred = w.substr(0, w.size() - std::size_t(pos - pos / p));
    return true;
}

void verify_tiling(const TreeDecomposition& dec) {
    const long long n = dec.n;
    // enumerate the ball and group vertices by their chain-minimal ancestor
    std::vector<std::string> ball = {""};
    for (std::size_t h = 0; h < ball.size(); ++h) {
        if ((long long)ball[h].size() >= n) continue;
        ball.push_back(ball[h] + '1');
        ball.push_back(ball[h] + '2');
    }
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& w : ball) {
        std::string cur = w, pred;
        while (chain_predecessor(cur, dec.params, &pred)) cur = pred;
        groups[cur].push_back(w);
    }

    // anchors per (type, budget) must match the component multiset
    std::map<std::pair<VertexType, long long>, long long> expected, found;
    for (const auto& c : dec.components)
        expected[{c.shape.root_type, c.shape.budget}] += c.multiplicity;
    for (const auto& [anchor, members] : groups) {
        VertexType t = type_of_word(anchor);
        found[{t, n - (long long)anchor.size()}] += 1;
    }
    if (expected != found)
        throw VerificationFailed("decompose_tree: anchor multiset does not match the component list");

    // each anchor's dependency set must be exactly the reshaped tree
    for (const auto& [anchor, members] : groups) {
        auto shape = build_reshaped(type_of_word(anchor), n - (long long)anchor.size(), dec.params);
        std::vector<std::string> expected_words;
        expected_words.reserve(shape.vertices.size());
        for (const auto& v : shape.vertices) expected_words.push_back(anchor + v.word);
        std::sort(expected_words.begin(), expected_words.end());
        std::vector<std::string> got = members;
        std::sort(got.begin(), got.end());
        if (expected_words != got)
            throw VerificationFailed("decompose_tree: dependency set mismatch at anchor '" +
                                     anchor + "'");
    }
}

} // namespace

TreeDecomposition decompose_tree(long long n, const TreeParams& params, bool verify) {
    check_params(params);
    if (n < 0 || n > 24) throw BadInput("decompose_tree: need 0 <= n <= 24");

    TreeDecomposition dec;
    dec.n = n;
    dec.params = params;

    auto add = [&](VertexType t, long long budget, long long mult) {
        TreeComponent c;
        c.multiplicity = mult;
        c.shape = build_reshaped(t, budget, params);
        dec.components.push_back(std::move(c));
    };

    // interior terms: anchors w 2 1^{i-1} at depth n-k, one full budget-k
    // dependency tree each; 2^{n-i-k} choices of the prefix w
    for (long long k = 0; k <= n - 1; ++k)
        for (long long i = 2; i + k <= n; ++i)
            if (i % params.p1 != 0) add({1, i}, k, 1ll << (n - i - k));
    if (params.mode == TreeMode::TwoSided) {
        for (long long k = 0; k <= n - 1; ++k)
            for (long long j = 2; j + k <= n; ++j)
                if (j % params.p2 != 0) add({2, j}, k, 1ll << (n - j - k));
    }
    // boundary terms: the straight-run anchors at depth i-1
    for (long long i = 2; i <= n + 1; ++i)
        if (i % params.p1 != 0) add({1, i}, n + 1 - i, 1);
    if (params.mode == TreeMode::TwoSided) {
        for (long long j = 2; j <= n + 1; ++j)
            if (j % params.p2 != 0) add({2, j}, n + 1 - j, 1);
    }
    add({1, 1}, n, 1);

    BigInt ball_size = big_pow(2, (unsigned long long)(n + 1)) - 1;
    if (dec.total_vertices() != ball_size)
        throw VerificationFailed("decompose_tree: component sizes do not sum to the ball size");
    if (verify) verify_tiling(dec);
    return dec;
}

double size_bound(long long k) {
    const double B = growth_model().B;
    double sum = 0.0, term = 1.0;
    for (long long t = 1; t <= k + 1; ++t) {
        term *= B;
        sum += term;
    }
    return sum;
}

} // namespace multent
