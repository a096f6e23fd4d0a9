#include "multent/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace multent {

namespace {

bool primitive_by_squaring(const Adjacency& adj) {
    const int n = adj.n;
    // zero row or column can never fill in
    for (int i = 0; i < n; ++i) {
        bool row = false, col = false;
        for (int j = 0; j < n; ++j) {
            row |= adj.at(i, j) != 0;
            col |= adj.at(j, i) != 0;
        }
        if (!row || !col) return false;
    }
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> cur(std::size_t(n) * words, 0), nxt;
    auto set_bit = [&](std::vector<std::uint64_t>& m, int i, int j) {
        m[std::size_t(i) * words + j / 64] |= 1ull << (j % 64);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (adj.at(i, j)) set_bit(cur, i, j);

    // Once the matrix has no zero rows/columns, positivity is monotone in the
    // exponent, so checking at a power of two >= n^2 suffices.
    long long target = (long long)n * n, e = 1;
    std::vector<std::uint64_t> base = cur;
    while (e < target) {
        nxt.assign(cur.size(), 0);
        for (int i = 0; i < n; ++i) {
            const std::uint64_t* row = &cur[std::size_t(i) * words];
            std::uint64_t* out = &nxt[std::size_t(i) * words];
            for (int k = 0; k < n; ++k) {
                if (row[k / 64] >> (k % 64) & 1ull) {
                    const std::uint64_t* rk = &cur[std::size_t(k) * words];
                    for (int w = 0; w < words; ++w) out[w] |= rk[w];
                }
            }
        }
        cur.swap(nxt);
        e *= 2;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (!(cur[std::size_t(i) * words + j / 64] >> (j % 64) & 1ull)) return false;
    }
    return true;
}

bool primitive_by_graph(const Adjacency& adj) {
    const int n = adj.n;
    // strong connectivity via forward and backward reachability from node 0
    auto reach = [&](bool transpose) {
        std::vector<std::uint8_t> seen(n, 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                std::uint8_t e = transpose ? adj.at(v, u) : adj.at(u, v);
                if (e && !seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        return seen;
    };
    auto fwd = reach(false), bwd = reach(true);
    for (int i = 0; i < n; ++i)
        if (!fwd[i] || !bwd[i]) return false;

    // aperiodicity: gcd over edges of depth(u)+1-depth(v) on a BFS tree
    std::vector<long long> depth(n, -1);
    std::vector<int> queue = {0};
    depth[0] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int u = queue[h];
        for (int v = 0; v < n; ++v)
            if (adj.at(u, v) && depth[v] < 0) {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
    }
    long long g = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (adj.at(u, v)) g = std::gcd(g, depth[u] + 1 - depth[v]);
    return g == 1;
}

} // namespace

bool is_primitive(const Adjacency& adj) {
    if (adj.n == 0) return false;
    if (adj.n == 1) return adj.at(0, 0) != 0;
    return adj.n <= 600 ? primitive_by_squaring(adj) : primitive_by_graph(adj);
}

SparsePairs to_pairs(const Adjacency& adj) {
    SparsePairs p;
    p.n = adj.n;
    for (int i = 0; i < adj.n; ++i)
        for (int j = 0; j < adj.n; ++j)
            if (adj.at(i, j)) p.pairs.emplace_back(i, j);
    return p;
}

void SparsePairs::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (const auto& [i, j] : pairs) y[i] += x[j];
}

void SparsePairs::apply_transpose(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (const auto& [i, j] : pairs) y[j] += x[i];
}

SpectralData power_iteration(const SparsePairs& op) {
    const int n = op.n;
    const double kChangeTol = 1e-14;
    const long long kMaxIter = 1000000;

    std::vector<double> r(n, 1.0), l(n, 1.0), tmp;
    auto sweep = [&](std::vector<double>& v, bool transpose) {
        if (transpose)
            op.apply_transpose(v, tmp);
        else
            op.apply(v, tmp);
        double m = 0.0;
        for (double x : tmp) m = std::max(m, x);
        if (m <= 0.0) throw NotPrimitive("power_iteration: vector collapsed to zero");
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            tmp[i] /= m;
            change = std::max(change, std::abs(tmp[i] - v[i]));
        }
        v.swap(tmp);
        return change;
    };

    long long it = 0;
    int stable = 0;
    while (it < kMaxIter) {
        ++it;
        double c = std::max(sweep(r, false), sweep(l, true));
        stable = (c < kChangeTol) ? stable + 1 : 0;
        if (stable >= 3) break;
    }

    std::vector<double> ar, la;
    op.apply(r, ar);
    double lr = 0.0, lar = 0.0;
    for (int i = 0; i < n; ++i) {
        lr += l[i] * r[i];
        lar += l[i] * ar[i];
    }
    double rho = lar / lr;

    // polish both residuals to 1e-12 relative
    auto residual = [&](const std::vector<double>& v, bool transpose) {
        if (transpose)
            op.apply_transpose(v, tmp);
        else
            op.apply(v, tmp);
        double res = 0.0, norm = 0.0;
        for (int i = 0; i < n; ++i) {
            res = std::max(res, std::abs(tmp[i] - rho * v[i]));
            norm = std::max(norm, std::abs(v[i]));
        }
        return res / (rho * norm);
    };
    while (it < kMaxIter && (residual(r, false) > 1e-13 || residual(l, true) > 1e-13)) {
        ++it;
        sweep(r, false);
        sweep(l, true);
        op.apply(r, ar);
        lr = lar = 0.0;
        for (int i = 0; i < n; ++i) {
            lr += l[i] * r[i];
            lar += l[i] * ar[i];
        }
        rho = lar / lr;
    }
    if (residual(r, false) > 1e-12 || residual(l, true) > 1e-12)
        throw Error("power_iteration: residual tolerance not met within the iteration cap");

    double rmax = *std::max_element(r.begin(), r.end());
    for (auto& x : r) x /= rmax;
    double dot = 0.0;
    for (int i = 0; i < n; ++i) dot += l[i] * r[i];
    for (auto& x : l) x /= dot;

    SpectralData out;
    out.rho = rho;
    out.right = std::move(r);
    out.left = std::move(l);
    out.iterations = it;
    return out;
}

} // namespace multent
