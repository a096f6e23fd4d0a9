#include "multent/tree_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "multent/numeric.hpp"

namespace multent {

namespace {

void check_factors(const SubshiftSpec& f1, const SubshiftSpec& f2) {
    validate(f1);
    validate(f2);
    if (f1.alphabet != f2.alphabet)
        throw BadInput("tree counting: factors must share one alphabet");
}

} // namespace

long long exact_count_cap_bits() {
    if (const char* env = std::getenv("MULTENT_CAP_BITS")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 4096;
}

TreePatternCount count_shape(const ReshapedTree& shape, const SubshiftSpec& dir1_factor,
                             const SubshiftSpec& dir2_factor) {
    check_factors(dir1_factor, dir2_factor);
    const Adjacency adj[2] = {one_step_adjacency(dir1_factor), one_step_adjacency(dir2_factor)};
    const int A = adj[0].n;
    const auto& verts = shape.vertices;

    std::vector<std::vector<int>> kids(verts.size());
    for (std::size_t v = 1; v < verts.size(); ++v) kids[std::size_t(verts[v].parent)].push_back(int(v));

    // vertices are in BFS order, so a reverse sweep is leaf-to-root
    std::vector<std::vector<BigInt>> c(verts.size(), std::vector<BigInt>(std::size_t(A), 1));
    for (std::size_t v = verts.size(); v-- > 0;) {
        for (int w : kids[v]) {
            const Adjacency& m = adj[verts[std::size_t(w)].in_dir - 1];
            for (int s = 0; s < A; ++s) {
                BigInt dot = 0;
                for (int t = 0; t < A; ++t)
                    if (m.at(s, t)) dot += c[std::size_t(w)][std::size_t(t)];
                c[v][std::size_t(s)] *= dot;
            }
        }
    }
    TreePatternCount out;
    out.count = 0;
    for (int s = 0; s < A; ++s) out.count += c[0][std::size_t(s)];
    if (out.count.is_zero()) throw EmptyLanguage("count_shape: no admissible labeling");
    out.log_count = log_big(out.count);
    return out;
}

// ---------------------------------------------------------------------------
// ShapeCounter

ShapeCounter::ShapeCounter(const TreeParams& params, const SubshiftSpec& dir1_factor,
                           const SubshiftSpec& dir2_factor, long long cap_bits)
    : params_(params), cap_bits_(cap_bits) {
    check_factors(dir1_factor, dir2_factor);
    adj_[0] = one_step_adjacency(dir1_factor);
    adj_[1] = one_step_adjacency(dir2_factor);
    alphabet_ = adj_[0].n;
}

std::vector<ReshapedChild> ShapeCounter::children(int dir, long long pos, long long budget) const {
    std::vector<ReshapedChild> out;
    for (const auto& ch : reshaped_children(dir, pos, params_))
        if (ch.cost <= budget) out.push_back(ch);
    return out;
}

ShapeCounter::Key ShapeCounter::root_key(VertexType root, long long budget) const {
    if (root.index == 1) return {1, 1, budget};
    return {root.dir, root.index, budget};
}

double ShapeCounter::tree_size(VertexType root, long long budget) {
    auto rec = [&](auto&& self, int dir, long long pos, long long b) -> double {
        Key k{dir, pos, b};
        auto it = size_memo_.find(k);
        if (it != size_memo_.end()) return it->second;
        double total = 1.0;
        for (const auto& ch : children(dir, pos, b))
            total += self(self, ch.dir, ch.chain_pos, b - ch.cost);
        size_memo_.emplace(k, total);
        return total;
    };
    auto [d, p, b] = root_key(root, budget);
    return rec(rec, d, p, b);
}

const std::vector<BigInt>& ShapeCounter::exact_vec(int dir, long long pos, long long budget) {
    Key k{dir, pos, budget};
    auto it = exact_memo_.find(k);
    if (it != exact_memo_.end()) return it->second;
    std::vector<BigInt> v(std::size_t(alphabet_), 1);
    for (const auto& ch : children(dir, pos, budget)) {
        const auto& cv = exact_vec(ch.dir, ch.chain_pos, budget - ch.cost);
        const Adjacency& m = adj_[ch.dir - 1];
        for (int s = 0; s < alphabet_; ++s) {
            BigInt dot = 0;
            for (int t = 0; t < alphabet_; ++t)
                if (m.at(s, t)) dot += cv[std::size_t(t)];
            v[std::size_t(s)] *= dot;
        }
    }
    return exact_memo_.emplace(k, std::move(v)).first->second;
}

BigInt ShapeCounter::exact_count(VertexType root, long long budget) {
    const double bits = tree_size(root, budget) * std::log2(double(alphabet_));
    if (bits > double(cap_bits_))
        throw CapExceeded("shape count would exceed the exact-integer cap");
    auto [d, p, b] = root_key(root, budget);
    const auto& v = exact_vec(d, p, b);
    BigInt total = 0;
    for (const auto& x : v) total += x;
    if (total.is_zero()) throw EmptyLanguage("shape count: no admissible labeling");
    return total;
}

const ShapeCounter::LogVec& ShapeCounter::log_vec(int dir, long long pos, long long budget) {
    Key k{dir, pos, budget};
    auto it = log_memo_.find(k);
    if (it != log_memo_.end()) return it->second;

    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(std::size_t(alphabet_), 0.0);
    for (const auto& ch : children(dir, pos, budget)) {
        const LogVec& cv = log_vec(ch.dir, ch.chain_pos, budget - ch.cost);
        const Adjacency& m = adj_[ch.dir - 1];
        for (int s = 0; s < alphabet_; ++s) {
            double dot = 0.0;
            for (int t = 0; t < alphabet_; ++t)
                if (m.at(s, t)) dot += cv.w[std::size_t(t)];
            logs[std::size_t(s)] += (dot > 0.0) ? cv.scale + std::log(dot) : neg_inf;
        }
    }
    LogVec out;
    out.scale = *std::max_element(logs.begin(), logs.end());
    if (out.scale == neg_inf) throw EmptyLanguage("shape count: no admissible labeling");
    out.w.resize(std::size_t(alphabet_));
    for (int s = 0; s < alphabet_; ++s) out.w[std::size_t(s)] = std::exp(logs[std::size_t(s)] - out.scale);
    return log_memo_.emplace(k, std::move(out)).first->second;
}

double ShapeCounter::log_count(VertexType root, long long budget, bool* exact) {
    const double bits = tree_size(root, budget) * std::log2(double(alphabet_));
    if (bits <= double(cap_bits_)) {
        if (exact) *exact = true;
        return log_big(exact_count(root, budget));
    }
    if (exact) *exact = false;
    auto [d, p, b] = root_key(root, budget);
    const LogVec& v = log_vec(d, p, b);
    double total = 0.0;
    for (double x : v.w) total += x;
    return v.scale + std::log(total);
}

// ---------------------------------------------------------------------------
// brute_force_tree

BigInt brute_force_tree(long long n, const TreeParams& params, const SubshiftSpec& dir1_factor,
                        const SubshiftSpec& dir2_factor) {
    check_factors(dir1_factor, dir2_factor);
    if (n < 0) throw BadInput("brute_force_tree: n must be >= 0");
    const int A = dir1_factor.alphabet;
    const long long cells = (1ll << (n + 1)) - 1;
    if (double(cells) * std::log2(double(A)) > 26.0)
        throw CapExceeded("brute_force_tree: alphabet^ball over 2^26");

    const Adjacency adj[2] = {one_step_adjacency(dir1_factor), one_step_adjacency(dir2_factor)};

    // ball vertices as words; index by position in the list
    std::vector<std::string> words = {""};
    std::map<std::string, int> index = {{"", 0}};
    for (std::size_t h = 0; h < words.size(); ++h) {
        if ((long long)words[h].size() >= n) continue;
        for (char c : {'1', '2'}) {
            words.push_back(words[h] + c);
            index[words.back()] = int(words.size()) - 1;
        }
    }

    // required adjacency constraints (cell a, cell b, direction), read off
    // maximal rays: chains s, sp, sp^2 ... for a multiplicative direction,
    // consecutive positions for an ordinary one
    std::vector<std::array<int, 3>> constraints;
    for (const auto& w : words) {
        for (int dir = 1; dir <= 2; ++dir) {
            const char letter = char('0' + dir);
            if (!w.empty() && w.back() == letter) continue; // not a maximal ray start
            std::vector<int> ray; // cell ids at positions 1, 2, ...
            std::string cur = w;
            while ((long long)cur.size() <= n) {
                ray.push_back(index.at(cur));
                cur += letter;
            }
            const long long L = (long long)ray.size();
            const bool multiplicative = params.mode == TreeMode::TwoSided || dir == 1;
            if (multiplicative) {
                const int p = (dir == 1) ? params.p1 : params.p2;
                for (long long s = 1; s <= L; ++s) {
                    if (s % p == 0) continue;
                    for (long long v = s; v * p <= L; v *= p)
                        constraints.push_back({ray[std::size_t(v - 1)],
                                               ray[std::size_t(v * p - 1)], dir});
                }
            } else {
                for (long long s = 1; s < L; ++s)
                    constraints.push_back({ray[std::size_t(s - 1)], ray[std::size_t(s)], dir});
            }
        }
    }

    std::vector<int> sym(std::size_t(cells), 0);
    BigInt count = 0;
    while (true) {
        bool ok = true;
        for (const auto& c : constraints)
            if (!adj[c[2] - 1].at(sym[std::size_t(c[0])], sym[std::size_t(c[1])])) {
                ok = false;
                break;
            }
        if (ok) ++count;
        long long pos = cells - 1;
        while (pos >= 0 && sym[std::size_t(pos)] == A - 1) sym[std::size_t(pos--)] = 0;
        if (pos < 0) break;
        ++sym[std::size_t(pos)];
    }
    return count;
}

// ---------------------------------------------------------------------------
// entropy series on the tree

namespace {

// closed-form tail of the weighted shape series truncated at total index M
// (terms with i + k + 1 > M dropped): per family,
//   sum_{T>M} 2^-T sum_{k<=T-3} |shape| log|A|
// with |shape| <= B^{k+2}/(B-1).
double tree_series_tail(double log_alpha, int families, long long M) {
    const double B = growth_model().B;
    const double c = log_alpha / ((B - 1.0) * (B - 1.0) * (1.0 - B / 2.0));
    return double(families) * c * std::pow(B / 2.0, double(M + 1));
}

long long tree_series_cutoff(double log_alpha, int families, double tol) {
    long long M = 3;
    while (tree_series_tail(log_alpha, families, M) > tol) {
        ++M;
        if (M > 5000) throw BadInput("tree entropy: tolerance below what doubles can express");
    }
    return M;
}

EntropyEstimate tree_series(const TreeParams& params, const SubshiftSpec& f1,
                            const SubshiftSpec& f2, double tol, long long cap_bits) {
    if (!(tol > 0.0)) throw BadInput("tree entropy: tolerance must be positive");
    check_factors(f1, f2);
    const double log_alpha = std::log(double(f1.alphabet));
    const int families = params.mode == TreeMode::TwoSided ? 2 : 1;
    const long long M = tree_series_cutoff(log_alpha, families, tol);

    const bool full_pair = is_full_shift(f1) && is_full_shift(f2);
    ShapeCounter counter(params, f1, f2, cap_bits);

    EntropyEstimate est;
    KahanSum sum;
    bool rigorous = true;

    auto add_family = [&](int dir, int p, long long T) {
        for (long long k = 0; k + 3 <= T; ++k) {
            const long long i = T - 1 - k;
            if (i % p == 0) continue;
            double log_s;
            if (full_pair) {
                log_s = counter.tree_size({dir, i}, k) * log_alpha;
            } else {
                bool exact = true;
                log_s = counter.log_count({dir, i}, k, &exact);
                rigorous = rigorous && exact;
            }
            sum.add(std::ldexp(log_s, int(-T)));
            ++est.terms_used;
        }
    };

    for (long long T = 3; T <= M; ++T) {
        add_family(1, params.p1, T);
        if (params.mode == TreeMode::TwoSided) add_family(2, params.p2, T);
    }

    est.value = sum.value();
    est.tail_bound = tree_series_tail(log_alpha, families, M);
    est.truncation = {M};
    est.rigorous = rigorous;
    return est;
}

} // namespace

EntropyEstimate entropy_tree_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                       int p1, int p2, double tol, long long cap_bits) {
    if (p1 < 2 || p2 < 2) throw BadInput("entropy_tree_mult_mult: moduli must be >= 2");
    TreeParams params{TreeMode::TwoSided, p1, p2};
    return tree_series(params, omega1, omega2, tol, cap_bits);
}

EntropyEstimate entropy_tree_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                        double tol, long long cap_bits) {
    if (p < 2) throw BadInput("entropy_tree_mult_shift: modulus must be >= 2");
    TreeParams params{TreeMode::OneSidedLeft, p, 2};
    return tree_series(params, omega, x, tol, cap_bits);
}

std::vector<double> density_check_d(int d, const std::vector<int>& moduli, long long n_max) {
    if (d < 2 || d > 4) throw BadInput("density_check_d: need 2 <= d <= 4");
    if (int(moduli.size()) != d) throw BadInput("density_check_d: one modulus entry per direction");
    for (int m : moduli)
        if (m != 0 && m < 2) throw BadInput("density_check_d: moduli are 0 (ordinary) or >= 2");
    if (n_max < 0 || n_max > 256) throw BadInput("density_check_d: need 0 <= n_max <= 256");

    // g[len][dir] = dependent words of that ambient length ending with a run
    // in direction dir; runs in multiplicative directions have length p^t - 1
    std::vector<std::vector<BigInt>> g(std::size_t(n_max) + 1,
                                       std::vector<BigInt>(std::size_t(d), 0));
    std::vector<std::vector<long long>> run_lengths;
    run_lengths.resize(std::size_t(d));
    for (int a = 0; a < d; ++a) {
        if (moduli[std::size_t(a)] == 0) {
            for (long long r = 1; r <= n_max; ++r) run_lengths[std::size_t(a)].push_back(r);
        } else {
            for (long long v = moduli[std::size_t(a)]; v - 1 <= n_max; v *= moduli[std::size_t(a)]) {
                run_lengths[std::size_t(a)].push_back(v - 1);
                if (v > (n_max + 1) / moduli[std::size_t(a)]) break;
            }
        }
    }
    for (long long len = 1; len <= n_max; ++len)
        for (int a = 0; a < d; ++a) {
            BigInt total = 0;
            for (long long r : run_lengths[std::size_t(a)]) {
                if (r > len) break;
                if (r == len)
                    total += 1;
                else
                    for (int b = 0; b < d; ++b)
                        if (b != a) total += g[std::size_t(len - r)][std::size_t(b)];
            }
            g[std::size_t(len)][std::size_t(a)] = std::move(total);
        }

    std::vector<double> ratios;
    BigInt dep = 1, ball = 1, dpow = 1;
    ratios.push_back(1.0);
    for (long long n = 1; n <= n_max; ++n) {
        for (int a = 0; a < d; ++a) dep += g[std::size_t(n)][std::size_t(a)];
        dpow *= d;
        ball += dpow;
        ratios.push_back(dep.convert_to<double>() / ball.convert_to<double>());
    }
    return ratios;
}

} // namespace multent
