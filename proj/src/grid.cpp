#include "multent/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

namespace multent {

namespace {

void validate_query(const BoxQuery& q) {
    if (q.dims.empty()) throw BadInput("count_box: need at least one axis");
    if (q.dims.size() != q.factors.size())
        throw BadInput("count_box: one factor per axis required");
    for (long long d : q.dims)
        if (d < 1) throw BadInput("count_box: dims must be positive");
    for (const auto& f : q.factors) {
        validate(f);
        if (f.alphabet != q.factors.front().alphabet)
            throw BadInput("count_box: factors must share one alphabet");
    }
}

struct FactorView {
    Adjacency adj;
    std::vector<std::uint8_t> live;
};

FactorView make_view(const SubshiftSpec& spec) {
    FactorView v;
    v.adj = one_step_adjacency(spec);
    v.live = live_symbols(v.adj);
    if (std::find(v.live.begin(), v.live.end(), std::uint8_t(1)) == v.live.end())
        throw EmptyLanguage("factor '" + spec.name + "' has an empty language");
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// StripEngine

StripEngine::StripEngine(const SubshiftSpec& col_factor, const SubshiftSpec& row_factor,
                         long long width, long long state_cap, long long pair_cap) {
    if (width < 1) throw BadInput("strip: width must be >= 1");
    if (col_factor.alphabet != row_factor.alphabet)
        throw BadInput("strip: factors must share one alphabet");
    width_ = width;
    const FactorView col = make_view(col_factor);
    const FactorView row = make_view(row_factor);
    const int A = col.adj.n;

    // suffix counts over the live column graph: T[len][s] = number of
    // admissible live words of the given length starting with s
    std::vector<std::vector<BigInt>> T(std::size_t(width) + 1, std::vector<BigInt>(A, 0));
    for (int s = 0; s < A; ++s) T[1][s] = col.live[s] ? 1 : 0;
    for (long long len = 2; len <= width; ++len)
        for (int s = 0; s < A; ++s) {
            if (!col.live[s]) continue;
            BigInt sum = 0;
            for (int t = 0; t < A; ++t)
                if (col.adj.at(s, t)) sum += T[len - 1][t];
            T[len][s] = std::move(sum);
        }
    BigInt side = 0;
    for (int s = 0; s < A; ++s) side += T[width][s];
    if (side > state_cap)
        throw CapExceeded("strip: " + side.str() + " states exceed the cap of " +
                          std::to_string(state_cap));
    if (side.is_zero()) throw EmptyLanguage("strip: no admissible columns");
    side_ = side.convert_to<long long>();

    std::vector<std::vector<std::uint64_t>> rank(std::size_t(width) + 1,
                                                 std::vector<std::uint64_t>(A, 0));
    for (long long len = 1; len <= width; ++len)
        for (int s = 0; s < A; ++s) rank[len][s] = T[len][s].convert_to<std::uint64_t>();

    // end mask: all-symbols-row-live states, filled during pair enumeration
    end_mask_.assign(std::size_t(side_), 0);
    trans_.n = int(side_);

    // Joint depth-first enumeration of compatible state pairs with on-the-fly
    // lexicographic ranking of both sides. With `remaining` symbols still to
    // place, choosing symbol `a` skips rank[remaining][a'] words for every
    // admissible a' < a, which is exactly the subtree size.
    std::function<void(long long, int, int, std::uint64_t, std::uint64_t)> walk =
        [&](long long remaining, int us, int vs, std::uint64_t ur, std::uint64_t vr) {
            if (remaining == 0) {
                trans_.pairs.emplace_back(std::uint32_t(ur), std::uint32_t(vr));
                if ((long long)trans_.pairs.size() > pair_cap)
                    throw CapExceeded("strip: transition pairs exceed the cap");
                return;
            }
            const bool first = remaining == width_;
            std::uint64_t uoff = ur;
            for (int a = 0; a < A; ++a) {
                if (!col.live[a] || (!first && !col.adj.at(us, a))) continue;
                std::uint64_t voff = vr;
                for (int b = 0; b < A; ++b) {
                    if (!col.live[b] || (!first && !col.adj.at(vs, b))) continue;
                    if (row.adj.at(a, b)) walk(remaining - 1, a, b, uoff, voff);
                    voff += rank[remaining][b];
                }
                uoff += rank[remaining][a];
            }
        };
    walk(width, 0, 0, 0, 0);
    std::sort(trans_.pairs.begin(), trans_.pairs.end());

    // end mask via a single-sided walk
    std::function<void(long long, int, std::uint64_t, bool)> mark =
        [&](long long remaining, int us, std::uint64_t ur, bool all_live) {
            if (remaining == 0) {
                end_mask_[ur] = all_live ? 1 : 0;
                return;
            }
            const bool first = remaining == width_;
            std::uint64_t off = ur;
            for (int a = 0; a < A; ++a) {
                if (!col.live[a] || (!first && !col.adj.at(us, a))) continue;
                mark(remaining - 1, a, off, all_live && row.live[a]);
                off += rank[remaining][a];
            }
        };
    mark(width, 0, 0, true);
}

std::vector<BigInt> StripEngine::count_profile(long long j_max) const {
    std::vector<BigInt> counts;
    counts.reserve(std::size_t(j_max));
    std::vector<BigInt> v(std::size_t(side_), 1);
    std::vector<BigInt> w(v.size());
    for (long long j = 1; j <= j_max; ++j) {
        if (j > 1) {
            for (auto& x : w) x = 0;
            for (const auto& [a, b] : trans_.pairs) w[b] += v[a];
            v.swap(w);
        }
        BigInt total = 0;
        for (long long s = 0; s < side_; ++s)
            if (end_mask_[s]) total += v[std::size_t(s)];
        counts.push_back(std::move(total));
    }
    return counts;
}

std::vector<double> StripEngine::log_count_profile(long long j_max) const {
    std::vector<double> logs;
    logs.reserve(std::size_t(j_max));
    std::vector<double> v(std::size_t(side_), 1.0);
    std::vector<double> w(v.size());
    double scale = 0.0;
    for (long long j = 1; j <= j_max; ++j) {
        if (j > 1) {
            std::fill(w.begin(), w.end(), 0.0);
            for (const auto& [a, b] : trans_.pairs) w[b] += v[a];
            double m = *std::max_element(w.begin(), w.end());
            if (m <= 0.0) throw EmptyLanguage("strip: no admissible patterns");
            for (auto& x : w) x /= m;
            scale += std::log(m);
            v.swap(w);
        }
        double total = 0.0;
        for (long long s = 0; s < side_; ++s)
            if (end_mask_[s]) total += v[std::size_t(s)];
        if (total <= 0.0) throw EmptyLanguage("strip: no admissible patterns");
        logs.push_back(scale + std::log(total));
    }
    return logs;
}

// ---------------------------------------------------------------------------
// enumerate_box_patterns

std::vector<std::vector<int>> enumerate_box_patterns(const std::vector<long long>& dims,
                                                     const std::vector<SubshiftSpec>& factors,
                                                     long long cap) {
    const int d = int(dims.size());
    if (d < 1 || d > 8) throw BadInput("enumerate_box_patterns: need 1 <= d <= 8");
    long long cells = 1;
    for (long long x : dims) {
        cells *= x;
        if (cells > (1ll << 26)) throw CapExceeded("enumerate_box_patterns: box too large");
    }
    std::vector<FactorView> views;
    views.reserve(factors.size());
    for (const auto& f : factors) views.push_back(make_view(f));
    const int A = factors.front().alphabet;

    std::vector<long long> stride(d, 1);
    for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * dims[a + 1];

    std::vector<std::vector<int>> out;
    std::vector<int> pattern(std::size_t(cells), 0);

    std::function<void(long long)> rec = [&](long long cell) {
        if (cell == cells) {
            out.push_back(pattern);
            if ((long long)out.size() > cap)
                throw CapExceeded("enumerate_box_patterns: state count over cap");
            return;
        }
        // coordinates of this cell (local: the recursion below reuses the scan)
        std::array<long long, 8> coord{};
        long long rem = cell;
        for (int a = 0; a < d; ++a) {
            coord[std::size_t(a)] = rem / stride[a];
            rem %= stride[a];
        }
        for (int s = 0; s < A; ++s) {
            bool ok = true;
            for (int a = 0; a < d && ok; ++a) {
                if (coord[std::size_t(a)] > 0 && !views[a].adj.at(pattern[std::size_t(cell - stride[a])], s))
                    ok = false;
                if (coord[std::size_t(a)] == dims[a] - 1 && !views[a].live[s]) ok = false;
            }
            if (!ok) continue;
            pattern[std::size_t(cell)] = s;
            rec(cell + 1);
        }
    };
    rec(0);
    return out;
}

// ---------------------------------------------------------------------------
// count_box

namespace {

BigInt count_box_impl(std::vector<long long> dims, std::vector<SubshiftSpec> factors,
                      const GridCaps& caps) {
    const int A = factors.front().alphabet;

    // split off axes with unconstrained factors: their hyperplanes are independent
    long long full_exponent = 1;
    {
        std::vector<long long> kept_dims;
        std::vector<SubshiftSpec> kept_factors;
        for (std::size_t a = 0; a < dims.size(); ++a) {
            if (is_full_shift(factors[a]))
                full_exponent *= dims[a];
            else {
                kept_dims.push_back(dims[a]);
                kept_factors.push_back(factors[a]);
            }
        }
        if (kept_dims.empty()) {
            long long cells = 1;
            for (long long x : dims) cells *= x;
            return big_pow(A, (unsigned long long)cells);
        }
        dims.swap(kept_dims);
        factors.swap(kept_factors);
    }

    BigInt base;
    if (dims.size() == 1) {
        base = count_words(factors[0], dims[0]);
    } else if (dims.size() == 2) {
        int wa = dims[0] <= dims[1] ? 0 : 1; // width axis: the shorter one
        StripEngine eng(factors[wa], factors[1 - wa], dims[wa], caps.dp_states, caps.pair_cap);
        base = eng.count_profile(dims[1 - wa]).back();
    } else {
        // transfer along the largest axis; slice states from explicit enumeration
        int ta = int(std::max_element(dims.begin(), dims.end()) - dims.begin());
        std::vector<long long> sdims;
        std::vector<SubshiftSpec> sfactors;
        for (std::size_t a = 0; a < dims.size(); ++a)
            if (int(a) != ta) {
                sdims.push_back(dims[a]);
                sfactors.push_back(factors[a]);
            }
        auto states = enumerate_box_patterns(sdims, sfactors, caps.dp_states);
        const long long S = (long long)states.size();
        if (S > 8192) throw CapExceeded("count_box: slice state space too large");
        FactorView tv = make_view(factors[std::size_t(ta)]);
        const std::size_t cells = states.empty() ? 0 : states[0].size();

        std::vector<std::uint8_t> mask(std::size_t(S), 1);
        for (long long s = 0; s < S; ++s)
            for (std::size_t c = 0; c < cells; ++c)
                if (!tv.live[states[std::size_t(s)][c]]) mask[std::size_t(s)] = 0;

        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (long long u = 0; u < S; ++u)
            for (long long v = 0; v < S; ++v) {
                bool ok = true;
                for (std::size_t c = 0; c < cells && ok; ++c)
                    ok = tv.adj.at(states[std::size_t(u)][c], states[std::size_t(v)][c]);
                if (ok) pairs.emplace_back(std::uint32_t(u), std::uint32_t(v));
            }

        std::vector<BigInt> v(std::size_t(S), 1);
        std::vector<BigInt> w(v.size());
        for (long long j = 1; j < dims[std::size_t(ta)]; ++j) {
            for (auto& x : w) x = 0;
            for (const auto& [a, b] : pairs) w[b] += v[a];
            v.swap(w);
        }
        base = 0;
        for (long long s = 0; s < S; ++s)
            if (mask[std::size_t(s)]) base += v[std::size_t(s)];
    }
    return full_exponent == 1 ? base : big_pow(base, (unsigned long long)full_exponent);
}

} // namespace

BigInt count_box(const BoxQuery& q, const GridCaps& caps) {
    validate_query(q);
    return count_box_impl(q.dims, q.factors, caps);
}

// ---------------------------------------------------------------------------
// brute_force_box

BigInt brute_force_box(const BoxQuery& q) {
    validate_query(q);
    const int d = int(q.dims.size());
    const int A = q.factors.front().alphabet;
    long long cells = 1;
    for (long long x : q.dims) cells *= x;
    if (double(cells) * std::log2(double(A)) > 26.0)
        throw CapExceeded("brute_force_box: alphabet^cells over 2^26");

    std::vector<long long> stride(std::size_t(d), 1);
    for (int a = d - 2; a >= 0; --a)
        stride[std::size_t(a)] = stride[std::size_t(a) + 1] * q.dims[std::size_t(a) + 1];

    std::vector<std::function<bool(const std::vector<int>&)>> checkers;
    for (const auto& f : q.factors) checkers.push_back(language_word_checker(f));

    // precompute the first cell of every line per axis
    std::vector<std::vector<long long>> line_bases(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        const long long nlines = cells / q.dims[std::size_t(a)];
        for (long long l = 0; l < nlines; ++l) {
            long long base = 0, rem = l;
            for (int b = d - 1; b >= 0; --b) {
                if (b == a) continue;
                base += (rem % q.dims[std::size_t(b)]) * stride[std::size_t(b)];
                rem /= q.dims[std::size_t(b)];
            }
            line_bases[std::size_t(a)].push_back(base);
        }
    }

    std::vector<int> cellsym(std::size_t(cells), 0);
    BigInt count = 0;
    std::vector<int> line;
    while (true) {
        bool ok = true;
        for (int a = 0; a < d && ok; ++a) {
            const long long len = q.dims[std::size_t(a)];
            for (long long base : line_bases[std::size_t(a)]) {
                line.clear();
                for (long long t = 0; t < len; ++t)
                    line.push_back(cellsym[std::size_t(base + t * stride[std::size_t(a)])]);
                if (!checkers[std::size_t(a)](line)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) ++count;
        long long pos = cells - 1;
        while (pos >= 0 && cellsym[std::size_t(pos)] == A - 1) cellsym[std::size_t(pos--)] = 0;
        if (pos < 0) break;
        ++cellsym[std::size_t(pos)];
    }
    return count;
}

// ---------------------------------------------------------------------------
// strip_spectrum and cross sections

StripSpectrum strip_spectrum(const SubshiftSpec& omega, const SubshiftSpec& x, long long width,
                             const GridCaps& caps) {
    if (width < 1) throw BadInput("strip_spectrum: width must be >= 1");
    validate(omega);
    validate(x);
    if (omega.alphabet != x.alphabet)
        throw BadInput("strip_spectrum: factors must share one alphabet");

    StripSpectrum out;
    out.width = width;

    if (is_full_shift(omega)) {
        // tensor power of the row matrix: rho = rho_x^width, H = width * H_x
        SpectralData base = perron(x);
        double sl = std::accumulate(base.left.begin(), base.left.end(), 0.0);
        double sr = std::accumulate(base.right.begin(), base.right.end(), 0.0);
        out.side = -1; // matrix not materialized
        out.lambda = double(width) * std::log(base.rho);
        out.correction = double(width) * std::log(sl * sr / base.rho);
        return out;
    }
    if (is_full_shift(x)) {
        // complete transition graph on the admissible columns: rho = side
        BigInt side = count_words(omega, width);
        if (side.is_zero()) throw EmptyLanguage("strip_spectrum: no admissible columns");
        out.side = side <= (1ll << 62) ? side.convert_to<long long>() : -1;
        out.lambda = log_big(side);
        out.correction = 0.0;
        return out;
    }

    StripEngine eng(omega, x, width, caps.strip_side, caps.pair_cap);
    out.side = eng.side();

    Adjacency dense;
    dense.n = int(eng.side());
    dense.bits.assign(std::size_t(dense.n) * dense.n, 0);
    for (const auto& [a, b] : eng.transitions().pairs)
        dense.bits[std::size_t(a) * dense.n + b] = 1;
    if (!is_primitive(dense))
        throw NotPrimitive("strip_spectrum: width-" + std::to_string(width) +
                           " strip matrix is not primitive");

    out.spectral = power_iteration(eng.transitions());
    out.lambda = std::log(out.spectral.rho);
    double sl = std::accumulate(out.spectral.left.begin(), out.spectral.left.end(), 0.0);
    double sr = std::accumulate(out.spectral.right.begin(), out.spectral.right.end(), 0.0);
    out.correction = std::log(sl * sr / out.spectral.rho);
    return out;
}

double cross_section_lambda(const std::vector<long long>& dims,
                            const std::vector<SubshiftSpec>& factors, const SubshiftSpec& x,
                            const GridCaps& caps) {
    if (dims.empty()) { // no multiplicative axes: plain 1-d shift
        return std::log(perron(x).rho);
    }
    for (const auto& f : factors)
        if (f.alphabet != x.alphabet)
            throw BadInput("cross_section_lambda: factors must share one alphabet");

    if (std::all_of(factors.begin(), factors.end(),
                    [](const SubshiftSpec& f) { return is_full_shift(f); })) {
        long long cells = 1;
        for (long long v : dims) cells *= v;
        return double(cells) * std::log(perron(x).rho);
    }
    if (is_full_shift(x)) {
        BoxQuery q{dims, factors};
        return log_big(count_box(q, caps));
    }

    if (dims.size() == 1) return strip_spectrum(factors[0], x, dims[0], caps).lambda;

    auto states = enumerate_box_patterns(dims, factors, caps.strip_side);
    const long long S = (long long)states.size();
    if (S == 0) throw EmptyLanguage("cross_section_lambda: no admissible patterns");
    if (S > caps.strip_side) throw CapExceeded("cross_section_lambda: state space over cap");
    FactorView xv = make_view(x);
    const std::size_t cells = states[0].size();

    SparsePairs pairs;
    pairs.n = int(S);
    for (long long u = 0; u < S; ++u)
        for (long long v = 0; v < S; ++v) {
            bool ok = true;
            for (std::size_t c = 0; c < cells && ok; ++c)
                ok = xv.adj.at(states[std::size_t(u)][c], states[std::size_t(v)][c]);
            if (ok) pairs.pairs.emplace_back(std::uint32_t(u), std::uint32_t(v));
        }

    Adjacency dense;
    dense.n = int(S);
    dense.bits.assign(std::size_t(S) * S, 0);
    for (const auto& [a, b] : pairs.pairs) dense.bits[std::size_t(a) * S + b] = 1;
    if (!is_primitive(dense)) throw NotPrimitive("cross_section_lambda: strip is not primitive");
    return std::log(power_iteration(pairs).rho);
}

} // namespace multent
