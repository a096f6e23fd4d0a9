#include "multent/series.hpp"

#include <algorithm>
#include <cmath>

#include "multent/numeric.hpp"

namespace multent {

namespace {

void check_tol(double tol) {
    if (!(tol > 0.0)) throw BadInput("series: tolerance must be positive");
}

void check_modulus(int p) {
    if (p < 2) throw BadInput("series: modulus must be >= 2");
}

// smallest N with log|A| * (1 - mass(p, N)) <= budget
long long deep_cap(int p, double log_alpha, double budget) {
    long long n = 1;
    while (log_alpha * (1.0 - geometric_weight_mass(p, n)) > budget) {
        ++n;
        if (n > 4000) break; // tail underflows to 0 long before this
    }
    return n;
}

} // namespace

ChainDecomposition decompose_interval(long long m, int p) {
    if (m < 1) throw BadInput("decompose_interval: m must be >= 1");
    check_modulus(p);
    ChainDecomposition out;
    out.m = m;
    out.p = p;
    for (long long i = 1; i <= m; ++i) {
        if (i % p == 0) continue;
        long long len = 1;
        for (long long v = i; v <= m / p; v *= p) ++len;
        out.chains.push_back({i, len});
    }
    return out;
}

std::vector<long long> chain_length_counts(long long m, int p) {
    if (m < 1) throw BadInput("chain_length_counts: m must be >= 1");
    check_modulus(p);
    std::vector<long long> counts;
    for (long long k = 1;; ++k) {
        long long hi = m, lo = m;
        for (long long t = 0; t < k - 1; ++t) hi /= p;
        for (long long t = 0; t < k; ++t) lo /= p;
        if (hi == 0) break;
        // starts of length-k chains: non-multiples of p in (lo, hi]
        counts.push_back((hi - lo) - (hi / p - lo / p));
    }
    return counts;
}

EntropyEstimate entropy_1d_mult(const SubshiftSpec& omega, int p, double tol) {
    check_tol(tol);
    check_modulus(p);
    validate(omega);
    const double log_alpha = std::log(double(omega.alphabet));

    const long long N = deep_cap(p, log_alpha, tol);
    KahanSum sum;
    for (long long i = 1; i <= N; ++i)
        sum.add(geometric_weight(p, i) * log_big(count_words(omega, i)));

    EntropyEstimate est;
    est.value = sum.value();
    est.tail_bound = std::max(0.0, log_alpha * (1.0 - geometric_weight_mass(p, N)));
    est.truncation = {N};
    est.terms_used = N;
    return est;
}

EntropyEstimate entropy_n2_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                     int p1, int p2, double tol, const GridCaps& caps) {
    check_tol(tol);
    check_modulus(p1);
    check_modulus(p2);
    validate(omega1);
    validate(omega2);
    if (omega1.alphabet != omega2.alphabet)
        throw BadInput("entropy_n2_mult_mult: factors must share one alphabet");
    const double log_alpha = std::log(double(omega1.alphabet));

    const long long n1 = deep_cap(p1, log_alpha, tol / 4.0);
    const long long n2 = deep_cap(p2, log_alpha, tol / 4.0);

    EntropyEstimate est;
    KahanSum sum;

    if (is_full_shift(omega1) || is_full_shift(omega2)) {
        // full axes split off inside count_box, so every box is cheap
        for (long long i = 1; i <= n1; ++i) {
            const double wi = geometric_weight(p1, i);
            for (long long j = 1; j <= n2; ++j) {
                BigInt c = count_box({{i, j}, {omega1, omega2}}, caps);
                if (c.is_zero()) throw EmptyLanguage("entropy_n2_mult_mult: empty product");
                sum.add(wi * geometric_weight(p2, j) * log_big(c));
                ++est.terms_used;
            }
        }
        est.value = sum.value();
        est.tail_bound = std::max(
            0.0, log_alpha * (1.0 - geometric_weight_mass(p1, n1) * geometric_weight_mass(p2, n2)));
        est.truncation = {n1, n2, n1, n2};
        return est;
    }

    // Corner cap: boxes with both sides above C are dropped; their weight mass
    // is (1 - mass(C))^2-shaped and must fit in tol/2. Feasibility needs the
    // width-C transfer states under the DP cap and a sane amount of transfer
    // work; the pair count of a width-c engine is itself a 2-row box count,
    // so it can be estimated before committing.
    long long corner = 0;
    for (long long c = 1; c <= std::max(n1, n2); ++c) {
        const double corner_tail = log_alpha * (1.0 - geometric_weight_mass(p1, c)) *
                                   (1.0 - geometric_weight_mass(p2, c));
        bool feasible = count_words(omega1, c) <= caps.dp_states &&
                        count_words(omega2, c) <= caps.dp_states;
        if (feasible) {
            BigInt pairs1 = count_box({{c, 2}, {omega1, omega2}}, caps);
            BigInt pairs2 = count_box({{c, 2}, {omega2, omega1}}, caps);
            feasible = pairs1 <= caps.pair_cap && pairs2 <= caps.pair_cap &&
                       (pairs1 + pairs2) * (n1 + n2) <= caps.corner_work;
        }
        if (!feasible) {
            if (corner_tail > tol / 2.0)
                throw CapExceeded("entropy_n2_mult_mult: tolerance needs boxes beyond the DP cap");
            break;
        }
        corner = c;
        if (corner_tail <= tol / 2.0) break;
    }
    const long long c1 = std::min(corner, n1), c2 = std::min(corner, n2);

    // terms (i <= c1, j <= n2): one transfer sweep per width i
    for (long long i = 1; i <= c1; ++i) {
        const double wi = geometric_weight(p1, i);
        StripEngine eng(omega1, omega2, i, caps.dp_states, caps.pair_cap);
        auto counts = eng.count_profile(n2);
        for (long long j = 1; j <= n2; ++j) {
            if (counts[std::size_t(j - 1)].is_zero())
                throw EmptyLanguage("entropy_n2_mult_mult: empty product");
            sum.add(wi * geometric_weight(p2, j) * log_big(counts[std::size_t(j - 1)]));
            ++est.terms_used;
        }
    }
    // terms (c1 < i <= n1, j <= c2): sweep along axis 1
    for (long long j = 1; j <= c2; ++j) {
        const double wj = geometric_weight(p2, j);
        StripEngine eng(omega2, omega1, j, caps.dp_states, caps.pair_cap);
        auto counts = eng.count_profile(n1);
        for (long long i = c1 + 1; i <= n1; ++i) {
            if (counts[std::size_t(i - 1)].is_zero())
                throw EmptyLanguage("entropy_n2_mult_mult: empty product");
            sum.add(wj * geometric_weight(p1, i) * log_big(counts[std::size_t(i - 1)]));
            ++est.terms_used;
        }
    }

    const double m1 = geometric_weight_mass(p1, n1), m2 = geometric_weight_mass(p2, n2);
    const double mc1 = geometric_weight_mass(p1, c1), mc2 = geometric_weight_mass(p2, c2);
    const double covered = m1 * m2 - (m1 - mc1) * (m2 - mc2);

    est.value = sum.value();
    est.tail_bound = std::max(0.0, log_alpha * (1.0 - covered));
    est.truncation = {n1, n2, c1, c2};
    return est;
}

EntropyEstimate entropy_n2_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                      double tol, const GridCaps& caps) {
    check_tol(tol);
    check_modulus(p);
    validate(omega);
    validate(x);
    if (omega.alphabet != x.alphabet)
        throw BadInput("entropy_n2_mult_shift: factors must share one alphabet");
    const double log_alpha = std::log(double(omega.alphabet));

    const long long N = deep_cap(p, log_alpha, tol);
    const bool capped_width = !is_full_shift(omega) && !is_full_shift(x);
    if (capped_width) {
        for (long long i = 1; i <= N; ++i)
            if (count_words(omega, i) > caps.strip_side)
                throw CapExceeded(
                    "entropy_n2_mult_shift: tolerance needs strips beyond the matrix cap");
    }

    EntropyEstimate est;
    KahanSum sum;
    for (long long i = 1; i <= N; ++i) {
        sum.add(geometric_weight(p, i) * strip_spectrum(omega, x, i, caps).lambda);
        ++est.terms_used;
    }
    est.value = sum.value();
    est.tail_bound = std::max(0.0, log_alpha * (1.0 - geometric_weight_mass(p, N)));
    est.truncation = {N};
    return est;
}

EntropyEstimate entropy_nd(const std::vector<MultiplicativeFactor>& mults,
                           const std::vector<SubshiftSpec>& shifts, double tol,
                           const GridCaps& caps) {
    check_tol(tol);
    const std::size_t k = mults.size(), s = shifts.size();
    const std::size_t d = k + s;
    if (d < 1 || d > 4) throw BadInput("entropy_nd: need 1 <= d <= 4");
    int alphabet = k ? mults[0].omega.alphabet : shifts[0].alphabet;
    for (const auto& m : mults) {
        check_modulus(m.p);
        validate(m.omega);
        if (m.omega.alphabet != alphabet) throw BadInput("entropy_nd: alphabets differ");
    }
    for (const auto& x : shifts) {
        validate(x);
        if (x.alphabet != alphabet) throw BadInput("entropy_nd: alphabets differ");
    }
    const double log_alpha = std::log(double(alphabet));

    EntropyEstimate est;

    if (k == 0) {
        if (s == 1) {
            est.value = std::log(perron(shifts[0]).rho);
            est.truncation = {};
            est.terms_used = 1;
            return est;
        }
        // multi-axis ordinary product: finite-size ratio estimate
        long long J = 2;
        while (true) {
            long long cells = 1;
            bool ok = true;
            for (std::size_t a = 0; a + 1 < d; ++a) {
                cells *= (J + 1);
                if (double(cells) * std::log2(double(alphabet)) > 13.0) ok = false;
            }
            if (!ok) break;
            ++J;
        }
        std::vector<long long> dims(d, J), dims_prev(d, J - 1);
        std::vector<SubshiftSpec> factors = shifts;
        double ej = log_big(count_box({dims, factors}, caps)) / std::pow(double(J), double(d));
        double ej1 =
            log_big(count_box({dims_prev, factors}, caps)) / std::pow(double(J - 1), double(d));
        est.value = ej;
        est.uncertainty = std::abs(ej - ej1);
        est.rigorous = false;
        est.truncation = {J};
        est.terms_used = 2;
        return est;
    }

    // per-axis deep caps for the multiplicative weights
    std::vector<long long> caps_n(k);
    for (std::size_t a = 0; a < k; ++a)
        caps_n[a] = deep_cap(mults[a].p, log_alpha, tol / double(2 * k));

    // feasibility probe: the largest cross-section must stay under the caps
    std::vector<SubshiftSpec> omegas;
    for (const auto& m : mults) omegas.push_back(m.omega);

    KahanSum sum;
    double uncertainty = 0.0;
    bool rigorous = true;

    std::vector<long long> idx(k, 1);
    while (true) {
        double w = 1.0;
        for (std::size_t a = 0; a < k; ++a) w *= geometric_weight(mults[a].p, idx[a]);

        double lambda = 0.0;
        if (s == 0) {
            BigInt c = count_box({idx, omegas}, caps);
            if (c.is_zero()) throw EmptyLanguage("entropy_nd: empty product");
            lambda = log_big(c);
        } else if (s == 1) {
            lambda = cross_section_lambda(idx, omegas, shifts[0], caps);
        } else {
            // finite-size growth-rate estimate over the ordinary axes; the
            // cross-section extent backs off until the slice caps admit it
            std::vector<SubshiftSpec> factors = omegas;
            for (std::size_t t = 0; t < s; ++t) factors.push_back(shifts[t]);
            double lj = 0.0, lj1 = 0.0;
            for (long long J = 5;; --J) {
                if (J < 2) throw CapExceeded("entropy_nd: ordinary cross-section too large");
                std::vector<long long> dims = idx;
                for (std::size_t t = 0; t < s; ++t) dims.push_back(J);
                try {
                    lj = log_big(count_box({dims, factors}, caps)) /
                         std::pow(double(J), double(s));
                    for (std::size_t t = 0; t < s; ++t) dims[k + t] = J - 1;
                    lj1 = log_big(count_box({dims, factors}, caps)) /
                          std::pow(double(J - 1), double(s));
                } catch (const CapExceeded&) {
                    continue;
                }
                break;
            }
            lambda = lj;
            uncertainty += w * std::abs(lj - lj1);
            rigorous = false;
        }
        sum.add(w * lambda);
        ++est.terms_used;

        // odometer over the index rectangle
        std::size_t a = 0;
        while (a < k && idx[a] == caps_n[a]) idx[a++] = 1;
        if (a == k) break;
        ++idx[a];
    }

    double mass = 1.0;
    for (std::size_t a = 0; a < k; ++a) mass *= geometric_weight_mass(mults[a].p, caps_n[a]);

    est.value = sum.value();
    est.tail_bound = std::max(0.0, log_alpha * (1.0 - mass));
    est.truncation = caps_n;
    est.rigorous = rigorous;
    est.uncertainty = uncertainty;
    return est;
}

} // namespace multent
