#include "multent/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "multent/numeric.hpp"

namespace multent {

namespace {

void check_points(const std::vector<std::pair<long long, long long>>& points) {
    if (points.empty()) throw BadInput("residuals: need at least one point");
    for (auto [m, n] : points)
        if (m < 1 || n < 1) throw BadInput("residuals: points must be positive");
}

// Entropy at the tightest tolerance the caps admit: start from the wanted
// tolerance (driven by the largest box so the m*n*h term cannot swamp the
// residual) and back off only when the series itself reports a cap.
template <class F>
EntropyEstimate best_effort(F&& eval, double tol_want) {
    double tol = std::max(tol_want, 1e-14);
    while (true) {
        try {
            return eval(tol);
        } catch (const CapExceeded&) {
            tol *= 10.0;
            if (tol > 0.5) throw;
        }
    }
}

} // namespace

ResidualSeries residual_n2_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                     int p1, int p2,
                                     const std::vector<std::pair<long long, long long>>& points,
                                     const GridCaps& caps) {
    check_points(points);
    long long max_mn = 1;
    for (auto [m, n] : points) max_mn = std::max(max_mn, m * n);
    const double tol_want = std::min(1e-7, 1e-6 / double(max_mn));
    ResidualSeries out;
    out.entropy = best_effort(
        [&](double tol) { return entropy_n2_mult_mult(omega1, omega2, p1, p2, tol, caps); },
        tol_want);
    const double h = out.entropy.midpoint();

    std::map<std::pair<long long, long long>, double> box_log;
    for (auto [m, n] : points) {
        auto c1 = chain_length_counts(m, p1);
        auto c2 = chain_length_counts(n, p2);
        KahanSum logp;
        for (long long k1 = 1; k1 <= (long long)c1.size(); ++k1) {
            if (!c1[std::size_t(k1 - 1)]) continue;
            for (long long k2 = 1; k2 <= (long long)c2.size(); ++k2) {
                if (!c2[std::size_t(k2 - 1)]) continue;
                auto key = std::make_pair(k1, k2);
                auto it = box_log.find(key);
                if (it == box_log.end()) {
                    BigInt c = count_box({{k1, k2}, {omega1, omega2}}, caps);
                    if (c.is_zero()) throw EmptyLanguage("residual_n2: empty product");
                    it = box_log.emplace(key, log_big(c)).first;
                }
                logp.add(double(c1[std::size_t(k1 - 1)]) * double(c2[std::size_t(k2 - 1)]) *
                         it->second);
            }
        }
        ResidualPoint pt;
        pt.m = m;
        pt.n = n;
        pt.residual = logp.value() - double(m) * double(n) * h;
        pt.normalizer = double(n) * std::log(double(m)) + double(m) * std::log(double(n));
        pt.ratio = pt.residual / pt.normalizer;
        out.points.push_back(pt);
    }
    return out;
}

ResidualSeries residual_n2_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                      const std::vector<std::pair<long long, long long>>& points,
                                      const GridCaps& caps) {
    check_points(points);
    long long max_mn = 1, max_m = 1, max_n = 1;
    for (auto [m, n] : points) {
        max_mn = std::max(max_mn, m * n);
        max_m = std::max(max_m, m);
        max_n = std::max(max_n, n);
    }
    const double tol_want = std::min(1e-7, 1e-6 / double(max_mn));
    ResidualSeries out;
    out.entropy = best_effort(
        [&](double tol) { return entropy_n2_mult_shift(omega, p, x, tol, caps); }, tol_want);
    const double h = out.entropy.midpoint();

    // eigenvector-correction normalizer constant: sum_k |H(k)| / p^{k-1},
    // truncated where strips end; the geometric weight makes the truncation
    // error negligible against the leading n log m term
    const long long kmax_global = (long long)chain_length_counts(max_m, p).size();
    KahanSum hsum;
    for (long long k = 1; k <= kmax_global; ++k) {
        try {
            hsum.add(std::abs(strip_spectrum(omega, x, k, caps).correction) *
                     std::pow(double(p), double(1 - k)));
        } catch (const CapExceeded&) {
            break;
        }
    }

    // strip log-count profiles per width, shared across points
    std::map<long long, std::vector<double>> profiles;
    auto strip_log = [&](long long k, long long n) -> double {
        if (is_full_shift(omega)) return double(k) * log_big(count_words(x, n));
        if (is_full_shift(x)) return double(n) * log_big(count_words(omega, k));
        auto it = profiles.find(k);
        if (it == profiles.end()) {
            StripEngine eng(omega, x, k, caps.dp_states, caps.pair_cap);
            it = profiles.emplace(k, eng.log_count_profile(max_n)).first;
        }
        return it->second[std::size_t(n - 1)];
    };

    for (auto [m, n] : points) {
        auto c1 = chain_length_counts(m, p);
        KahanSum logp;
        for (long long k = 1; k <= (long long)c1.size(); ++k)
            if (c1[std::size_t(k - 1)]) logp.add(double(c1[std::size_t(k - 1)]) * strip_log(k, n));
        ResidualPoint pt;
        pt.m = m;
        pt.n = n;
        pt.residual = logp.value() - double(m) * double(n) * h;
        pt.normalizer = double(n) * std::log(double(m)) + double(m) * hsum.value();
        pt.ratio = pt.residual / pt.normalizer;
        out.points.push_back(pt);
    }
    return out;
}

namespace {

ResidualSeries residual_tree(const TreeParams& params, const SubshiftSpec& f1,
                             const SubshiftSpec& f2, long long n_max,
                             const EntropyEstimate& entropy) {
    if (n_max < 0 || n_max > 24) throw BadInput("residual_tree: need 0 <= n_max <= 24");
    const double h = entropy.midpoint();
    const double B = growth_model().B;

    ResidualSeries out;
    out.entropy = entropy;
    std::map<std::tuple<int, long long, long long>, double> shape_log;
    for (long long n = 0; n <= n_max; ++n) {
        auto dec = decompose_tree(n, params, /*verify=*/false);
        KahanSum logp;
        for (const auto& comp : dec.components) {
            auto key = std::make_tuple(comp.shape.root_type.dir, comp.shape.root_type.index,
                                       comp.shape.budget);
            auto it = shape_log.find(key);
            if (it == shape_log.end())
                it = shape_log.emplace(key, count_shape(comp.shape, f1, f2).log_count).first;
            logp.add(double(comp.multiplicity) * it->second);
        }
        ResidualPoint pt;
        pt.n = n;
        pt.residual = logp.value() - double((1ll << (n + 1)) - 1) * h;
        pt.normalizer = std::pow(B, double(n));
        pt.ratio = pt.residual / pt.normalizer;
        out.points.push_back(pt);
    }
    return out;
}

} // namespace

ResidualSeries residual_tree_mult_mult(const SubshiftSpec& omega1, const SubshiftSpec& omega2,
                                       int p1, int p2, long long n_max) {
    const double tol = std::min(1e-7, 1e-6 / double(1ll << (n_max + 1)));
    auto h = entropy_tree_mult_mult(omega1, omega2, p1, p2, tol);
    return residual_tree({TreeMode::TwoSided, p1, p2}, omega1, omega2, n_max, h);
}

ResidualSeries residual_tree_mult_shift(const SubshiftSpec& omega, int p, const SubshiftSpec& x,
                                        long long n_max) {
    const double tol = std::min(1e-7, 1e-6 / double(1ll << (n_max + 1)));
    auto h = entropy_tree_mult_shift(omega, p, x, tol);
    return residual_tree({TreeMode::OneSidedLeft, p, 2}, omega, x, n_max, h);
}

} // namespace multent
