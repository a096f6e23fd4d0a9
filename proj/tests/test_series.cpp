#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "multent/numeric.hpp"
#include "multent/series.hpp"

using namespace multent;

namespace {
const SubshiftSpec kGm = SubshiftSpec::golden_mean();
const SubshiftSpec kFull2 = SubshiftSpec::full(2);
} // namespace

TEST_CASE("interval chains: listed examples") {
    auto d = decompose_interval(6, 2);
    REQUIRE(d.chains.size() == 3);
    CHECK(d.chains[0].start == 1);
    CHECK(d.chains[0].length == 3); // 1, 2, 4
    CHECK(d.chains[1].start == 3);
    CHECK(d.chains[1].length == 2); // 3, 6
    CHECK(d.chains[2].start == 5);
    CHECK(d.chains[2].length == 1);

    auto e = decompose_interval(9, 3);
    REQUIRE(e.chains.size() == 6);
    CHECK(e.chains[0].length == 3); // 1, 3, 9
    CHECK(e.chains[1].length == 2); // 2, 6
    long long total = 0;
    for (const auto& c : decompose_interval(10, 2).chains) total += c.length;
    CHECK(total == 10);
}

TEST_CASE("interval chains tile [1, m] for every m up to 10^4") {
    std::vector<std::uint8_t> seen;
    for (int p : {2, 3, 5}) {
        for (long long m = 1; m <= 10000; ++m) {
            auto d = decompose_interval(m, p);
            seen.assign(std::size_t(m) + 1, 0);
            long long covered = 0;
            for (const auto& c : d.chains) {
                CHECK(c.start % p != 0);
                long long v = c.start;
                for (long long t = 0; t < c.length; ++t) {
                    REQUIRE(v <= m);
                    CHECK(!seen[std::size_t(v)]);
                    seen[std::size_t(v)] = 1;
                    ++covered;
                    v *= p;
                }
                CHECK(v > m); // maximality
            }
            CHECK(covered == m);
        }
    }
}

TEST_CASE("chain length counts match the enumeration") {
    for (int p : {2, 3, 5})
        for (long long m : {1ll, 17ll, 100ll, 4097ll}) {
            auto counts = chain_length_counts(m, p);
            std::vector<long long> direct(counts.size(), 0);
            for (const auto& c : decompose_interval(m, p).chains)
                ++direct[std::size_t(c.length - 1)];
            CHECK(counts == direct);
        }
}

TEST_CASE("start density of non-multiples approaches (p-1)/p") {
    const long long m = 1000000;
    for (int p : {2, 3, 5}) {
        for (long long k = 1; k <= 10; ++k) {
            long long hi = m, lo = m;
            for (long long t = 0; t < k - 1; ++t) hi /= p;
            lo = hi / p;
            if (lo == 0) break;
            double count = double((hi - lo) - (hi / p - lo / p));
            double density = count / double(hi - lo);
            CHECK(std::abs(density - double(p - 1) / p) <= 1.0 / double(lo));
        }
    }
}

TEST_CASE("geometric weight identity sums to one") {
    for (int p : {2, 3, 5}) {
        KahanSum s;
        for (long long i = 1; i <= 50; ++i) s.add(geometric_weight(p, i) * double(i));
        CHECK(std::abs(s.value() - 1.0) < 1e-12);
        CHECK(std::abs(geometric_weight_mass(p, 50) - 1.0) < 1e-12);
    }
}

TEST_CASE("1d multiplicative entropy: full shift is exact") {
    auto est = entropy_1d_mult(kFull2, 2, 1e-9);
    CHECK(est.value <= std::log(2.0) + 1e-15);
    CHECK(est.value + est.tail_bound >= std::log(2.0) - 1e-13);
    CHECK(std::abs(est.value - std::log(2.0)) <= est.tail_bound + 1e-13);
}

TEST_CASE("1d multiplicative entropy: golden mean against the chain estimate") {
    auto est = entropy_1d_mult(kGm, 2, 1e-9);
    std::vector<double> logs = {0.0};
    for (long long len = 1; len <= 21; ++len) logs.push_back(log_big(count_words(kGm, len)));
    for (int t = 10; t <= 20; ++t) {
        const long long m = 1ll << t;
        KahanSum acc;
        auto counts = chain_length_counts(m, 2);
        for (long long len = 1; len <= (long long)counts.size(); ++len)
            acc.add(double(counts[std::size_t(len - 1)]) * logs[std::size_t(len)]);
        double estimate = acc.value() / double(m);
        CHECK(std::abs(estimate - est.value) <= est.tail_bound + 0.01);
    }
    CHECK(est.value == doctest::Approx(0.5714).epsilon(2e-4));
}

TEST_CASE("1d multiplicative entropy grows with sparser constraints") {
    CHECK(entropy_1d_mult(kGm, 3, 1e-9).value > entropy_1d_mult(kGm, 2, 1e-9).value);
    double v2 = entropy_1d_mult(kGm, 3, 1e-9).value;
    CHECK(v2 > 0.0);
    CHECK(v2 < std::log(2.0));
}

TEST_CASE("plane mult-mult: unconstrained and one-sided reductions") {
    auto both_full = entropy_n2_mult_mult(kFull2, kFull2, 2, 3, 1e-9);
    CHECK(std::abs(both_full.value - std::log(2.0)) <= both_full.tail_bound + 1e-12);

    const double tol = 1e-9;
    auto left_full = entropy_n2_mult_mult(kFull2, kGm, 2, 2, tol);
    auto one_d = entropy_1d_mult(kGm, 2, tol);
    CHECK(std::abs(left_full.value - one_d.value) <= 2 * tol);
    auto right_full = entropy_n2_mult_mult(kGm, kFull2, 2, 2, tol);
    CHECK(std::abs(right_full.value - entropy_1d_mult(kGm, 2, tol).value) <= 2 * tol);
}

TEST_CASE("plane mult-mult: double constraints lower the value") {
    auto both = entropy_n2_mult_mult(kGm, kGm, 2, 2, 1e-4);
    CHECK(both.value + both.tail_bound < entropy_1d_mult(kGm, 2, 1e-9).value);
    CHECK(both.value > 0.0);
}

TEST_CASE("plane mult-mult: cap versus tolerance") {
    GridCaps caps;
    caps.dp_states = 8;
    CHECK_THROWS_AS(entropy_n2_mult_mult(kGm, kGm, 2, 2, 1e-9, caps), CapExceeded);
}

TEST_CASE("plane mixed: reductions to known values") {
    const double tol = 1e-9;
    auto fx = entropy_n2_mult_shift(kFull2, 2, kGm, tol);
    CHECK(std::abs(fx.value - std::log((1.0 + std::sqrt(5.0)) / 2.0)) <= 2 * tol);
    auto xf = entropy_n2_mult_shift(kGm, 2, kFull2, tol);
    CHECK(std::abs(xf.value - entropy_1d_mult(kGm, 2, tol).value) <= 2 * tol);
}

TEST_CASE("plane mixed: double constraints sit below both reductions") {
    auto both = entropy_n2_mult_shift(kGm, 2, kGm, 1e-3);
    double bound = std::min(entropy_n2_mult_shift(kFull2, 2, kGm, 1e-9).value,
                            entropy_n2_mult_shift(kGm, 2, kFull2, 1e-9).value);
    CHECK(both.value + both.tail_bound < bound);
}

TEST_CASE("general axial products specialize") {
    const double tol = 1e-3;
    auto nd_ms = entropy_nd({{kGm, 2}}, {kGm}, tol);
    auto ms = entropy_n2_mult_shift(kGm, 2, kGm, tol);
    CHECK(std::abs(nd_ms.value - ms.value) <= nd_ms.tail_bound + ms.tail_bound + 1e-12);

    auto nd_mm = entropy_nd({{kGm, 2}, {kGm, 2}}, {}, tol);
    auto mm = entropy_n2_mult_mult(kGm, kGm, 2, 2, tol);
    CHECK(std::abs(nd_mm.value - mm.value) <= nd_mm.tail_bound + mm.tail_bound + 1e-12);
    CHECK(nd_mm.rigorous);

    auto nd_1 = entropy_nd({{kGm, 2}}, {}, 1e-9);
    CHECK(std::abs(nd_1.value - entropy_1d_mult(kGm, 2, 1e-9).value) <= 2e-9);
}

TEST_CASE("general axial products: ordinary-only estimates") {
    auto one = entropy_nd({}, {kGm}, 1e-6);
    CHECK(one.rigorous);
    CHECK(one.value == doctest::Approx(std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-10));

    auto two = entropy_nd({}, {kGm, kGm}, 1e-6);
    CHECK_FALSE(two.rigorous);
    CHECK(two.uncertainty > 0.0);
    // hard-square growth constant per site, loose finite-size bracket
    CHECK(two.value == doctest::Approx(0.4075).epsilon(0.05));
}

TEST_CASE("general axial products: two ordinary axes flagged non-rigorous") {
    auto est = entropy_nd({{kGm, 2}}, {kGm, kGm}, 1e-2);
    CHECK_FALSE(est.rigorous);
    CHECK(est.uncertainty > 0.0);
    CHECK(est.value > 0.0);
    CHECK(est.value < std::log(2.0));
}

TEST_CASE("series argument validation") {
    CHECK_THROWS_AS(entropy_1d_mult(kGm, 1, 1e-6), BadInput);
    CHECK_THROWS_AS(entropy_1d_mult(kGm, 2, 0.0), BadInput);
    CHECK_THROWS_AS(entropy_nd({}, {}, 1e-6), BadInput);
    CHECK_THROWS_AS(entropy_nd({{kGm, 2}}, {kGm, kGm, kGm, kGm}, 1e-2), BadInput);
    auto three = SubshiftSpec::full(3);
    CHECK_THROWS_AS(entropy_n2_mult_mult(kGm, three, 2, 2, 1e-6), BadInput);
}
