#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multent/grid.hpp"

using namespace multent;

namespace {
const SubshiftSpec kGm = SubshiftSpec::golden_mean();
const SubshiftSpec kFull2 = SubshiftSpec::full(2);
} // namespace

TEST_CASE("count_box basics") {
    CHECK(count_box({{2, 2}, {kFull2, kFull2}}) == 16);
    CHECK(count_box({{2, 2}, {kGm, kGm}}) == 7);
    CHECK(count_box({{3, 2}, {kGm, kGm}}) == 17);
    for (long long n : {1ll, 4ll, 9ll})
        CHECK(count_box({{1, n}, {kFull2, kGm}}) == count_words(kGm, n));
    CHECK(count_box({{5}, {kGm}}) == count_words(kGm, 5));
}

TEST_CASE("brute_force_box matches on small boxes including 3d") {
    for (auto dims : {std::vector<long long>{2, 2}, {3, 2}, {4, 3}, {2, 2, 2}, {3, 2, 2}}) {
        std::vector<SubshiftSpec> factors(dims.size(), kGm);
        CHECK(count_box({dims, factors}) == brute_force_box({dims, factors}));
        factors[0] = kFull2;
        CHECK(count_box({dims, factors}) == brute_force_box({dims, factors}));
    }
}

TEST_CASE("brute_force_box handles forbidden-word factors directly") {
    auto no000 = SubshiftSpec::forbidden_words(2, {{0, 0, 0}});
    BoxQuery q{{3, 3}, {no000, kGm}};
    // the transfer engine requires 1-step factors; the oracle does not
    CHECK_THROWS_AS(count_box(q), BadInput);
    CHECK(brute_force_box(q) > 0);
}

TEST_CASE("count_box is symmetric under transposing dims and factors") {
    auto three = SubshiftSpec::forbidden_words(3, {{0, 0}, {2, 1}});
    std::vector<std::pair<SubshiftSpec, SubshiftSpec>> pairs = {
        {kGm, kGm}, {kGm, kFull2}, {three, kGm}};
    for (const auto& [f1, f2] : pairs) {
        if (f1.alphabet != f2.alphabet) continue;
        for (long long a = 1; a <= 5; ++a)
            for (long long b = 1; b <= 5; ++b)
                CHECK(count_box({{a, b}, {f1, f2}}) == count_box({{b, a}, {f2, f1}}));
    }
    // alphabet-3 pair as well
    CHECK(count_box({{4, 3}, {three, three}}) == count_box({{3, 4}, {three, three}}));
}

TEST_CASE("count_box caps the state space") {
    GridCaps caps;
    caps.dp_states = 100;
    CHECK_THROWS_AS(count_box({{30, 30}, {kGm, kGm}}, caps), CapExceeded);
    CHECK_THROWS_AS(brute_force_box({{30, 30}, {kGm, kGm}}), CapExceeded);
}

TEST_CASE("strip spectrum: unconstrained strips") {
    auto s = strip_spectrum(kFull2, kFull2, 1);
    CHECK(s.lambda == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(s.correction == doctest::Approx(0.0).epsilon(1e-12));

    // width-1 strip of gm columns with a free row factor
    auto t = strip_spectrum(kGm, kFull2, 1);
    CHECK(t.lambda == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(t.correction == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("strip spectrum: gm x gm width 2") {
    auto s = strip_spectrum(kGm, kGm, 2);
    CHECK(s.side == count_words(kGm, 2)); // states 00, 01, 10
    // growth rate against the finite-size count at j = 32, within 1 percent
    double finite = log_big(count_box({{2, 32}, {kGm, kGm}})) / 32.0;
    CHECK(std::exp(finite) == doctest::Approx(std::exp(s.lambda)).epsilon(0.01));
}

TEST_CASE("strip spectrum: product shortcuts agree with the built matrix") {
    // small widths are feasible both ways for the full-column case
    for (long long w = 1; w <= 3; ++w) {
        StripEngine eng(kFull2, kGm, w, 4096);
        auto s = strip_spectrum(kFull2, kGm, w);
        auto direct = power_iteration(eng.transitions());
        CHECK(s.lambda == doctest::Approx(std::log(direct.rho)).epsilon(1e-10));
    }
}

TEST_CASE("strip growth rate is approached from above in j") {
    for (long long i : {2ll, 3ll}) {
        double prev = 1e100;
        for (long long j = 4; j <= 32; j *= 2) {
            double v = log_big(count_box({{i, j}, {kGm, kGm}})) / double(j);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        CHECK(prev >= strip_spectrum(kGm, kGm, i).lambda - 1e-12);
    }
}

TEST_CASE("strip spectrum propagates NotPrimitive and caps") {
    auto period2 = SubshiftSpec::sft({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(strip_spectrum(period2, period2, 1), NotPrimitive);
    GridCaps caps;
    caps.strip_side = 4;
    CHECK_THROWS_AS(strip_spectrum(kGm, kGm, 5, caps), CapExceeded);
}

TEST_CASE("count profile matches repeated single counts") {
    StripEngine eng(kGm, kGm, 3, 4096);
    auto profile = eng.count_profile(6);
    for (long long j = 1; j <= 6; ++j)
        CHECK(profile[std::size_t(j - 1)] == count_box({{3, j}, {kGm, kGm}}));
    auto logs = eng.log_count_profile(6);
    for (long long j = 1; j <= 6; ++j)
        CHECK(logs[std::size_t(j - 1)] ==
              doctest::Approx(log_big(profile[std::size_t(j - 1)])).epsilon(1e-12));
}

TEST_CASE("cross-section growth rates specialize to strips") {
    CHECK(cross_section_lambda({2}, {kGm}, kGm) ==
          doctest::Approx(strip_spectrum(kGm, kGm, 2).lambda).epsilon(1e-11));
    // two multiplicative axes with a free cross factor: log of the box count
    CHECK(cross_section_lambda({2, 2}, {kGm, kGm}, kFull2) ==
          doctest::Approx(log_big(count_box({{2, 2}, {kGm, kGm}}))).epsilon(1e-12));
}
