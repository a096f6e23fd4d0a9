#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multent/json_io.hpp"
#include "multent/subshift.hpp"

using namespace multent;

namespace {
const SubshiftSpec kGm = SubshiftSpec::golden_mean();
const SubshiftSpec kFull2 = SubshiftSpec::full(2);
} // namespace

TEST_CASE("recode: full shift becomes the all-ones matrix") {
    auto r = recode_to_sft(SubshiftSpec::full(2));
    REQUIRE(r.kind == SubshiftKind::Sft);
    REQUIRE(r.alphabet == 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(r.adjacency[i][j] == 1);
}

TEST_CASE("recode: forbidding 11 gives the golden mean matrix") {
    auto spec = SubshiftSpec::forbidden_words(2, {{1, 1}});
    auto r = recode_to_sft(spec);
    REQUIRE(r.alphabet == 2);
    CHECK(r.adjacency == std::vector<std::vector<std::uint8_t>>{{1, 1}, {1, 0}});
}

TEST_CASE("recode: forbidding 000 gives a 4-state block presentation") {
    auto spec = SubshiftSpec::forbidden_words(2, {{0, 0, 0}});
    auto r = recode_to_sft(spec);
    CHECK(r.alphabet == 4);
    CHECK(count_words(spec, 3) == 7); // 8 binary words minus 000
    CHECK(count_words(spec, 1) == 2);
    CHECK(count_words(spec, 2) == 4);
}

TEST_CASE("recode: a language that dies out is reported") {
    auto spec = SubshiftSpec::forbidden_words(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK_THROWS_AS(recode_to_sft(spec), EmptyLanguage);
    CHECK_THROWS_AS(count_words(spec, 4), EmptyLanguage);
}

TEST_CASE("count_words basics") {
    CHECK(count_words(kFull2, 3) == 8);
    CHECK(count_words(kGm, 3) == 5);
    CHECK(count_words(kGm, 1) == 2);
    // Fibonacci growth as a spot check further out
    CHECK(count_words(kGm, 10) == 144);
}

TEST_CASE("count_words handles dead symbols via extendability") {
    // symbol 1 has no successor: words ending in 1 are not factors of any
    // infinite configuration
    auto spec = SubshiftSpec::sft({{1, 1}, {0, 0}});
    CHECK(count_words(spec, 1) == 1);
    CHECK(count_words(spec, 4) == 1);
    CHECK(is_language_word(spec, {0, 0}));
    CHECK_FALSE(is_language_word(spec, {0, 1}));
}

TEST_CASE("count_words is submultiplicative") {
    auto three = SubshiftSpec::forbidden_words(3, {{0, 0}, {1, 2}});
    for (const auto& spec : {kGm, kFull2, three}) {
        std::vector<BigInt> cw = {0};
        for (long long n = 1; n <= 24; ++n) cw.push_back(count_words(spec, n));
        for (long long a = 1; a <= 12; ++a)
            for (long long b = 1; b <= 12; ++b)
                CHECK(cw[std::size_t(a + b)] <= cw[std::size_t(a)] * cw[std::size_t(b)]);
    }
}

TEST_CASE("log count over n decreases to log rho with a 2/n envelope") {
    const double log_phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    double prev = 1e9;
    for (long long n = 4; n <= 64; ++n) {
        double v = log_big(count_words(kGm, n)) / double(n);
        CHECK(v <= prev + 1e-15);
        CHECK(v - log_phi >= -1e-12);
        CHECK(v - log_phi < std::log(2.0) / double(n));
        prev = v;
    }
}

TEST_CASE("perron: golden mean") {
    auto s = perron(kGm);
    CHECK(s.rho == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    // residuals at 1e-12 relative
    const double adj[2][2] = {{1, 1}, {1, 0}};
    for (int i = 0; i < 2; ++i) {
        double ar = 0, la = 0;
        for (int j = 0; j < 2; ++j) {
            ar += adj[i][j] * s.right[std::size_t(j)];
            la += adj[j][i] * s.left[std::size_t(j)];
        }
        CHECK(std::abs(ar - s.rho * s.right[std::size_t(i)]) <= 1e-12 * s.rho);
        CHECK(std::abs(la - s.rho * s.left[std::size_t(i)]) <= 1e-12 * s.rho);
    }
}

TEST_CASE("perron: full shift and normalization") {
    auto s = perron(kFull2);
    CHECK(s.rho == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(s.right[0] == doctest::Approx(1.0));
    CHECK(s.right[1] == doctest::Approx(1.0));
    CHECK(s.left[0] == doctest::Approx(0.5));
    CHECK(s.left[1] == doctest::Approx(0.5));
    double dot = s.left[0] * s.right[0] + s.left[1] * s.right[1];
    CHECK(dot == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("perron rejects non-primitive matrices") {
    CHECK_THROWS_AS(perron(SubshiftSpec::sft({{0, 1}, {1, 0}})), NotPrimitive);
}

TEST_CASE("word serialization switches format on large alphabets") {
    CHECK(word_to_string({0, 3, 9}, 10) == "039");
    CHECK(word_from_string("039", 10) == std::vector<int>{0, 3, 9});
    CHECK(word_to_string({0, 11, 3}, 12) == "0,11,3");
    CHECK(word_from_string("0,11,3", 12) == std::vector<int>{0, 11, 3});
    CHECK_THROWS_AS(word_from_string("09", 5), BadInput);

    auto big = SubshiftSpec::forbidden_words(12, {{11, 11}}, "wide");
    auto back = subshift_from_json(subshift_to_json(big));
    CHECK(back.forbidden == big.forbidden);
    CHECK(count_words(back, 2) == 12 * 12 - 1);
}

TEST_CASE("subshift json round trip") {
    for (const auto& spec :
         {kGm, kFull2, SubshiftSpec::forbidden_words(2, {{0, 0, 0}}, "no-000")}) {
        auto j = subshift_to_json(spec);
        auto back = subshift_from_json(j);
        CHECK(subshift_to_json(back).dump() == j.dump());
        CHECK(count_words(back, 5) == count_words(spec, 5));
    }
    CHECK_THROWS_AS(subshift_from_json(Json::parse(R"({"alphabet":2,"kind":"nope"})")), BadInput);
}
