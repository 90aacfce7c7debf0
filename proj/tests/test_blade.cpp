#include "doctest.h"

#include "obmm/blade.hpp"
#include "obmm/errors.hpp"
#include "support/oracles.hpp"

using namespace obmm;

TEST_CASE("grade counts set bits")
{
    CHECK(grade(0) == 0);
    CHECK(grade(0b110) == 2);
    CHECK(grade(0b111) == 3);
}

TEST_CASE("blade_wedge examples")
{
    CHECK(blade_wedge(0b01, 0b10) == SignedBlade{+1, 0b11});
    CHECK(blade_wedge(0b10, 0b01) == SignedBlade{-1, 0b11});
    CHECK(blade_wedge(0b01, 0b01) == SignedBlade{0, 0});
    CHECK(blade_wedge(0, 0b101) == SignedBlade{+1, 0b101});
}

TEST_CASE("blade_wedge matches brute-force transposition count, n <= 6")
{
    for (BladeId a = 0; a < 64; ++a) {
        for (BladeId b = 0; b < 64; ++b) {
            const SignedBlade w = blade_wedge(a, b);
            REQUIRE(w.sign == testing::brute_force_wedge_sign(a, b));
            if (w.sign != 0) {
                REQUIRE(w.id == (a | b));
            }
        }
    }
}

TEST_CASE("graded anticommutativity, exhaustive n <= 6")
{
    for (BladeId a = 0; a < 64; ++a) {
        for (BladeId b = 0; b < 64; ++b) {
            if ((a & b) != 0) {
                continue;
            }
            const int parity = (grade(a) * grade(b)) % 2 ? -1 : 1;
            REQUIRE(blade_wedge(a, b).sign == parity * blade_wedge(b, a).sign);
        }
    }
}

TEST_CASE("binomial")
{
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(30, 15) == 155117520ULL);
    CHECK(binomial(3, 4) == 0);
    CHECK(binomial(3, -1) == 0);
}

TEST_CASE("comb_rank follows ascending id order")
{
    CHECK(comb_rank(0b011, 3) == 0);
    CHECK(comb_rank(0b101, 3) == 1);
    CHECK(comb_rank(0b110, 3) == 2);
    CHECK_THROWS_AS(comb_rank(0b1000, 3), DomainError);
}

TEST_CASE("comb_unrank examples")
{
    CHECK(comb_unrank(3, 2, 0) == 0b011);
    CHECK(comb_unrank(3, 2, 2) == 0b110);
    for (int n = 1; n <= 8; ++n) {
        CHECK(comb_unrank(n, 0, 0) == 0);
    }
    CHECK_THROWS_AS(comb_unrank(3, 2, 3), DomainError);
    CHECK_THROWS_AS(comb_unrank(3, 4, 0), DomainError);
}

TEST_CASE("comb_rank and comb_unrank are mutually inverse, exhaustive n <= 12")
{
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            const auto ids = testing::enumerate_grade(n, k);
            REQUIRE(ids.size() == binomial(n, k));
            for (std::size_t r = 0; r < ids.size(); ++r) {
                REQUIRE(comb_rank(ids[r], n) == r);
                REQUIRE(comb_unrank(n, k, r) == ids[r]);
            }
        }
    }
}

TEST_CASE("next_same_grade walks a grade in order")
{
    const auto ids = testing::enumerate_grade(7, 3);
    for (std::size_t r = 0; r + 1 < ids.size(); ++r) {
        CHECK(next_same_grade(ids[r]) == ids[r + 1]);
    }
}

TEST_CASE("frame dimension limits")
{
    CHECK_NOTHROW(Frame(1));
    CHECK_NOTHROW(Frame(kMaxDim));
    CHECK_THROWS_AS(Frame(0), DomainError);
    CHECK_THROWS_AS(Frame(kMaxDim + 1), DomainError);
    CHECK(Frame(3).contains(7));
    CHECK_FALSE(Frame(3).contains(8));
}
