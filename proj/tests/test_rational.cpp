#include "doctest.h"

#include "whcryst/rational.hpp"

using namespace whcryst;

TEST_CASE("rational parse and print round-trip") {
    CHECK(rat_str(rat_parse("3/4")) == "3/4");
    CHECK(rat_str(rat_parse("-3/4")) == "-3/4");
    CHECK(rat_str(rat_parse("6/4")) == "3/2");
    CHECK(rat_str(rat_parse("4/2")) == "2");
    CHECK(rat_str(rat_parse("0")) == "0");
    CHECK(rat_str(rat_parse("-0/5")) == "0");
    CHECK(rat_str(rat_parse("7")) == "7");
}

TEST_CASE("rational parse rejects malformed input") {
    CHECK_THROWS_AS(rat_parse("1/0"), ParseError);
    CHECK_THROWS_AS(rat_parse(""), ParseError);
    CHECK_THROWS_AS(rat_parse("a/b"), ParseError);
    CHECK_THROWS_AS(rat_parse("1.5"), ParseError);
    CHECK_THROWS_AS(rat_parse("1/2/3"), ParseError);
    CHECK_THROWS_AS(rat_parse("1 /2"), ParseError);
    CHECK_THROWS_AS(rat_parse("3/-4"), ParseError); // denominator sign rejected
}

TEST_CASE("floor and fractional part handle negatives") {
    CHECK(floor_rat(Rat(7, 2)) == 3);
    CHECK(floor_rat(Rat(-7, 2)) == -4);
    CHECK(floor_rat(Rat(-4)) == -4);
    CHECK(frac(Rat(-7, 2)) == Rat(1, 2));
    CHECK(frac(Rat(7, 2)) == Rat(1, 2));
    CHECK(frac(Rat(3)) == 0);
    CHECK(frac(Rat(-1, 3)) == Rat(2, 3));
}

TEST_CASE("integrality predicate") {
    CHECK(is_integer(Rat(4, 2)));
    CHECK(is_integer(Rat(0)));
    CHECK_FALSE(is_integer(Rat(1, 2)));
}

TEST_CASE("rational gcd generates the joint additive group") {
    // gcd(a, b) generates aZ + bZ.
    CHECK(rat_gcd(Rat(1, 2), Rat(1, 3)) == Rat(1, 6));
    CHECK(rat_gcd(Rat(4), Rat(6)) == Rat(2));
    CHECK(rat_gcd(Rat(-1, 2), Rat(1, 2)) == Rat(1, 2));
    CHECK(rat_gcd(Rat(0), Rat(5, 3)) == Rat(5, 3));
    CHECK(rat_gcd(Rat(3, 4), Rat(5, 6)) == Rat(1, 12));
}
