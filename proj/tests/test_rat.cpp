#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normsurf/rat.hpp"

using namespace normsurf;

TEST_CASE("rationals are stored in lowest terms with positive denominator") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(1, -2) == Rat(-1, 2));
    CHECK(Rat(1, -2).den() == 2);
    CHECK(Rat(-4, -6) == Rat(2, 3));
    CHECK(Rat(0, 7).den() == 1);
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("arithmetic is exact") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a - b == Rat(1, 6));
    CHECK(a * b == Rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK((a - a).is_zero());
    CHECK_THROWS(a / Rat(0));

    Rat s;
    for (int i = 0; i < 1000; ++i) s += Rat(1, 3);
    CHECK(s == Rat(1000, 3));
}

TEST_CASE("comparisons and sign") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(0));
    CHECK(Rat(-5).sign() == -1);
    CHECK(Rat(0).sign() == 0);
    CHECK(Rat(7, 2).sign() == 1);
    CHECK(Rat(-3, 2).abs() == Rat(3, 2));
}

TEST_CASE("ceil and floor") {
    CHECK(Rat(7, 2).ceil() == 4);
    CHECK(Rat(7, 2).floor() == 3);
    CHECK(Rat(-7, 2).ceil() == -3);
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat(6).ceil() == 6);
    CHECK(Rat(6).floor() == 6);
}

TEST_CASE("string round trip") {
    CHECK(Rat(1, 2).str() == "1/2");
    CHECK(Rat(-3).str() == "-3");
    CHECK(Rat::parse("22/7").value() == Rat(22, 7));
    CHECK(Rat::parse("-4/6").value() == Rat(-2, 3));
    CHECK(Rat::parse("0").value().is_zero());
    CHECK(!Rat::parse("").has_value());
    CHECK(!Rat::parse("1/0").has_value());
    CHECK(!Rat::parse("a/b").has_value());
    CHECK(!Rat::parse("1.5").has_value());
    CHECK(!Rat::parse("1/-2").has_value());

    // big values survive the trip
    std::string big = "123456789012345678901234567891/7";
    CHECK(Rat::parse(big).value().str() == big);
}

TEST_CASE("vector normalization helpers") {
    QVec v{Rat(1, 2), Rat(-3, 4), Rat(0)};
    CHECK(common_denominator(v) == 4);
    QVec p = primitive_integer_vector(v);
    CHECK(p == QVec{Rat(2), Rat(-3), Rat(0)});

    QVec w{Rat(4), Rat(-6)};
    CHECK(primitive_integer_vector(w) == QVec{Rat(2), Rat(-3)});

    QVec z{Rat(0), Rat(0)};
    CHECK(primitive_integer_vector(z) == z);
}
