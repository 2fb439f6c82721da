#include <random>

#include <doctest.h>

#include "affsim/scalar.hpp"

using namespace affsim;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    const Rational x(BigInt(6), BigInt(-4));
    CHECK(numerator(x) == -3);
    CHECK(denominator(x) == 2);
    CHECK(to_string(x) == "-3/2");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(to_string(parse_scalar<Rational>("10/4")) == "5/2");
}

TEST_CASE("rational sums agree with a cross-multiplication oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> num(-1000000, 1000000), den(1, 1000000);
    for (int trial = 0; trial < 500; ++trial) {
        const BigInt a(num(rng)), b(den(rng)), c(num(rng)), d(den(rng));
        const Rational sum = Rational(a, b) + Rational(c, d);

        BigInt p = a * d + c * b;
        BigInt q = b * d;
        const BigInt g = gcd(p, q);
        if (g != 0) {
            p /= g;
            q /= g;
        }
        if (q < 0) {
            p = -p;
            q = -q;
        }
        REQUIRE(numerator(sum) == p);
        REQUIRE(denominator(sum) == q);
    }
}

TEST_CASE("rational parsing") {
    CHECK(parse_scalar<Rational>("-7/21") == Rational(-1, 3));
    CHECK(parse_scalar<Rational>("+12") == Rational(12));
    CHECK_THROWS_AS(parse_scalar<Rational>("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar<Rational>("1.5"), ParseError);
    CHECK_THROWS_AS(parse_scalar<Rational>(""), ParseError);
    CHECK_THROWS_AS(inverse(Rational(0)), std::domain_error);
}

TEST_CASE("prime field arithmetic") {
    ModP::Scope scope(7);
    const ModP a(3), b(5);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 1);
    CHECK((a / b) * b == a);
    CHECK(ModP(-1).value() == 6);
    CHECK((-a).value() == 4);
    for (int v = 1; v < 7; ++v) CHECK(ModP(v) * inverse(ModP(v)) == ModP(1));
    CHECK(parse_scalar<ModP>("1/2").value() == 4);
    CHECK(parse_scalar<ModP>("-3").value() == 4);
    CHECK_THROWS_AS(parse_scalar<ModP>("1/14"), ParseError);
    CHECK(FieldTraits<ModP>::characteristic() == 7);
}

TEST_CASE("prime field scopes nest and validate the modulus") {
    CHECK(ModP::modulus() == 0);
    {
        ModP::Scope outer(11);
        {
            ModP::Scope inner(13);
            CHECK(ModP::modulus() == 13);
        }
        CHECK(ModP::modulus() == 11);
    }
    CHECK(ModP::modulus() == 0);
    CHECK_THROWS_AS(ModP::Scope(9), ConfigError);
    CHECK_THROWS_AS(ModP(3), UnsupportedFieldError);
    CHECK(ModP(0).value() == 0);
}

TEST_CASE("largest admissible prime keeps products exact") {
    const ModP::rep p = 4294967291ULL;  // largest prime below 2^32
    ModP::Scope scope(p);
    const ModP x = ModP::from_residue(p - 1);
    CHECK((x * x).value() == 1);
    CHECK((x * inverse(x)).value() == 1);
}
