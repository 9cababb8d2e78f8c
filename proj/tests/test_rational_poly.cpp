#include "gheat/errors.hpp"
#include "gheat/rational_poly.hpp"

#include <doctest.h>

using namespace gheat;

TEST_SUITE("rational_poly")
{
    TEST_CASE("mixed parity is rejected")
    {
        CHECK_THROWS_AS(RationalPoly({1, 1}), DomainError);
        CHECK_NOTHROW(RationalPoly({0, 2, 0, 5}));
        CHECK(RationalPoly({0, 2, 0, 5}).parity() == Parity::odd);
        CHECK(RationalPoly({3, 0, 1}).parity() == Parity::even);
    }

    TEST_CASE("trailing zeros are dropped")
    {
        const RationalPoly p({0, 1, 0, 0, 0});
        CHECK(p.degree() == 1);
        CHECK(RationalPoly({0, 0}).is_zero());
        CHECK(RationalPoly().degree() == -1);
        CHECK(p.coeff(7) == 0);
    }

    TEST_CASE("arithmetic")
    {
        const RationalPoly x = RationalPoly::monomial(1);
        const RationalPoly one = RationalPoly::constant(1);
        const RationalPoly sq = x * x + one;
        CHECK(sq == RationalPoly({1, 0, 1}));
        CHECK(sq * x == RationalPoly({0, 1, 0, 1}));
        CHECK(sq - sq == RationalPoly());
        CHECK(sq * Rational(1, 3) == RationalPoly({Rational(1, 3), 0, Rational(1, 3)}));
        CHECK_THROWS_AS(sq + x, DomainError);
        CHECK_NOTHROW(sq + RationalPoly());
        CHECK_NOTHROW(x + RationalPoly());
    }

    TEST_CASE("derivative")
    {
        const RationalPoly p({0, 3, 0, 1});
        CHECK(p.derivative() == RationalPoly({3, 0, 3}));
        CHECK(p.derivative().derivative() == RationalPoly({0, 6}));
        CHECK(RationalPoly::constant(4).derivative().is_zero());
    }

    TEST_CASE("integer coefficients")
    {
        CHECK(RationalPoly({0, 3, 0, 1}).has_integer_coefficients());
        CHECK_FALSE(RationalPoly({Rational(1, 2)}).has_integer_coefficients());
    }

    TEST_CASE("double evaluation matches the packed form")
    {
        const RationalPoly p({0, Rational(15), 0, Rational(10), 0, Rational(1)});
        const FloatPoly f(p);
        CHECK(f.parity() == Parity::odd);
        CHECK(f.packed().size() == 3);
        for (double x : {-2.0, -0.5, 0.0, 0.25, 3.0}) {
            const double want = x * x * x * x * x + 10 * x * x * x + 15 * x;
            CHECK(p(x) == doctest::Approx(want).epsilon(1e-15));
            CHECK(f(x) == doctest::Approx(want).epsilon(1e-15));
        }
        const FloatPoly e(RationalPoly({8, 0, 9, 0, 1}));
        CHECK(e(2.0) == doctest::Approx(60.0).epsilon(1e-15));
        CHECK(FloatPoly(RationalPoly())(3.0) == 0.0);
    }

    TEST_CASE("printing")
    {
        CHECK(RationalPoly({0, 3, 0, 1}).to_string() == "x^3 + 3x");
        CHECK(RationalPoly().to_string() == "0");
    }
}
