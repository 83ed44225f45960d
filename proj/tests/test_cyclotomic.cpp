#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "preproj/cyclotomic.hpp"

namespace {

using preproj::CycNum;
using preproj::cyc_parse;
using preproj::cyc_print;
using preproj::Rational;

CycNum z(unsigned long m, long k = 1) { return preproj::cyc_root_of_unity(m, k); }

// Random element of Q(zeta_m) with small rational coordinates.
CycNum random_element(std::mt19937_64& rng, unsigned long m) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    CycNum acc;
    for (unsigned long k = 0; k < m; ++k) acc += CycNum(Rational(num(rng), den(rng))) * z(m, static_cast<long>(k));
    return acc;
}

TEST(RootOfUnity, TrivialOrderIsOne) { EXPECT_EQ(z(1, 0), CycNum(1)); }

TEST(RootOfUnity, CubeRootsMultiplyToOne) { EXPECT_EQ(preproj::cyc_mul(z(3, 1), z(3, 2)), CycNum(1)); }

TEST(RootOfUnity, PrimitiveCubeRootsSumToMinusOne) { EXPECT_EQ(preproj::cyc_add(z(3, 1), z(3, 2)), CycNum(-1)); }

TEST(RootOfUnity, NegativeExponentsWrap) {
    EXPECT_EQ(z(5, -1), z(5, 4));
    EXPECT_EQ(z(6, 3), CycNum(-1));
    EXPECT_EQ(z(4, 2), CycNum(-1));
}

TEST(RootOfUnity, ZeroOrderRejected) { EXPECT_THROW(z(0, 1), preproj::PreconditionError); }

TEST(Arithmetic, ProductOfThirdAndFourthRootHasOrderTwelve) {
    auto ord = preproj::cyc_order_as_root_of_unity(preproj::cyc_mul(z(3), z(4)));
    ASSERT_TRUE(ord.has_value());
    EXPECT_EQ(*ord, 12u);
}

TEST(Arithmetic, InverseOfMinusOne) { EXPECT_EQ(preproj::cyc_inv(CycNum(-1)), CycNum(-1)); }

TEST(Arithmetic, InverseOfZeroThrows) { EXPECT_THROW(preproj::cyc_inv(CycNum()), preproj::ZeroDivisionError); }

TEST(Arithmetic, DivisionByZeroThrows) { EXPECT_THROW(z(3) / CycNum(0), preproj::ZeroDivisionError); }

TEST(Arithmetic, HalfOfMinusOneMinusISqrt3IsZetaSquared) {
    // i*sqrt(3) written as zeta3 - zeta3^2
    CycNum isqrt3 = z(3, 1) - z(3, 2);
    CycNum value = (CycNum(-1) - isqrt3) / CycNum(2);
    std::complex<double> expected = std::polar(1.0, 4.0 * std::numbers::pi / 3.0);
    EXPECT_LT(std::abs(value.embed() - expected), 1e-12);
    EXPECT_EQ(value, z(3, 2));
}

TEST(Arithmetic, RationalValuesDemoteToConductorOne) {
    CycNum v = z(7, 1) + z(7, 2) + z(7, 3) + z(7, 4) + z(7, 5) + z(7, 6);
    EXPECT_TRUE(v.is_rational());
    EXPECT_EQ(v, CycNum(-1));
    EXPECT_EQ(v.conductor(), 1u);
}

TEST(Arithmetic, CrossConductorEquality) {
    EXPECT_EQ(z(6, 2), z(3, 1));
    EXPECT_EQ(z(12, 4), z(3, 1));
    EXPECT_EQ(z(12, 3), z(4, 1));
    EXPECT_NE(z(12, 1), z(3, 1));
}

TEST(Order, Examples) {
    EXPECT_EQ(preproj::cyc_order_as_root_of_unity(z(3)), 3u);
    EXPECT_EQ(preproj::cyc_order_as_root_of_unity(CycNum(-1)), 2u);
    EXPECT_EQ(preproj::cyc_order_as_root_of_unity(CycNum(1)), 1u);
    EXPECT_FALSE(preproj::cyc_order_as_root_of_unity(CycNum(2)).has_value());
    EXPECT_EQ(preproj::cyc_order_as_root_of_unity(-z(3)), 6u);
    EXPECT_EQ(preproj::cyc_order_as_root_of_unity(z(5, 2)), 5u);
}

TEST(Order, UnitCircleIsNotEnough) {
    // (3 + 4i)/5 has absolute value one but is not a root of unity.
    CycNum w = (CycNum(3) + CycNum(4) * z(4)) / CycNum(5);
    EXPECT_FALSE(preproj::cyc_order_as_root_of_unity(w).has_value());
    // 1 + zeta3 = -zeta3^2
    EXPECT_EQ(preproj::cyc_order_as_root_of_unity(CycNum(1) + z(3)), 6u);
}

TEST(Order, ZeroRejected) {
    EXPECT_THROW(preproj::cyc_order_as_root_of_unity(CycNum()), preproj::PreconditionError);
}

TEST(Parse, Examples) {
    EXPECT_EQ(cyc_parse("zeta(3)^2"), z(3, 2));
    EXPECT_EQ(cyc_parse("-1/2"), CycNum(Rational(-1, 2)));
    EXPECT_EQ(cyc_parse("i"), z(4, 1));
    EXPECT_EQ(cyc_parse("-zeta(3)"), -z(3));
    EXPECT_EQ(cyc_parse("(1 + i) * (1 - i)"), CycNum(2));
    EXPECT_EQ(cyc_parse("3/4/3"), CycNum(Rational(1, 4)));
    EXPECT_EQ(cyc_parse("2^10"), CycNum(1024));
    EXPECT_EQ(cyc_parse("-2^2"), CycNum(4));
}

TEST(Parse, SyntaxErrorsCarryPosition) {
    try {
        cyc_parse("1 + * 2");
        FAIL() << "expected a parse error";
    } catch (const preproj::ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
    EXPECT_THROW(cyc_parse(""), preproj::ParseError);
    EXPECT_THROW(cyc_parse("zeta(0)"), preproj::ParseError);
    EXPECT_THROW(cyc_parse("zeta(3"), preproj::ParseError);
    EXPECT_THROW(cyc_parse("t"), preproj::ParseError);
    EXPECT_THROW(cyc_parse("(1+2"), preproj::ParseError);
    EXPECT_THROW(cyc_parse("1 2"), preproj::ParseError);
}

TEST(Parse, DivisionByZeroInsideExpression) {
    EXPECT_THROW(cyc_parse("1/0"), preproj::ZeroDivisionError);
    EXPECT_THROW(cyc_parse("1/(zeta(3)+zeta(3)^2+1)"), preproj::ZeroDivisionError);
}

TEST(Print, SimpleForms) {
    EXPECT_EQ(cyc_print(CycNum()), "0");
    EXPECT_EQ(cyc_print(CycNum(Rational(-1, 2))), "-1/2");
    EXPECT_EQ(cyc_print(z(4)), "i");
    EXPECT_EQ(cyc_print(z(3)), "zeta(3)");
    EXPECT_EQ(cyc_print(-z(5, 2)), "-1*zeta(5)^2");
}

TEST(Print, RoundTripOnRandomElements) {
    std::mt19937_64 rng(20240601);
    const unsigned long conductors[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15};
    for (int trial = 0; trial < 300; ++trial) {
        unsigned long m = conductors[trial % std::size(conductors)];
        CycNum a = random_element(rng, m);
        EXPECT_EQ(cyc_parse(cyc_print(a)), a) << cyc_print(a);
    }
}

TEST(Properties, RingIdentitiesOnRandomTriples) {
    std::mt19937_64 rng(7);
    const unsigned long conductors[] = {3, 4, 5, 6, 8, 12};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(conductors) - 1);
    for (int trial = 0; trial < 1000; ++trial) {
        CycNum a = random_element(rng, conductors[pick(rng)]);
        CycNum b = random_element(rng, conductors[pick(rng)]);
        CycNum c = random_element(rng, conductors[pick(rng)]);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
        if (!a.is_zero()) {
            ASSERT_EQ(a * a.inverse(), CycNum(1));
        }
    }
}

TEST(Properties, LiftingPreservesValue) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned long m = 2 + trial % 9;
        CycNum a = random_element(rng, m);
        unsigned long target = a.conductor() * (1 + trial % 4);
        CycNum lifted = a.lifted_to(target);
        EXPECT_EQ(lifted, a);
        EXPECT_LT(std::abs(lifted.embed() - a.embed()), 1e-9);
    }
}

TEST(Properties, NumericalShadow) {
    std::mt19937_64 rng(13);
    const unsigned long conductors[] = {3, 4, 5, 7, 8, 9, 12};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(conductors) - 1);
    for (int trial = 0; trial < 300; ++trial) {
        CycNum a = random_element(rng, conductors[pick(rng)]);
        CycNum b = random_element(rng, conductors[pick(rng)]);
        EXPECT_LT(std::abs((a + b).embed() - (a.embed() + b.embed())), 1e-9);
        EXPECT_LT(std::abs((a * b).embed() - (a.embed() * b.embed())), 1e-9);
        EXPECT_LT(std::abs((-a).embed() + a.embed()), 1e-9);
        if (!b.is_zero()) {
            std::complex<double> q = a.embed() / b.embed();
            EXPECT_LT(std::abs((a / b).embed() - q), 1e-9 * std::max(1.0, std::abs(q)));
        }
    }
}

}  // namespace
