#include "mks/mpoly.hpp"
#include "mks/rational.hpp"
#include "mks/ring.hpp"
#include "mks/spoly.hpp"
#include "mks/tseries.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mks;

TEST(Rational, CanonicalForm) {
    Rational a(6, -4);
    EXPECT_EQ(a.str(), "-3/2");
    EXPECT_EQ(a.den(), 2);
    EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
    EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ExactArithmetic) {
    Rational x(1, 3);
    EXPECT_EQ(x + x + x, Rational(1));
    EXPECT_EQ(Rational(2, 3).pow(3), Rational(8, 27));
    EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
}

TEST(SPoly, OrderAndPrinting) {
    SPoly p = SPoly::var(4) * Rational(4) - SPoly::var(2).pow(2) * Rational(58, 39);
    EXPECT_TRUE(p.is_homogeneous());
    EXPECT_EQ(p.max_weight(), 4);
    EXPECT_EQ(p.str(), "-58/39*s_2^2 + 4*s_4");
}

TEST(SPoly, WeightCapDropsHighTerms) {
    SPoly a = SPoly::var(2) + SPoly::var(5);
    SPoly b = SPoly::mul(a, a, 7);
    EXPECT_EQ(b, SPoly::var(2).pow(2) + SPoly::var(2) * SPoly::var(5) * Rational(2));
}

TEST(SPoly, DerivativeAndDivision) {
    SPoly f = SPoly::var(2).pow(3) * Rational(3) + SPoly::var(3) * SPoly::var(2);
    EXPECT_EQ(f.derivative(2), SPoly::var(2).pow(2) * Rational(9) + SPoly::var(3));
    SMonomial q;
    EXPECT_TRUE(SMonomial::divide(SMonomial::var(2, 3) * SMonomial::var(5), SMonomial::var(2), q));
    EXPECT_EQ(q, SMonomial::var(2, 2) * SMonomial::var(5));
    EXPECT_FALSE(SMonomial::divide(SMonomial::var(2), SMonomial::var(3), q));
}

namespace {
SPoly random_spoly(std::mt19937_64& rng) {
    SPoly p;
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        SMonomial m;
        for (int v : {2, 3, 5})
            if (rng() % 2) m = m * SMonomial::var(v, 1 + static_cast<int>(rng() % 2));
        p += SPoly(m, Rational(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5)));
    }
    return p;
}
}  // namespace

TEST(SPoly, RingAxiomsRandomized) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        SPoly a = random_spoly(rng), b = random_spoly(rng), c = random_spoly(rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(MPoly, WeightedDegree) {
    Grading g(6, 13);
    EXPECT_EQ((MPoly::s(16) * MPoly::x(7) * MPoly::y(4)).weighted_degree(g), 78);
    EXPECT_EQ((MPoly::x(7) * MPoly::y(4)).weighted_degree(g), 94);
    EXPECT_EQ(MPoly(Rational(1)).weighted_degree(g), 0);
    EXPECT_EQ((MPoly::s(2) * MPoly::x(9) * MPoly::y(2)).weighted_degree(g), 78);
    EXPECT_EQ((MPoly::x() + MPoly::y()).weighted_degree(g), MPoly::kInhomogeneous);
}

TEST(MPoly, GradingAdditive) {
    Grading g(6, 13);
    MPoly a = MPoly::x(2) * MPoly::s(3) + MPoly::y() * MPoly::s(4) * Rational(-2, 3) + MPoly::p(1) * MPoly::x(1) * MPoly::s(4) * Rational(3);
    MPoly b = MPoly::y(2) + MPoly::x(5) * MPoly::s(4) * Rational(5);
    ASSERT_NE(a.weighted_degree(g), MPoly::kInhomogeneous);
    EXPECT_EQ((a * b).weighted_degree(g), a.weighted_degree(g) + b.weighted_degree(g));
}

TEST(MPoly, DerivativeAndSubstitution) {
    MPoly f = MPoly::y(6) + MPoly::x(13);
    EXPECT_EQ(f.derivative(static_cast<int>(Var::x)), MPoly::x(12) * Rational(13));
    // x -> -t^6, y -> t^13 with p standing in for t.
    MPoly t = MPoly::p();
    MPoly g = f.substitute(static_cast<int>(Var::y), t.pow(13)).substitute(static_cast<int>(Var::x), -t.pow(6));
    EXPECT_TRUE(g.is_zero());
}

TEST(MPoly, ParseRoundTrip) {
    Grading g(6, 13);
    MPoly F = MPoly::y(6) + MPoly::x(13) + MPoly::s(2) * MPoly::x(9) * MPoly::y(2) * Rational(-58, 39) +
              MPoly::s(10) * MPoly::s(2).pow(2) * MPoly::p(2);
    EXPECT_EQ(MPoly::parse(F.str(g)), F);
    EXPECT_THROW(MPoly::parse("x^^2"), std::invalid_argument);
    EXPECT_THROW(MPoly::parse("3*q"), std::invalid_argument);
}

TEST(TSeries, PrecisionIsTrackedAndEnforced) {
    SRing ring;
    TSeries<SRing> a(ring, 2, 10), b(ring, 3, 8);
    a.at(2) = SPoly(1);
    b.at(3) = SPoly(1);
    auto c = a * b;
    EXPECT_EQ(c.lo(), 5);
    EXPECT_EQ(c.precision(), 10);  // min(10 + 3, 8 + 2)
}

TEST(TSeries, AccessBeyondPrecisionThrows) {
    QRing ring;
    TSeries<QRing> a(ring, 0, 5);
    a.at(0) = Rational(1);
    EXPECT_THROW(a[5], PrecisionError);
    EXPECT_THROW(a.at(7), PrecisionError);
    auto b = a + a.shifted(3);
    EXPECT_EQ(b.precision(), 5);
    EXPECT_EQ(b[3], Rational(1));
    EXPECT_THROW(b[6], PrecisionError);
}
