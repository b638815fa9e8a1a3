#include <dualroots/bipoly.hpp>
#include <dualroots/sturm.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace dualroots;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

UniPoly zpoly(std::vector<Rational> c) { return UniPoly(std::move(c), Var::Z); }

Rational random_rational(std::mt19937& rng, int num_span = 40, int den_max = 9)
{
    std::uniform_int_distribution<int> num(-num_span, num_span);
    std::uniform_int_distribution<int> den(1, den_max);
    return q(num(rng), den(rng));
}

UniPoly random_poly(std::mt19937& rng, int degree)
{
    std::vector<Rational> c;
    for (int i = 0; i <= degree; ++i)
        c.push_back(random_rational(rng));
    if (sgn(c.back()) == 0)
        c.back() = 1;
    return zpoly(c);
}

} // namespace

// ---------------------------------------------------------------------------
// Rational

TEST(Rational, ParsesFractionsDecimalsAndExponentsExactly)
{
    EXPECT_EQ(parse_rational("3/6"), q(1, 2));
    EXPECT_EQ(parse_rational("-7/4"), q(-7, 4));
    EXPECT_EQ(parse_rational("0.1"), q(1, 10));
    EXPECT_EQ(parse_rational("-1.25"), q(-5, 4));
    EXPECT_EQ(parse_rational("1e-20"), ten_to_minus(20));
    EXPECT_EQ(parse_rational("2.5e3"), q(2500));
    EXPECT_EQ(parse_rational(" 5 "), q(5));
}

TEST(Rational, LeadingZerosAreDecimal)
{
    EXPECT_EQ(parse_rational("0.666667"), q(666667, 1000000));
    EXPECT_EQ(parse_rational("0.0898"), q(898, 10000));
    EXPECT_EQ(parse_rational("010/3"), q(10, 3));
    EXPECT_EQ(parse_rational("-09"), q(-9));
}

TEST(Rational, RejectsNonExactText)
{
    for (const char* bad : {"", "abc", "1/0", "0.1.2", "1/2/3", "nan", "inf", "1.5f", "--1"})
        EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, DirectedDecimalsRoundOutward)
{
    const Rational third = q(1, 3);
    EXPECT_EQ(to_decimal_directed(third, 5, false), "0.33333");
    EXPECT_EQ(to_decimal_directed(third, 5, true), "0.33334");
    EXPECT_EQ(to_decimal_directed(-third, 5, false), "-0.33334");
    EXPECT_EQ(to_decimal_directed(-third, 5, true), "-0.33333");
    EXPECT_EQ(to_decimal_directed(q(1, 4), 5, true), "0.25000");
}

TEST(Rational, DyadicHelpers)
{
    EXPECT_TRUE(is_dyadic(q(3, 8)));
    EXPECT_FALSE(is_dyadic(q(1, 3)));
    EXPECT_EQ(power_of_two_at_least(q(5)), q(8));
    EXPECT_EQ(power_of_two_at_least(q(1, 3)), q(1, 2));
    EXPECT_EQ(factorial(6), Integer(720));
}

// ---------------------------------------------------------------------------
// UniPoly

TEST(UniPoly, TrimsAndReportsDegree)
{
    EXPECT_EQ(zpoly({1, 2, 0, 0}).degree(), 1);
    EXPECT_TRUE(zpoly({0, 0}).is_zero());
    EXPECT_EQ(UniPoly::from_roots({q(1), q(-2)}), zpoly({-2, 1, 1}));
}

TEST(UniPoly, DerivativeShiftAndReflection)
{
    const UniPoly p = zpoly({1, -3, 0, 2}); // 2z^3 - 3z + 1
    EXPECT_EQ(p.derivative(), zpoly({-3, 0, 6}));
    EXPECT_EQ(p.derivative(3), zpoly({12}));
    EXPECT_TRUE(p.derivative(4).is_zero());
    const UniPoly s = p.shifted(q(1)); // p(z + 1)
    for (int t = -3; t <= 3; ++t)
        EXPECT_EQ(s(q(t)), p(q(t + 1)));
    EXPECT_EQ(p.reflected()(q(2)), p(q(-2)));
}

TEST(UniPoly, DivisionIdentityHoldsForRandomPolynomials)
{
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 60; ++trial) {
        const UniPoly a = random_poly(rng, 1 + trial % 7);
        const UniPoly b = random_poly(rng, trial % 4);
        const auto [quo, rem] = UniPoly::divmod(a, b);
        EXPECT_EQ(quo * b + rem, a);
        EXPECT_LT(rem.degree(), b.degree() == 0 ? 0 : b.degree());
    }
}

TEST(UniPoly, ExactDivisionRejectsRemainder)
{
    EXPECT_EQ(UniPoly::divide_exact(zpoly({-1, 0, 1}), zpoly({1, 1})), zpoly({-1, 1}));
    EXPECT_THROW(UniPoly::divide_exact(zpoly({1, 0, 1}), zpoly({1, 1})), std::logic_error);
}

TEST(UniPoly, ZeroMultiplicity)
{
    EXPECT_EQ(zpoly({0, 0, 3, 1}).zero_multiplicity(), 2);
    EXPECT_EQ(zpoly({1, 1}).zero_multiplicity(), 0);
}

// ---------------------------------------------------------------------------
// BiPoly

TEST(BiPoly, SpecializeAndDifferentiateCommute)
{
    std::mt19937 rng(7);
    BiPoly p;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 3; ++j)
            p.add_term(i, j, random_rational(rng));
    for (int trial = 0; trial < 20; ++trial) {
        const Rational x0 = random_rational(rng);
        const Rational z0 = random_rational(rng);
        EXPECT_EQ(p.differentiate(Var::Z).specialize(Var::X, x0), p.specialize(Var::X, x0).derivative());
        EXPECT_EQ(p.differentiate(Var::X).specialize(Var::Z, z0), p.specialize(Var::Z, z0).derivative());
        EXPECT_EQ(p.specialize(Var::X, x0)(z0), p(x0, z0));
    }
}

TEST(BiPoly, ArithmeticMatchesPointEvaluation)
{
    std::mt19937 rng(11);
    const BiPoly a = BiPoly::term(q(2), 2, 1) + BiPoly::x() - BiPoly::constant(q(3, 2));
    const BiPoly b = BiPoly::z() * BiPoly::z() + BiPoly::term(q(-1, 3), 1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const Rational x0 = random_rational(rng);
        const Rational z0 = random_rational(rng);
        EXPECT_EQ((a * b)(x0, z0), a(x0, z0) * b(x0, z0));
        EXPECT_EQ((a - b)(x0, z0), a(x0, z0) - b(x0, z0));
        EXPECT_EQ(a.shift_z(q(1))(x0, z0), a(x0, z0 + 1));
        EXPECT_EQ(a.reflect_x()(x0, z0), a(-x0, z0));
    }
}

TEST(BiPoly, DivisionByZFactor)
{
    const UniPoly d = UniPoly::from_roots({q(0), q(-1)}, Var::Z);
    const BiPoly quo = BiPoly::x() + BiPoly::z();
    const auto [qq, r] = (quo * d).divmod_z(d);
    EXPECT_EQ(qq, quo);
    EXPECT_TRUE(r.is_zero());
}

// ---------------------------------------------------------------------------
// Sturm and squarefree

TEST(Sturm, CountsDistinctRealRoots)
{
    EXPECT_EQ(sturm_count(zpoly({-1, 1, 1})), 2);
    EXPECT_EQ(sturm_count(zpoly({1, 0, 1})), 0);
    EXPECT_EQ(sturm_count(zpoly({-1, 1, 1}), q(0), q(1)), 1);
    EXPECT_EQ(sturm_count(zpoly({-1, 1, 1}), q(-2), q(0)), 1);
}

TEST(Sturm, HalfOpenIntervalsIncludeRightEndpoint)
{
    const UniPoly p = UniPoly::from_roots({q(1), q(2)});
    EXPECT_EQ(sturm_count(p, q(1), q(2)), 1);
    EXPECT_EQ(sturm_count(p, q(0), q(1)), 1);
    EXPECT_EQ(sturm_count(p, q(0), q(2)), 2);
}

TEST(Sturm, RepeatedRootsCountOnce)
{
    const UniPoly p = UniPoly::from_roots({q(-1), q(-1), q(3), q(3), q(3), q(1, 2)});
    EXPECT_EQ(sturm_count(p), 3);
    EXPECT_EQ(sturm_count(p, q(-2), q(0)), 1);
}

TEST(Squarefree, ProfileOfKnownFactorization)
{
    // z (z - 1)^3 (z + 2)^2
    const UniPoly p = UniPoly::from_roots({q(0), q(1), q(1), q(1), q(-2), q(-2)});
    const SquarefreeDecomposition sq = squarefree_part(p);
    EXPECT_EQ(sq.part, UniPoly::from_roots({q(0), q(1), q(-2)}));
    EXPECT_FALSE(sq.all_simple());
    ASSERT_EQ(sq.factors.size(), 3u);
    EXPECT_EQ(sq.factors[0], UniPoly::from_roots({q(0)}));
    EXPECT_EQ(sq.factors[1], UniPoly::from_roots({q(-2)}));
    EXPECT_EQ(sq.factors[2], UniPoly::from_roots({q(1)}));
    EXPECT_EQ(real_root_count_with_multiplicity(sq), 6);
}

TEST(Squarefree, NonMonicInputTerminates)
{
    const UniPoly p = UniPoly::from_roots({q(1, 3), q(1, 3), q(5)}) * q(-7, 2);
    const SquarefreeDecomposition sq = squarefree_part(p);
    EXPECT_EQ(sq.part, UniPoly::from_roots({q(1, 3), q(5)}));
    EXPECT_EQ(real_root_count_with_multiplicity(sq), 3);
}

TEST(Squarefree, RandomProductsRecoverMultiplicities)
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rational> distinct;
        std::vector<Rational> all;
        std::uniform_int_distribution<int> mult(1, 3);
        const int k = 1 + trial % 4;
        while (static_cast<int>(distinct.size()) < k) {
            const Rational r = random_rational(rng, 12, 5);
            if (std::find(distinct.begin(), distinct.end(), r) != distinct.end())
                continue;
            distinct.push_back(r);
            for (int m = mult(rng); m > 0; --m)
                all.push_back(r);
        }
        // an irreducible quadratic contributes no real roots
        const UniPoly p = UniPoly::from_roots(all) * zpoly({2, 0, 1});
        const SquarefreeDecomposition sq = squarefree_part(p);
        EXPECT_EQ(sturm_count(p), k);
        EXPECT_EQ(real_root_count_with_multiplicity(sq), static_cast<int>(all.size()));
    }
}

TEST(Gcd, IsMonicCommonFactor)
{
    const UniPoly a = UniPoly::from_roots({q(1), q(2), q(3)}) * q(4);
    const UniPoly b = UniPoly::from_roots({q(2), q(3), q(-5)}) * q(-1, 3);
    EXPECT_EQ(gcd(a, b), UniPoly::from_roots({q(2), q(3)}));
}
