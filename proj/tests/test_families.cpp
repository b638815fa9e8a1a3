#include <dualroots/families.hpp>
#include <dualroots/parallel.hpp>
#include <dualroots/veritas.hpp>

#include <gtest/gtest.h>

#include <random>
#include <tuple>

using namespace dualroots;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

using Terms = std::vector<std::tuple<int, int, Rational>>;

/// Builds a BiPoly from (x-power, z-power, coefficient) triples.
BiPoly from_terms(const Terms& terms)
{
    BiPoly p;
    for (const auto& [i, j, c] : terms)
        p.add_term(i, j, c);
    return p;
}

Rational random_rational(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-30, 30);
    std::uniform_int_distribution<int> den(1, 11);
    return q(num(rng), den(rng));
}

} // namespace

// Expected expansions below were produced by the sympy oracle in tests/oracle.

TEST(Laguerre, DegreeTwoExpansion)
{
    // x^2/2 - (z+2)x + (z+1)(z+2)/2
    const BiPoly expected = from_terms({{2, 0, q(1, 2)}, {1, 1, q(-1)}, {1, 0, q(-2)}, {0, 2, q(1, 2)}, {0, 1, q(3, 2)}, {0, 0, q(1)}});
    EXPECT_EQ(laguerre(2), expected);
}

TEST(Laguerre, OracleExpansions)
{
    EXPECT_EQ(laguerre(3), from_terms({{3, 0, q(-1, 6)}, {2, 1, q(1, 2)}, {2, 0, q(3, 2)}, {1, 2, q(-1, 2)}, {1, 1, q(-5, 2)},
                                       {1, 0, q(-3)}, {0, 3, q(1, 6)}, {0, 2, q(1)}, {0, 1, q(11, 6)}, {0, 0, q(1)}}));
    EXPECT_EQ(laguerre(4), from_terms({{4, 0, q(1, 24)}, {3, 1, q(-1, 6)}, {3, 0, q(-2, 3)}, {2, 2, q(1, 4)}, {2, 1, q(7, 4)},
                                       {2, 0, q(3)}, {1, 3, q(-1, 6)}, {1, 2, q(-3, 2)}, {1, 1, q(-13, 3)}, {1, 0, q(-4)},
                                       {0, 4, q(1, 24)}, {0, 3, q(5, 12)}, {0, 2, q(35, 24)}, {0, 1, q(25, 12)}, {0, 0, q(1)}}));
}

TEST(Gegenbauer, OracleExpansions)
{
    EXPECT_EQ(gegenbauer(3), from_terms({{3, 3, q(4, 3)}, {3, 2, q(4)}, {3, 1, q(8, 3)}, {1, 2, q(-2)}, {1, 1, q(-2)}}));
    EXPECT_EQ(gegenbauer(4), from_terms({{4, 4, q(2, 3)}, {4, 3, q(4)}, {4, 2, q(22, 3)}, {4, 1, q(4)}, {2, 3, q(-2)},
                                         {2, 2, q(-6)}, {2, 1, q(-4)}, {0, 2, q(1, 2)}, {0, 1, q(1, 2)}}));
}

TEST(GegenbauerModified, OracleExpansions)
{
    EXPECT_EQ(gegenbauer_modified(1), from_terms({{1, 1, q(1)}, {1, 0, q(1, 2)}}));
    EXPECT_EQ(gegenbauer_modified(3), from_terms({{3, 3, q(1, 6)}, {3, 2, q(1)}, {3, 1, q(47, 24)}, {3, 0, q(5, 4)},
                                                  {1, 2, q(-1, 4)}, {1, 1, q(-1)}, {1, 0, q(-15, 16)}}));
    EXPECT_EQ(gegenbauer_modified(4), from_terms({{4, 4, q(1, 24)}, {4, 3, q(11, 24)}, {4, 2, q(179, 96)}, {4, 1, q(319, 96)},
                                                  {4, 0, q(35, 16)}, {2, 3, q(-1, 8)}, {2, 2, q(-1)}, {2, 1, q(-83, 32)},
                                                  {2, 0, q(-35, 16)}, {0, 2, q(1, 32)}, {0, 1, q(3, 16)}, {0, 0, q(35, 128)}}));
}

TEST(GegenbauerTilde, DegreeTwoIsClosedForm)
{
    const TildeDecomposition t = gegenbauer_tilde(2);
    EXPECT_EQ(t.constant_roots, std::vector<Rational>{q(0)});
    // 2(z+1)x^2 - 1
    EXPECT_EQ(t.reduced, from_terms({{2, 1, q(2)}, {2, 0, q(2)}, {0, 0, q(-1)}}));
}

TEST(GegenbauerTilde, FactorizationHoldsExactly)
{
    for (int n = 1; n <= 12; ++n) {
        const TildeDecomposition t = gegenbauer_tilde(n);
        EXPECT_EQ(static_cast<int>(t.constant_roots.size()), (n + 1) / 2);
        EXPECT_EQ(t.reduced.z_degree(), n / 2) << n;
        EXPECT_EQ(t.constant_factor() * t.reduced, gegenbauer(n)) << n;
        EXPECT_EQ(t.reduced.slice(Var::Z, n / 2), t.leading_x_coeff) << n;
    }
}

TEST(GegenbauerModified, FactorRuleAgainstReduced)
{
    for (int n = 1; n <= 10; ++n) {
        const ModifiedFactorRule m = modified_factor_rule(n);
        EXPECT_EQ(static_cast<int>(m.extra_constant_roots.size()), n - n / 2);
        EXPECT_EQ(m.factor() * gegenbauer_tilde(n).reduced, gegenbauer_modified(n)) << n;
    }
}

TEST(Charlier, SmallClosedForms)
{
    EXPECT_EQ(charlier(1, q(1)), UniPoly({q(1), q(-1)}, Var::Z));
    // 1 - 5/4 z + z^2/4
    EXPECT_EQ(charlier(2, q(2)), UniPoly({q(1), q(-5, 4), q(1, 4)}, Var::Z));
    EXPECT_EQ(charlier(0, q(3)), UniPoly::constant(1, Var::Z));
    EXPECT_THROW(charlier(2, q(0)), std::domain_error);
    EXPECT_THROW(charlier(2, q(-1)), std::domain_error);
}

TEST(DzFamily, LaguerreDerivatives)
{
    // d/dz L_2 = -x + z + 3/2
    EXPECT_EQ(dz_family({FamilyKind::Laguerre, 2}, 1), from_terms({{1, 0, q(-1)}, {0, 1, q(1)}, {0, 0, q(3, 2)}}));
    for (int n = 0; n <= 8; ++n)
        EXPECT_TRUE(dz_family({FamilyKind::Laguerre, n}, n + 1).is_zero()) << n;
    EXPECT_THROW(dz_family({FamilyKind::Laguerre, 2}, -1), std::invalid_argument);
}

TEST(DzFamily, ModifiedKeepsFullXDegreeWithPositiveLead)
{
    const BiPoly d = dz_family({FamilyKind::GegenbauerModified, 4}, 1);
    EXPECT_EQ(d.x_degree(), 4);
    const UniPoly lead = d.slice(Var::X, 4);
    for (const Rational& z0 : {Rational(q(-1, 2) + q(1, 1000)), q(0), q(3, 2), q(10)})
        EXPECT_GT(sgn(lead(z0)), 0) << to_string(z0);
}

TEST(Parity, GegenbauerFamiliesHaveSingleXParity)
{
    for (int n = 0; n <= 10; ++n) {
        for (const BiPoly* p : {&gegenbauer(n), &gegenbauer_modified(n)})
            for (const auto& [e, c] : p->terms())
                EXPECT_EQ(e.first % 2, n % 2) << n;
    }
}

TEST(Ode, ResiduesVanishAtRandomPoints)
{
    std::mt19937 rng(1234);
    for (int n = 0; n <= 8; ++n) {
        const BiPoly& L = laguerre(n);
        const BiPoly& G = gegenbauer(n);
        const BiPoly Lx = L.differentiate(Var::X);
        const BiPoly Lxx = L.differentiate(Var::X, 2);
        const BiPoly Gx = G.differentiate(Var::X);
        const BiPoly Gxx = G.differentiate(Var::X, 2);
        for (int trial = 0; trial < 20; ++trial) {
            const Rational x0 = random_rational(rng);
            const Rational z0 = random_rational(rng);
            EXPECT_EQ(x0 * Lxx(x0, z0) + (z0 + 1 - x0) * Lx(x0, z0) + n * L(x0, z0), 0) << n;
            EXPECT_EQ((1 - x0 * x0) * Gxx(x0, z0) - (2 * z0 + 1) * x0 * Gx(x0, z0) + n * (n + 2 * z0) * G(x0, z0), 0) << n;
        }
    }
}

TEST(Identities, AllVanishForSmallDegrees)
{
    for (int n = 1; n <= 8; ++n)
        for (const auto& r : exact_identities(n))
            EXPECT_TRUE(r.passed()) << r.name << " n=" << n << ": " << r.residue.to_string();
}

TEST(Cache, ReturnsOneSharedInstanceUnderConcurrency)
{
    std::vector<int> items(32, 11);
    const auto addresses = parallel_map(items, [](int n) { return &family({FamilyKind::GegenbauerModified, n}); }, 8);
    for (const auto* a : addresses)
        EXPECT_EQ(a, addresses.front());
    EXPECT_EQ(*addresses.front(), build_gegenbauer_modified(11));
}

TEST(Limits, DegreeCapAndOptIn)
{
    EXPECT_THROW(family({FamilyKind::Laguerre, kDefaultMaxDegree + 1}), std::out_of_range);
    EXPECT_EQ(family({FamilyKind::Laguerre, kDefaultMaxDegree + 1}, true).x_degree(), kDefaultMaxDegree + 1);
    allow_large_degrees(true);
    EXPECT_NO_THROW(family({FamilyKind::Laguerre, kDefaultMaxDegree + 1}));
    allow_large_degrees(false);
    EXPECT_THROW(family({FamilyKind::Laguerre, kDefaultMaxDegree + 1}), std::out_of_range);
}

TEST(Names, RoundTrip)
{
    for (auto k : {FamilyKind::Laguerre, FamilyKind::Gegenbauer, FamilyKind::GegenbauerModified, FamilyKind::GegenbauerTilde,
                   FamilyKind::Charlier})
        EXPECT_EQ(parse_family(family_name(k)), k);
    EXPECT_THROW(parse_family("jacobi"), std::invalid_argument);
}
