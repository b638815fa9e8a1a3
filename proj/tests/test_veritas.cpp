#include <dualroots/grid.hpp>
#include <dualroots/report_json.hpp>

#include <gtest/gtest.h>

using namespace dualroots;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

UniPoly roots_at(std::vector<Rational> r) { return UniPoly::from_roots(r, Var::Z); }

} // namespace

// ---------------------------------------------------------------------------
// Interlacing primitive

TEST(Interlacing, StrictWeakAndFailing)
{
    const auto strict = check_interlacing(roots_at({q(1), q(3)}), roots_at({q(2)}), InterlaceMode::Strict);
    EXPECT_EQ(strict.verdict, InterlaceVerdict::StrictInterlace);
    EXPECT_TRUE(strict.passed());

    const auto weak = check_interlacing(roots_at({q(1), q(3)}), roots_at({q(1)}), InterlaceMode::Strict);
    EXPECT_EQ(weak.verdict, InterlaceVerdict::WeakInterlace);
    EXPECT_FALSE(weak.passed());
    EXPECT_EQ(weak.shared_roots.size(), 1u);
    EXPECT_TRUE(check_interlacing(roots_at({q(1), q(3)}), roots_at({q(1)}), InterlaceMode::Weak).passed());

    const auto bad = check_interlacing(roots_at({q(1), q(2)}), roots_at({q(3)}), InterlaceMode::Weak);
    EXPECT_EQ(bad.verdict, InterlaceVerdict::Fail);
    ASSERT_TRUE(bad.witness);
    EXPECT_EQ(bad.witness->relation, RootOrdering::Less);
    EXPECT_EQ(bad.outcome(), Outcome::Fail);
}

TEST(Interlacing, EqualDegreesTryBothChainOrders)
{
    // q = 0, 2 ; p = 1, 3 -> p1 > q1 > p2 > q2
    EXPECT_EQ(check_interlacing(roots_at({q(1), q(3)}), roots_at({q(0), q(2)}), InterlaceMode::Strict).verdict,
              InterlaceVerdict::StrictInterlace);
    const auto r = check_interlacing(roots_at({q(0), q(2)}), roots_at({q(1), q(3)}), InterlaceMode::Strict);
    EXPECT_EQ(r.verdict, InterlaceVerdict::StrictInterlace);
    EXPECT_FALSE(r.p_first);
}

TEST(Interlacing, IrrationalRootsAreSeparatedByRefinement)
{
    // sqrt 2 vs 1.41421356237 (rational just below)
    const UniPoly p = UniPoly({q(-2), q(0), q(1)}, Var::Z);
    const UniPoly qq = roots_at({parse_rational("1.41421356237")});
    EXPECT_EQ(check_interlacing(p, qq, InterlaceMode::Strict).verdict, InterlaceVerdict::StrictInterlace);
    const UniPoly qq2 = roots_at({parse_rational("1.41421356238")});
    EXPECT_EQ(check_interlacing(p, qq2, InterlaceMode::Strict).verdict, InterlaceVerdict::Fail);
}

TEST(Interlacing, PreconditionsAreEnforced)
{
    EXPECT_THROW(check_interlacing(UniPoly({q(1), q(0), q(1)}, Var::Z), roots_at({q(0)}), InterlaceMode::Strict), NotRealRooted);
    EXPECT_THROW(check_interlacing(roots_at({q(1), q(2), q(3)}), roots_at({q(0)}), InterlaceMode::Strict), std::invalid_argument);
}

TEST(Interlacing, PositiveFilterCountsOnlyPositiveRoots)
{
    const auto r = check_interlacing(roots_at({q(-5), q(0), q(1), q(4)}), roots_at({q(-1), q(2)}), InterlaceMode::Strict,
                                     RootFilter::Positive);
    EXPECT_EQ(r.verdict, InterlaceVerdict::StrictInterlace);
}

// ---------------------------------------------------------------------------
// Real-rootedness

TEST(RealRootedness, LaguerreAndGegenbauerFamilies)
{
    for (int n = 1; n <= 10; ++n) {
        for (const Rational& x0 : {q(0), q(1, 2), q(1), q(2), q(5)})
            EXPECT_EQ(verify_realrootedness({FamilyKind::Laguerre, n}, x0).outcome(), Outcome::Pass) << n;
        for (const Rational& x0 : support_grid()) {
            const auto g = verify_realrootedness({FamilyKind::Gegenbauer, n}, x0);
            EXPECT_EQ(g.outcome(), Outcome::Pass) << n << " " << to_string(x0) << " " << g.problem;
            EXPECT_LE(g.max_multiplicity, 2);
            const auto h = verify_realrootedness({FamilyKind::GegenbauerModified, n}, x0);
            EXPECT_EQ(h.outcome(), Outcome::Pass) << n << " " << to_string(x0) << " " << h.problem;
            EXPECT_TRUE(h.all_simple);
        }
    }
}

TEST(RealRootedness, DomainErrors)
{
    EXPECT_THROW(verify_realrootedness({FamilyKind::Laguerre, 3}, q(-1)), std::domain_error);
    EXPECT_THROW(verify_realrootedness({FamilyKind::Gegenbauer, 3}, q(0)), std::domain_error);
    EXPECT_THROW(verify_realrootedness({FamilyKind::GegenbauerModified, 3}, q(5, 4)), std::domain_error);
}

// ---------------------------------------------------------------------------
// Dual and classical interlacing

TEST(DualInterlacing, HoldsOnSupportGrid)
{
    for (int n = 1; n <= 7; ++n)
        for (const Rational& x0 : support_grid())
            for (const auto& r : verify_dual_interlacing(n, x0))
                EXPECT_TRUE(r.passed()) << r.theorem_id << " " << r.label << " n=" << n << " x0=" << to_string(x0) << " "
                                        << interlace_verdict_name(r.verdict) << " " << r.note;
}

TEST(DualInterlacing, ModifiedIsStrictAfterRemovingSharedConstants)
{
    const auto reports = verify_dual_interlacing(6, q(-3, 8));
    ASSERT_EQ(reports.size(), 8u);
    int strict = 0;
    for (const auto& r : reports)
        if (r.theorem_id == "cor-dualinterlGmod" && r.mode == InterlaceMode::Strict) {
            EXPECT_EQ(r.verdict, InterlaceVerdict::StrictInterlace) << r.label;
            ++strict;
        }
    EXPECT_EQ(strict, 2);
}

TEST(DualInterlacing, DegenerateAtZeroAndDomain)
{
    for (const auto& r : verify_dual_interlacing(4, q(0)))
        EXPECT_EQ(r.verdict, InterlaceVerdict::DegenerateAtZero);
    EXPECT_THROW(verify_dual_interlacing(4, q(3, 2)), std::domain_error);
}

TEST(DualInterlacing, SharedConstantLedger)
{
    EXPECT_EQ(constant_z_roots(FamilyKind::Gegenbauer, 5), (std::vector<Rational>{q(0), q(-1), q(-2)}));
    EXPECT_EQ(constant_z_roots(FamilyKind::GegenbauerModified, 4), (std::vector<Rational>{q(-5, 2), q(-7, 2)}));
}

TEST(ClassicalInterlacing, InXAtFixedZ)
{
    for (int n = 1; n <= 8; ++n) {
        for (const Rational& z0 : {q(0), q(1, 2), q(1)})
            for (const auto& r : verify_classical_x_interlacing({FamilyKind::Laguerre, n}, z0))
                EXPECT_TRUE(r.passed()) << r.label;
        for (const Rational& z0 : {q(1, 2), q(1)})
            for (const auto& r : verify_classical_x_interlacing({FamilyKind::Gegenbauer, n}, z0))
                EXPECT_TRUE(r.passed()) << r.label;
    }
    EXPECT_THROW(verify_classical_x_interlacing({FamilyKind::Laguerre, 3}, q(-1)), std::domain_error);
    EXPECT_THROW(verify_classical_x_interlacing({FamilyKind::Gegenbauer, 3}, q(0)), std::domain_error);
}

TEST(GammaChains, ReducedFamiliesInterlace)
{
    for (int n = 3; n <= 8; ++n)
        for (const Rational& x : support_grid())
            for (const auto& r : verify_gamma_chains(n, x))
                EXPECT_TRUE(r.passed()) << r.label << " x=" << to_string(x);
}

// ---------------------------------------------------------------------------
// Monotonicity

TEST(Monotonicity, LaguerreRootsIncreaseInZ)
{
    const auto grid = parse_grid("0,1/2,1,2");
    for (int n = 1; n <= 10; ++n)
        for (const auto& r : verify_root_monotonicity({FamilyKind::Laguerre, n}, Var::Z, grid, {}, Direction::Increasing)) {
            EXPECT_EQ(r.verdict, MonotonicityVerdict::Increasing) << n;
            EXPECT_EQ(r.theorem_id, "thm-monoroots");
        }
}

TEST(Monotonicity, ModifiedPositiveRootsDecreaseInZ)
{
    const auto grid = parse_grid("0,1/2,1,2");
    for (int n = 2; n <= 10; ++n) {
        const auto reports = verify_root_monotonicity({FamilyKind::GegenbauerModified, n}, Var::Z, grid,
                                                      {RootFilter::Positive, false}, Direction::Decreasing);
        EXPECT_EQ(static_cast<int>(reports.size()), n / 2);
        for (const auto& r : reports)
            EXPECT_EQ(r.verdict, MonotonicityVerdict::Decreasing) << n;
    }
}

TEST(Monotonicity, MovingRootsOnBothSides)
{
    for (int n = 2; n <= 10; ++n) {
        for (const auto& r : verify_gamma_monotonicity(n, parse_grid("dyadic:[-1,0):9")))
            EXPECT_EQ(r.verdict, MonotonicityVerdict::Increasing) << n;
        for (const auto& r : verify_gamma_monotonicity(n, parse_grid("dyadic:(0,1]:9")))
            EXPECT_EQ(r.verdict, MonotonicityVerdict::Decreasing) << n;
    }
    EXPECT_THROW(verify_gamma_monotonicity(4, parse_grid("-1/2,1/2")), std::domain_error);
}

TEST(Monotonicity, WrongExpectationFailsWithWitness)
{
    const auto r = verify_root_monotonicity({FamilyKind::Laguerre, 3}, Var::Z, parse_grid("0,1"), {}, Direction::Decreasing);
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r[0].outcome(), Outcome::Fail);
    EXPECT_EQ(r[0].verdict, MonotonicityVerdict::Increasing);
    ASSERT_TRUE(r[0].witness);
    EXPECT_EQ(*r[0].witness, 0u);
}

// ---------------------------------------------------------------------------
// Derivative families

TEST(DerivativeFamily, LaguerreProfile)
{
    const auto rep = verify_derivative_family({FamilyKind::Laguerre, 4}, q(0));
    EXPECT_EQ(rep.outcome(), Outcome::Pass);
    ASSERT_EQ(rep.entries.size(), 5u);
    for (const auto& e : rep.entries)
        EXPECT_EQ(e.degree, 4 - e.k);
    for (int n = 1; n <= 8; ++n)
        for (const Rational& z0 : {q(0), q(1)})
            EXPECT_EQ(verify_derivative_family({FamilyKind::Laguerre, n}, z0).outcome(), Outcome::Pass) << n;
}

TEST(DerivativeFamily, ModifiedProfileAndZeroLedger)
{
    EXPECT_EQ(expected_positive_roots(5, 0), 2);
    EXPECT_EQ(expected_positive_roots(5, 4), 1);
    EXPECT_EQ(expected_zero_multiplicity(5, 0), 1);
    EXPECT_EQ(expected_zero_multiplicity(5, 4), 3);
    EXPECT_EQ(expected_zero_multiplicity(6, 5), 4);
    for (int n = 1; n <= 8; ++n)
        for (const Rational& z0 : {q(0), q(1, 2), q(1)}) {
            const auto rep = verify_derivative_family({FamilyKind::GegenbauerModified, n}, z0);
            EXPECT_EQ(rep.outcome(), Outcome::Pass) << n << " " << to_string(z0);
            for (const auto& e : rep.entries) {
                EXPECT_EQ(e.positive_roots, e.expected_positive_roots);
                EXPECT_EQ(e.zero_multiplicity, e.expected_zero_multiplicity);
            }
        }
}

TEST(DerivativeFamily, DomainErrors)
{
    EXPECT_THROW(verify_derivative_family({FamilyKind::Laguerre, 3}, q(-1)), std::domain_error);
    EXPECT_THROW(verify_derivative_family({FamilyKind::GegenbauerModified, 3}, q(-1, 2)), std::domain_error);
    EXPECT_THROW(verify_derivative_family({FamilyKind::Gegenbauer, 3}, q(1)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Laguerre inequality

TEST(LaguerreInequality, NegativeOnGrid)
{
    const auto grid = parse_grid("-7/2,-1/3,0,1/2,3");
    for (int n = 1; n <= 8; ++n)
        for (const Rational& x0 : {q(0), q(1), q(2)}) {
            const auto r = laguerre_inequality_check(laguerre(n).specialize(Var::X, x0), grid);
            EXPECT_EQ(r.outcome(), Outcome::Pass) << n;
            for (const auto& v : r.values)
                EXPECT_LT(sgn(v), 0);
        }
}

TEST(LaguerreInequality, DoubleRootTouchesZero)
{
    const auto r = laguerre_inequality_check(roots_at({q(1), q(1), q(3)}), {q(1)});
    EXPECT_TRUE(r.multiple_root_case);
    EXPECT_EQ(sgn(r.values[0]), 0);
    EXPECT_EQ(r.outcome(), Outcome::Pass);
    EXPECT_THROW(laguerre_inequality_check(UniPoly({q(1), q(0), q(1)}, Var::Z), {q(0)}), NotRealRooted);
}

// ---------------------------------------------------------------------------
// Charlier orthogonality

TEST(Charlier, UnitNormAtOne)
{
    const auto r = charlier_orthogonality(1, 1, q(1), ten_to_minus(20));
    EXPECT_EQ(r.verdict, Outcome::Pass);
    EXPECT_EQ(r.target, q(1));
    EXPECT_LE(abs(r.partial_sum - 1), Float("1e-20"));
}

TEST(Charlier, OrthogonalityGrid)
{
    for (const Rational& x0 : {q(1), q(2), q(5, 2)})
        for (int n = 0; n <= 6; ++n)
            for (int m = 0; m <= 6; ++m) {
                const auto r = charlier_orthogonality(n, m, x0, ten_to_minus(20));
                EXPECT_EQ(r.verdict, Outcome::Pass) << n << " " << m << " " << to_string(x0);
                EXPECT_LE(r.tail_bound, ten_to_minus(20));
            }
}

TEST(Charlier, RejectsBadInputs)
{
    EXPECT_THROW(charlier_orthogonality(1, 1, q(0), ten_to_minus(20)), std::domain_error);
    EXPECT_THROW(charlier_orthogonality(1, 1, q(1), q(0)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// JSON reports

TEST(Reports, CarryIdsInputsVerdictsAndEnclosures)
{
    const auto reports = verify_dual_interlacing(3, q(-1, 2));
    const Json j = to_json(reports.front());
    EXPECT_EQ(j["theorem_id"], "thm-dualinterlG");
    EXPECT_EQ(j["inputs"]["x0"], "-1/2");
    EXPECT_TRUE(j.contains("verdict"));
    EXPECT_TRUE(j["witnesses"].is_array());
    const auto& root = j["p"]["roots"][0];
    EXPECT_TRUE(root["lo"].is_string());
    EXPECT_TRUE(root["hi"].is_string());
    EXPECT_TRUE(root["width"].is_string());

    const Json o = to_json(charlier_orthogonality(1, 1, q(1), ten_to_minus(20)));
    EXPECT_EQ(o["theorem_id"], "thm-charlier-orth");
    EXPECT_EQ(o["outcome"], "pass");

    for (const auto& id_report : exact_identities(2))
        EXPECT_EQ(to_json(id_report)["theorem_id"], "def-families");
}

TEST(Reports, EnclosureDecimalsRoundOutward)
{
    const RootEnclosure e{q(1, 3), q(2, 3)};
    const Json j = enclosure_json(e);
    EXPECT_LE(parse_rational(j["lo"].get<std::string>()), q(1, 3));
    EXPECT_GE(parse_rational(j["hi"].get<std::string>()), q(2, 3));
    EXPECT_EQ(j["lo_exact"], "1/3");
}
