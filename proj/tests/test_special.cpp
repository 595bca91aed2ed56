#include <gtest/gtest.h>

#include "oracle.hpp"
#include "properties.hpp"
#include "qseries/special.hpp"

using namespace qseries;

namespace {

void expect_matches(const QSeries& s, const oracle::Poly& p, std::int64_t N)
{
    for (std::int64_t n = 0; n <= N; ++n) {
        ASSERT_EQ(s.coeff(n), p[n]) << "at q^" << n;
    }
}

} // namespace

TEST(Special, EulerSmallCases)
{
    EXPECT_EQ(euler_f(1, 7), from_coefficients(0, {1, -1, -1, 0, 0, 1, 0, 1}, 7));
    EXPECT_EQ(euler_f(2, 4), from_coefficients(0, {1, 0, -1, 0, -1}, 4));
    QSeries f = euler_f(1, 2000);
    for (std::int64_t n = 0; n <= 2000; ++n) {
        EXPECT_LE(mpz_class(abs(f.coeff(n))), 1);
    }
}

TEST(Special, EulerIsMagnifiedEuler)
{
    for (std::int64_t k = 1; k <= 7; ++k) {
        const std::int64_t N = 300;
        QSeries direct = euler_f(k, N);
        QSeries magnified = subst_power(euler_f(1, N / k), k);
        EXPECT_TRUE(eq_to_order(direct, magnified, N)) << k;
    }
}

TEST(Special, PentagonalMatchesNaiveProduct)
{
    auto r = props::pentagonal_matches_naive();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Special, Pochhammer)
{
    EXPECT_EQ(pochhammer(1, 1, 80), euler_f(1, 80));
    expect_matches(pochhammer(1, 5, 60), oracle::pochhammer(1, 5, 60), 60);
    expect_matches(pochhammer(2, 5, 60), oracle::pochhammer(2, 5, 60), 60);
    QSeries p = pochhammer(2, 5, 7);
    EXPECT_EQ(p.coeff(2), -1);
    EXPECT_EQ(p.coeff(7), -1);
}

TEST(Special, EtaQuotientMatchesDenseOracle)
{
    const std::vector<std::map<std::int64_t, std::int64_t>> specs = {
        {{1, 4}, {5, 4}},           {{2, 5}, {5, 5}, {1, -1}, {10, -1}}, {{2, 6}, {7, 6}, {1, -2}},
        {{1, 6}, {14, 4}, {2, -2}, {7, -2}}, {{1, -3}, {4, 2}},              {{3, -1}, {6, 2}, {9, -1}},
    };
    for (const auto& f : specs) {
        EtaQuotientSpec s;
        s.factors = f;
        expect_matches(eta_quotient(s, 200), oracle::eta_product(f, 200), 200);
    }
    QSeries k = eta_quotient(eta_spec(-7, 1, {{1, 2}, {2, 2}, {7, 2}, {14, 2}}), 30);
    EXPECT_EQ(k.valuation(), 1);
    EXPECT_EQ(k.coeff(1), -7);
    EXPECT_EQ(eta_quotient(eta_spec(1, 0, {}), 5), monomial(1, 0, 5));
}

TEST(Special, ThetaMatchesBilateralSum)
{
    expect_matches(theta_f({-1, 15}, {-1, 35}, 400), oracle::theta(-1, 15, -1, 35, 400), 400);
    expect_matches(theta_f({1, 10}, {1, 15}, 400), oracle::theta(1, 10, 1, 15, 400), 400);
    expect_matches(theta_f({1, 1}, {1, 1}, 100), oracle::theta(1, 1, 1, 1, 100), 100);
    expect_matches(theta_f({1, 1}, {1, 3}, 100), oracle::theta(1, 1, 1, 3, 100), 100);
    EXPECT_EQ(phi(1, 1, 100).coeff(9), 2);
}

TEST(Special, ThetaSupport)
{
    auto r = props::theta_support();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Special, ThetaProductForms)
{
    const std::int64_t N = 300;
    EXPECT_EQ(phi(-1, 1, N), eta_quotient(eta_spec(1, 0, {{1, 2}, {2, -1}}), N));
    EXPECT_EQ(psi(1, N), eta_quotient(eta_spec(1, 0, {{2, 2}, {1, -1}}), N));
    EXPECT_EQ(phi(-1, 1, N), negate_q(phi(1, 1, N)));
    EXPECT_TRUE(eq_to_order(phi(1, 3, N), subst_power(phi(1, 1, N / 3), 3), N));
}

TEST(Special, RogersRamanujan)
{
    QSeries r = rr_quotient(1, 3);
    EXPECT_EQ(r.coeff(0), 1);
    EXPECT_EQ(r.coeff(1), -1);
    EXPECT_EQ(r.coeff(2), 1);
    QSeries big = rr_quotient(1, 200);
    EXPECT_TRUE(eq_to_order(big * invert(big), monomial(1, 0, 200), 200));
    oracle::Poly num = oracle::mul(oracle::pochhammer(1, 5, 200), oracle::pochhammer(4, 5, 200));
    oracle::Poly den = oracle::mul(oracle::pochhammer(2, 5, 200), oracle::pochhammer(3, 5, 200));
    expect_matches(big, oracle::mul(num, oracle::inverse(den)), 200);
    EXPECT_TRUE(eq_to_order(rr_quotient(5, 200), subst_power(rr_quotient(1, 40), 5), 200));
}

TEST(Special, Lambda)
{
    QSeries l1 = lambda_series(1, 50);
    EXPECT_EQ(l1.valuation(), 1);
    EXPECT_EQ(l1.coeff(2), -4);
    EXPECT_EQ(l1, shift_q(family_gf(FamilyName::Pstar, 49), 1));
    QSeries l2 = lambda_series(2, 50);
    EXPECT_EQ(l2.valuation(), 2);
    EXPECT_EQ(l2.coeff(2), 1);
}

TEST(Special, FamilyTable)
{
    EXPECT_EQ(family_gf(FamilyName::Tstar, 10).coeff(3), 5);
    EXPECT_EQ(family_gf(FamilyName::L, 10).coeff(6), -7);
    EXPECT_EQ(family_gf(FamilyName::K, 20).coeff(12), -7);
    EXPECT_EQ(family_gf(FamilyName::M, 10).coeff(0), 1);
    EXPECT_EQ(all_families().size(), 7u);
    for (FamilyName f : all_families()) {
        EXPECT_EQ(parse_family(family_label(f)), f);
    }
    EXPECT_FALSE(parse_family("Q").has_value());
}

TEST(Special, SpecTransforms)
{
    EtaQuotientSpec s = eta_spec(3, 1, {{1, 2}, {2, -1}, {5, 1}});
    const std::int64_t N = 120;
    EXPECT_EQ(eta_quotient(s.negate_q(), N), negate_q(eta_quotient(s, N)));
    EXPECT_TRUE(eq_to_order(eta_quotient(s.substitute_power(3), N), subst_power(eta_quotient(s, N / 3), 3), N));
    EtaQuotientSpec u = eta_spec(-1, 2, {{1, 2}, {3, -1}});
    EXPECT_EQ(u.pow(-2).pow(-1), u.pow(2));
    EXPECT_THROW(s.pow(-1), std::domain_error);
    EXPECT_EQ(s.weight_numerator(), 2);
    EXPECT_THROW(eta_spec(1, 0, {{0, 1}}), std::invalid_argument);
}
