#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qseries/errors.hpp"
#include "qseries/eval.hpp"
#include "qseries/parser.hpp"

using namespace qseries;

namespace {

QSeries ev(const char* text, std::int64_t order)
{
    return eval_exact(parse_expr(text), order);
}

void expect_matches(const QSeries& s, const oracle::Poly& p, std::int64_t shift = 0)
{
    for (std::size_t n = 0; n < p.size(); ++n) {
        ASSERT_EQ(s.coeff(static_cast<std::int64_t>(n) + shift), p[n]) << "q^" << n + shift;
    }
}

} // namespace

TEST(Eval, EtaQuotientAgainstDenseProduct)
{
    const std::int64_t N = 120;
    QSeries s = ev("f1^3*f2^-2/f4", N);
    EXPECT_EQ(s.order(), N);
    expect_matches(s, oracle::eta_product({{1, 3}, {2, -2}, {4, -1}}, N));
    expect_matches(ev("1/f1", N), oracle::partitions(N));
}

TEST(Eval, SumsAndLaurentShifts)
{
    QSeries s = ev("q^-2*f1 + 3 - q^5", 10);
    EXPECT_EQ(s.valuation(), -2);
    EXPECT_EQ(s.coeff(-2), 1);
    EXPECT_EQ(s.coeff(-1), -1);
    EXPECT_EQ(s.coeff(0), 2);  // -1 from f1, +3
    EXPECT_EQ(s.coeff(5), 0);  // +q^7 in f1 shifted down, -q^5
    EXPECT_EQ(s.order(), 10);
}

TEST(Eval, CancellationForcesMorePrecision)
{
    // f1 - 1 + q = -q^2 + q^5 + q^7 - ..., so the quotient starts at q^-2.
    const std::int64_t N = 60;
    QSeries s = ev("1/(f1 - 1 + q)", N);
    EXPECT_EQ(s.valuation(), -2);
    EXPECT_EQ(s.order(), N);
    oracle::Poly f = oracle::euler_product(1, N + 4);
    oracle::Poly shifted(f.begin() + 2, f.end());  // (f1 - 1 + q) / q^2
    expect_matches(s, oracle::inverse(shifted), -2);
}

TEST(Eval, LambdaQuotientValuations)
{
    Expr theta = parse_expr("lam(q^2)^3/(lam(q)*lam(q^4)*(lam(q^2) + 2*lam(q^4)))");
    Expr delta = parse_expr("lam(q^2)^3/(lam(q^4)*(lam(q^2) + 2*lam(q^4))^2)");
    QSeries t = eval_exact(theta, 40);
    EXPECT_EQ(t.valuation(), -1);
    EXPECT_EQ(t.coeff(-1), 1);
    EXPECT_EQ(t.order(), 40);
    QSeries d = eval_exact(delta, 40);
    EXPECT_EQ(d.valuation(), -2);
    QSeries ratio = eval_exact(delta / theta, 40);
    EXPECT_EQ(ratio.valuation(), -1);
    EXPECT_EQ(ratio.order(), 40);
}

TEST(Eval, MonomialFolding)
{
    auto spec = as_eta_monomial(parse_expr("2*q^-1*f1^4/(-f5^2)"));
    ASSERT_TRUE(spec);
    EXPECT_EQ(spec->scalar, -2);
    EXPECT_EQ(spec->qshift, -1);
    EXPECT_EQ(spec->factors, (std::map<std::int64_t, std::int64_t>{{1, 4}, {5, -2}}));

    auto lam2 = as_eta_monomial(parse_expr("lam(q^2)"));
    ASSERT_TRUE(lam2);
    EXPECT_EQ(lam2->qshift, 2);
    EXPECT_EQ(lam2->factors, (std::map<std::int64_t, std::int64_t>{{2, 4}, {10, 4}}));

    auto sub = as_eta_monomial(parse_expr("sub(3; q*f1/f2)"));
    ASSERT_TRUE(sub);
    EXPECT_EQ(sub->qshift, 3);
    EXPECT_EQ(sub->factors, (std::map<std::int64_t, std::int64_t>{{3, 1}, {6, -1}}));

    EXPECT_FALSE(as_eta_monomial(parse_expr("f1 + f2")));
    EXPECT_FALSE(as_eta_monomial(parse_expr("f1/(2*f2)")));
    EXPECT_FALSE(as_eta_monomial(parse_expr("(2*f1)^-1")));
    EXPECT_FALSE(as_eta_monomial(parse_expr("phi(q)")));
}

TEST(Eval, DivisionByNegativeMonomialKeepsSign)
{
    const std::int64_t N = 50;
    QSeries plain = ev("f1/f2", N);
    QSeries negated = neg(plain);
    EXPECT_EQ(ev("f1/(-f2)", N), negated);
    EXPECT_EQ(ev("f1/(-1*f2)", N), negated);
    EXPECT_EQ(ev("(f1 + q)/(-f2)", N), neg(ev("(f1 + q)/f2", N)));
    // The same quotient through the general inversion path.
    EXPECT_EQ(ev("f1/(0 - f2)", N), negated);
    EXPECT_EQ(ev("f1*(-f2)^-1", N), negated);
}

TEST(Eval, FoldedAndGeneralPathsAgree)
{
    const std::int64_t N = 80;
    EXPECT_EQ(ev("lam(q)/lam(q^2)", N), ev("(lam(q) + 0)/(lam(q^2) + 0)", N));
    EXPECT_EQ(ev("negq(f1)", N), ev("f2^3/(f1*f4)", N));
    EXPECT_EQ(ev("sub(2; f1^2/f3)", N), ev("f2^2/f6", N));
}

TEST(Eval, OperatorsAgainstSeriesPrimitives)
{
    const std::int64_t N = 60;
    QSeries base = ev("f1^5*f7^5/(f2*f14)", 7 * N + 6);
    EXPECT_TRUE(eq_to_order(ev("AP(7,6; f1^5*f7^5/(f2*f14))", N), extract_ap(base, 7, 6), N));
    QSeries l = ev("lam(q)", 2 * N + 1);
    EXPECT_TRUE(eq_to_order(ev("H(2; lam(q))", N), huff(l, 2), N));
}

TEST(Eval, DegenerateDenominators)
{
    EXPECT_THROW(ev("1/(f1 - f1)", 10), InsufficientPrecision);
    EXPECT_THROW(ev("f2/(q - q)", 10), InsufficientPrecision);
    EXPECT_THROW(ev("1/(2 + q)", 10), NotInvertible);
    EXPECT_THROW(ev("(2*f1)^-1", 10), NotInvertible);
}

TEST(Eval, ModularModeInvertsUnits)
{
    AnySeries any = eval(parse_expr("1/(2 + q)"), 10, CoefficientMode::modular(3));
    const auto& s = std::get<ModSeries>(any);
    // 1/(2 + q) = sum (-1)^n q^n / 2^(n+1), and 1/2 = 2 mod 3.
    EXPECT_EQ(s.coeff(0), 2u);
    EXPECT_EQ(s.coeff(1), 2u);  // -1/4 = -1 = 2
    EXPECT_EQ(s.coeff(2), 2u);  // 1/8 = 2
}

TEST(Eval, ModularMatchesReducedExact)
{
    const std::int64_t N = 150;
    for (const char* text : {"AP(2,1; f2^3/f1^3)", "theta(-q,-q^4)/f5", "psi(q^3)*phi(-q)^2 - R(q)", "H(3; lam(q))"}) {
        Expr e = parse_expr(text);
        QSeries exact = eval_exact(e, N);
        for (std::uint64_t m : {2ull, 343ull, (1ull << 61) - 1}) {
            AnySeries any = eval(e, N, CoefficientMode::modular(m));
            EXPECT_EQ(std::get<ModSeries>(any), reduce(exact, ResidueRing(m))) << text << " mod " << m;
        }
    }
}
