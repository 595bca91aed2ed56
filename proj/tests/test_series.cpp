#include <gtest/gtest.h>

#include "oracle.hpp"
#include "properties.hpp"
#include "qseries/errors.hpp"
#include "qseries/series.hpp"
#include "qseries/special.hpp"

using namespace qseries;

namespace {

std::vector<long> coeffs_of(const QSeries& s, std::int64_t from, std::int64_t to)
{
    std::vector<long> out;
    for (std::int64_t n = from; n <= to; ++n) {
        out.push_back(s.coeff(n).get_si());
    }
    return out;
}

} // namespace

TEST(Series, Monomial)
{
    QSeries one = monomial(1, 0, 10);
    EXPECT_EQ(one.valuation(), 0);
    EXPECT_EQ(one.order(), 10);
    EXPECT_EQ(one.coeff(0), 1);
    EXPECT_EQ(one.coeff(5), 0);

    QSeries m = monomial(-4, 1, 10);
    EXPECT_EQ(m.coeff(1), -4);
    QSeries laurent = monomial(1, -1, 5);
    EXPECT_EQ(laurent.valuation(), -1);
    EXPECT_EQ(laurent.order(), 5);
    EXPECT_THROW(monomial(1, 6, 5), InvalidOrder);
}

TEST(Series, ZeroSeriesValuationIsOrderPlusOne)
{
    QSeries z(IntegerRing{}, 7);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.valuation(), 8);
    EXPECT_EQ(z.coeff(3), 0);
    EXPECT_THROW(z.coeff(8), InsufficientPrecision);
}

TEST(Series, AddSubNegScale)
{
    QSeries a = from_coefficients(0, {1, 1}, 10);
    QSeries b = from_coefficients(0, {1, -1}, 10);
    EXPECT_EQ(a + b, monomial(2, 0, 10));
    EXPECT_TRUE((a + neg(a)).is_zero());
    EXPECT_EQ(scale(monomial(1, 1, 10), mpz_class(-4)), monomial(-4, 1, 10));
    EXPECT_EQ((a - b), monomial(2, 1, 10));
    QSeries shorter = from_coefficients(0, {1}, 3);
    EXPECT_EQ((a + shorter).order(), 3);
}

TEST(Series, MulOrderRule)
{
    QSeries a = from_coefficients(0, {1, -1}, 10);
    QSeries b = from_coefficients(0, {1, 1}, 10);
    QSeries p = a * b;
    EXPECT_EQ(coeffs_of(p, 0, 3), (std::vector<long>{1, 0, -1, 0}));
    EXPECT_EQ(p.order(), 10);

    QSeries qinv = monomial(1, -1, 5);
    QSeries q = monomial(1, 1, 5);
    QSeries r = qinv * q;
    EXPECT_EQ(r.valuation(), 0);
    // min(5 + 1, 5 - 1)
    EXPECT_EQ(r.order(), 4);
    EXPECT_EQ(r, monomial(1, 0, 4));

    QSeries f1 = euler_f(1, 50);
    EXPECT_EQ(f1 * pow_int(f1, 3), pow_int(f1, 4));
    oracle::Poly naive = oracle::eta_product({{1, 4}}, 50);
    QSeries f14 = pow_int(f1, 4);
    for (std::int64_t n = 0; n <= 50; ++n) {
        EXPECT_EQ(f14.coeff(n), naive[n]);
    }
}

TEST(Series, Invert)
{
    QSeries g = invert(from_coefficients(0, {1, -1}, 20));
    for (std::int64_t n = 0; n <= 20; ++n) {
        EXPECT_EQ(g.coeff(n), 1);
    }
    QSeries qi = invert(monomial(1, 1, 10));
    EXPECT_EQ(qi.valuation(), -1);
    EXPECT_EQ(qi.order(), 8);
    QSeries f1 = euler_f(1, 200);
    EXPECT_TRUE(eq_to_order(f1 * invert(f1), monomial(1, 0, 200), 200));
    EXPECT_THROW(invert(QSeries(IntegerRing{}, 5)), NotInvertible);
    EXPECT_THROW(invert(from_coefficients(0, {2, 1}, 5)), NotInvertible);

    ResidueRing r7(7);
    ModSeries two = monomial(r7, r7.from_int(2), 0, 5);
    EXPECT_EQ(invert(two).coeff(0), 4u);
    EXPECT_THROW(invert(monomial(ResidueRing(6), 2, 0, 5)), NotInvertible);
}

TEST(Series, PowIntGivesPartitions)
{
    const std::int64_t N = 60;
    QSeries p = pow_int(euler_f(1, N), -1);
    oracle::Poly want = oracle::partitions(N);
    EXPECT_EQ(coeffs_of(p, 0, 7), (std::vector<long>{1, 1, 2, 3, 5, 7, 11, 15}));
    for (std::int64_t n = 0; n <= N; ++n) {
        EXPECT_EQ(p.coeff(n), want[n]) << n;
    }
    QSeries a = from_coefficients(0, {1, 1}, 10);
    EXPECT_EQ(coeffs_of(pow_int(a, 2), 0, 3), (std::vector<long>{1, 2, 1, 0}));
    EXPECT_EQ(pow_int(a, -3) * pow_int(a, 3), monomial(1, 0, 10));
    EXPECT_EQ(pow_int(a, 0), monomial(1, 0, 10));
}

TEST(Series, SubstNegateExtractHuff)
{
    QSeries a = from_coefficients(0, {1, 1}, 10);
    QSeries s = subst_power(a, 5);
    EXPECT_EQ(s.coeff(5), 1);
    EXPECT_EQ(s.coeff(1), 0);
    EXPECT_EQ(s.order(), 54);
    EXPECT_EQ(subst_power(euler_f(1, 100), 2), euler_f(2, 201));

    QSeries b = from_coefficients(0, {1, 1, 1}, 2);
    EXPECT_EQ(negate_q(b), from_coefficients(0, {1, -1, 1}, 2));
    EXPECT_EQ(negate_q(euler_f(1, 100)), eta_quotient(eta_spec(1, 0, {{2, 3}, {1, -1}, {4, -1}}), 100));

    QSeries c = from_coefficients(0, {1, 2, 3, 4}, 3);
    QSeries e = extract_ap(c, 2, 1);
    EXPECT_EQ(e, from_coefficients(0, {2, 4}, 1));
    QSeries p = eta_quotient(eta_spec(1, 0, {{1, 4}, {5, 4}}), 16 * 60 + 7);
    EXPECT_TRUE(extract_ap(p, 16, 7).is_zero());
    EXPECT_EQ(extract_ap(p, 16, 7).order(), 60);

    QSeries h = huff(from_coefficients(0, {1, 1, 1, 1}, 3), 2);
    EXPECT_EQ(h.coeff(0), 1);
    EXPECT_EQ(h.coeff(1), 0);
    EXPECT_EQ(h.coeff(2), 1);
    EXPECT_EQ(h.order(), 3);
    QSeries lau = huff(from_coefficients(-2, {5, 1, 7}, 0), 2);
    EXPECT_EQ(lau.coeff(-2), 5);
    EXPECT_EQ(lau.coeff(-1), 0);
    EXPECT_EQ(lau.coeff(0), 7);
}

TEST(Series, CoeffAccessBeyondOrderThrows)
{
    QSeries p = eta_quotient(eta_spec(1, 0, {{1, 4}, {5, 4}}), 15);
    EXPECT_EQ(p.coeff(0), 1);
    EXPECT_EQ(p.coeff(1), -4);
    EXPECT_EQ(p.coeff(15), -64);
    EXPECT_EQ(p.coeff(-3), 0);
    EXPECT_THROW(p.coeff(16), InsufficientPrecision);
    EXPECT_THROW(eq_to_order(p, p, 16), InsufficientPrecision);
    EXPECT_THROW(truncate(p, 16), InsufficientPrecision);
    EXPECT_EQ(truncate(p, 3).order(), 3);
}

TEST(Series, ModularReduction)
{
    QSeries a = from_coefficients(-1, {-3, 8, 1}, 1);
    ResidueRing r5(5);
    ModSeries m = reduce(a, r5);
    EXPECT_EQ(m.valuation(), -1);
    EXPECT_EQ(m.coeff(-1), 2u);
    EXPECT_EQ(m.coeff(0), 3u);
    ModSeries z = reduce(from_coefficients(0, {5, 10}, 3), r5);
    EXPECT_TRUE(z.is_zero());
    EXPECT_THROW(ResidueRing(1), std::invalid_argument);
    EXPECT_THROW(ResidueRing((std::uint64_t{1} << 62) + 1), std::invalid_argument);
    EXPECT_EQ(CoefficientMode::parse("mod:343").modulus(), 343u);
    EXPECT_TRUE(CoefficientMode::parse("exact").is_exact());
    EXPECT_THROW(CoefficientMode::parse("mod:x"), std::invalid_argument);
}

TEST(SeriesProperties, RingAxioms)
{
    auto r = props::ring_axioms();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(SeriesProperties, InvertRoundTrip)
{
    auto r = props::invert_roundtrip();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(SeriesProperties, DissectionReconstruction)
{
    auto r = props::dissection_reconstruction();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(SeriesProperties, HuffEqualsSubstOfExtract)
{
    auto r = props::huff_equals_subst_extract();
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(SeriesProperties, NegateQParity)
{
    auto r = props::negate_q_parity();
    EXPECT_TRUE(r.ok) << r.detail;
}
