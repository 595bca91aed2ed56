#include <gtest/gtest.h>

#include <set>

#include "qseries/blockfile.hpp"
#include "qseries/catalog.hpp"
#include "qseries/eval.hpp"
#include "qseries/parser.hpp"

using namespace qseries;

TEST(Catalog, NamesAreUniqueAndSorted)
{
    const auto& entries = builtin_catalog();
    EXPECT_EQ(entries.size(), 29u);
    std::set<std::string> names;
    for (const auto& e : entries) {
        EXPECT_TRUE(names.insert(e.name).second) << e.name;
        EXPECT_FALSE(e.source.empty()) << e.name;
    }
    EXPECT_TRUE(std::is_sorted(entries.begin(), entries.end(),
                               [](const auto& a, const auto& b) { return a.name < b.name; }));
    EXPECT_NE(find_identity(entries, "jacobi_deg5"), nullptr);
    EXPECT_EQ(find_identity(entries, "nope"), nullptr);
}

TEST(Catalog, AllPassAtModestOrder)
{
    CatalogReport report = verify_all(60);
    EXPECT_EQ(report.results.size(), 29u);
    EXPECT_TRUE(report.all_pass());
    for (const auto& r : report.results) {
        EXPECT_EQ(r.verdict, Verdict::Pass) << r.report_line();
        EXPECT_EQ(r.report_line(), "PASS " + r.name + " order=60");
    }
}

TEST(Catalog, PlantedCorruptionIsCaughtAtItsExponent)
{
    IdentityEntry e = *find_identity(builtin_catalog(), "diss_f1_4");
    e.rhs = e.rhs + parse_expr("7*q^5");
    VerificationResult r = verify_entry(e, 40);
    EXPECT_EQ(r.verdict, Verdict::Fail);
    EXPECT_EQ(r.exponent, 5);
    QSeries lhs = eval_exact(e.lhs, 10);
    EXPECT_EQ(r.lhs_coeff, lhs.coeff(5).get_str());
    EXPECT_EQ(mpz_class(r.rhs_coeff), lhs.coeff(5) + 7);
    EXPECT_EQ(r.report_line().rfind("FAIL diss_f1_4 n=5 ", 0), 0u) << r.report_line();

    // A corruption past the checked order goes unnoticed.
    IdentityEntry late = *find_identity(builtin_catalog(), "e17_a1");
    late.rhs = late.rhs + parse_expr("q^41");
    EXPECT_EQ(verify_entry(late, 40).verdict, Verdict::Pass);
    EXPECT_EQ(verify_entry(late, 41).exponent, 41);
}

TEST(Catalog, LaurentSidesCompareFromTheirValuation)
{
    IdentityEntry shifted = *find_identity(builtin_catalog(), "gf_p16n15");
    // q^-1 * lhs == -64 * q^-1 * lam(q) begins at q^0; shifting both sides keeps it true.
    shifted.lhs = parse_expr("q^-3") * shifted.lhs;
    shifted.rhs = parse_expr("q^-3") * shifted.rhs;
    EXPECT_EQ(verify_entry(shifted, 80).verdict, Verdict::Pass);
    shifted.rhs = shifted.rhs + parse_expr("q^-2");
    VerificationResult r = verify_entry(shifted, 80);
    EXPECT_EQ(r.verdict, Verdict::Fail);
    EXPECT_EQ(r.exponent, -2);
}

TEST(Catalog, ProgressionsCompose)
{
    // Extracting the odd part of the 16n+15 progression gives the 32n+31 one.
    const std::int64_t N = 60;
    QSeries direct = eval_exact(parse_expr("AP(32,31; f1^4*f5^4)"), N);
    QSeries nested = eval_exact(parse_expr("AP(2,1; AP(16,15; f1^4*f5^4))"), N);
    EXPECT_EQ(direct, nested);
    QSeries via_lam = eval_exact(parse_expr("q^-1*(256*lam(q) + 512*lam(q^2))"), N);
    EXPECT_TRUE(eq_to_order(direct, via_lam, N));
}

TEST(Catalog, BuiltinTextRoundTrips)
{
    auto parsed = parse_identity_file(builtin_catalog_text());
    ASSERT_EQ(parsed.size(), builtin_catalog().size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        EXPECT_EQ(parsed[i].name, builtin_catalog()[i].name);
        EXPECT_EQ(parsed[i].lhs, builtin_catalog()[i].lhs);
    }
}

TEST(Catalog, FileFormat)
{
    auto entries = parse_identity_file("# two entries\n"
                                       "[identity]\nname=b\nlhs=f1\nrhs=f1\norder=7\n\n"
                                       "[identity]\nname=a\nlhs=q\nrhs=q + 0\nsource=trivial\n");
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_EQ(entries[0].name, "a");
    EXPECT_EQ(entries[1].default_order, 7);
    EXPECT_EQ(entries[0].default_order, 500);
    CatalogReport report = verify_all(entries, std::nullopt);
    EXPECT_TRUE(report.all_pass());
    EXPECT_EQ(report.results[1].order, 7);

    auto format_error_line = [](const char* text) -> std::size_t {
        try {
            parse_identity_file(text);
        } catch (const FormatError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(format_error_line("name=a\n"), 1u);
    EXPECT_EQ(format_error_line("[identity]\nname=a\nlhs=f1\n"), 1u);
    EXPECT_EQ(format_error_line("[identity]\nname=a\nname=b\nlhs=1\nrhs=1\n"), 3u);
    EXPECT_EQ(format_error_line("[identity]\nname=a\nlhs=1\nrhs=1\ncolour=red\n"), 1u);
    EXPECT_EQ(format_error_line("[identity]\nname=a\nlhs=1\nrhs=1\n[identity]\nname=a\nlhs=1\nrhs=1\n"), 5u);
    EXPECT_EQ(format_error_line("[identity]\nname=a\nlhs=1\nrhs=1\norder=ten\n"), 1u);
    EXPECT_EQ(format_error_line("[identity]\njunk\n"), 2u);
    EXPECT_THROW(parse_identity_file("[identity]\nname=a\nlhs=f1 +\nrhs=1\n"), ParseError);
}
