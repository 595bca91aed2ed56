// Command-line front end for the q-series engine.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qseries/blockfile.hpp"
#include "qseries/catalog.hpp"
#include "qseries/congruence.hpp"
#include "qseries/errors.hpp"
#include "qseries/eval.hpp"
#include "qseries/parser.hpp"
#include "qseries/rigor.hpp"

using namespace qseries;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitEval = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path)
{
    try {
        return read_text_file(path);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

std::vector<IdentityEntry> load_catalog(const std::string& source)
{
    if (source == "builtin") {
        return builtin_catalog();
    }
    return parse_identity_file(read_input(source));
}

ClaimSet load_claims(const std::string& source)
{
    if (source == "builtin") {
        return builtin_claims();
    }
    return parse_claim_file(read_input(source));
}

template <typename Ring>
void print_series(const BasicSeries<Ring>& s, std::int64_t order)
{
    const std::int64_t start = s.is_zero() ? std::min<std::int64_t>(0, order) : s.valuation();
    for (std::int64_t n = start; n <= order; ++n) {
        std::cout << n << ' ' << s.ring().to_string(s.coeff(n)) << '\n';
    }
}

int cmd_expand(const std::string& text, std::int64_t order, const std::string& mode_text)
{
    Expr e = parse_expr(text);
    CoefficientMode mode = CoefficientMode::parse(mode_text);
    AnySeries s = eval(e, order, mode);
    std::visit([order](const auto& series) { print_series(series, order); }, s);
    return kExitOk;
}

int verify_exit(const CatalogReport& report)
{
    if (report.count(Verdict::Fail) > 0) {
        return kExitFail;
    }
    return report.count(Verdict::Inapplicable) > 0 ? kExitEval : kExitOk;
}

int cmd_verify(const std::string& source, std::optional<std::int64_t> order)
{
    if (order && *order < 1) {
        throw UsageError("--order must be at least 1");
    }
    CatalogReport report = verify_all(load_catalog(source), order);
    for (const auto& r : report.results) {
        std::cout << r.report_line() << '\n';
    }
    return verify_exit(report);
}

int scan_exit(const std::vector<ClaimResult>& results)
{
    bool error = false;
    for (const auto& r : results) {
        if (r.status == ClaimStatus::Fail) {
            return kExitFail;
        }
        error = error || r.status == ClaimStatus::Error;
    }
    return error ? kExitEval : kExitOk;
}

int cmd_scan(const std::string& source)
{
    auto results = run_claims(load_claims(source));
    for (const auto& r : results) {
        std::cout << r.line << '\n';
    }
    return scan_exit(results);
}

int cmd_prove(const std::string& name, const std::string& source)
{
    auto entries = load_catalog(source);
    const IdentityEntry* entry = find_identity(entries, name);
    if (entry == nullptr) {
        throw UsageError("no identity named '" + name + "'");
    }
    RigorCertificate cert = prove(*entry);
    std::cout << cert.summary_line() << '\n' << cert.render();
    return cert.verdict == RigorVerdict::Refuted ? kExitFail : kExitOk;
}

int cmd_report_all(std::int64_t order)
{
    int verdict = kExitOk;
    auto merge = [&verdict](int code) {
        if (code == kExitFail || verdict == kExitOk) {
            verdict = code == kExitOk ? verdict : (verdict == kExitFail ? kExitFail : code);
        }
    };
    std::cout << "# verify order=" << order << '\n';
    CatalogReport report = verify_all(builtin_catalog(), order);
    for (const auto& r : report.results) {
        std::cout << r.report_line() << '\n';
    }
    merge(verify_exit(report));

    std::cout << "# scan\n";
    auto results = run_claims(builtin_claims());
    for (const auto& r : results) {
        std::cout << r.line << '\n';
    }
    merge(scan_exit(results));

    std::cout << "# prove\n";
    for (const auto& entry : builtin_catalog()) {
        RigorCertificate cert = prove(entry);
        std::cout << cert.summary_line() << '\n';
        if (cert.verdict == RigorVerdict::Refuted) {
            merge(kExitFail);
        }
    }
    return verdict;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-series expansion, identity verification and congruence scanning"};
    app.require_subcommand(1);

    std::string expr_text;
    std::int64_t expand_order = 20;
    std::string mode_text = "exact";
    auto* expand = app.add_subcommand("expand", "print coefficients of an expression");
    expand->add_option("expr", expr_text, "expression in the series DSL")->required();
    expand->add_option("--order", expand_order, "last exponent to print");
    expand->add_option("--mode", mode_text, "exact or mod:<m>");

    std::string catalog_source = "builtin";
    std::optional<std::int64_t> verify_order;
    auto* verify = app.add_subcommand("verify", "check catalog identities coefficient by coefficient");
    verify->add_option("--catalog", catalog_source, "builtin or an identity file");
    verify->add_option("--order", verify_order, "order for every entry (default: each entry's own, 500 for builtin)");

    std::string claims_source = "builtin";
    auto* scan = app.add_subcommand("scan", "scan congruence claims");
    scan->add_option("--claims", claims_source, "builtin or a claim file");

    std::string prove_name;
    auto* prove_cmd = app.add_subcommand("prove", "emit a rigor certificate for a catalog identity");
    prove_cmd->add_option("--name", prove_name, "identity name")->required();
    prove_cmd->add_option("--catalog", catalog_source, "builtin or an identity file");

    std::int64_t report_order = 500;
    auto* report_all = app.add_subcommand("report-all", "verify, scan and prove everything built in");
    report_all->add_option("--order", report_order, "verification order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*expand) {
            return cmd_expand(expr_text, expand_order, mode_text);
        }
        if (*verify) {
            return cmd_verify(catalog_source, verify_order);
        }
        if (*scan) {
            return cmd_scan(claims_source);
        }
        if (*prove_cmd) {
            return cmd_prove(prove_name, catalog_source);
        }
        if (*report_all) {
            return cmd_report_all(report_order);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kExitParse;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "evaluation error: " << e.what() << '\n';
        return kExitEval;
    }
    return kExitParse;
}
