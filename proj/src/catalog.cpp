#include "qseries/catalog.hpp"

#include <algorithm>
#include <set>

#include "qseries/blockfile.hpp"
#include "qseries/errors.hpp"
#include "qseries/eval.hpp"
#include "qseries/parser.hpp"

namespace qseries {

namespace {

// Generating functions used below:
//   P*  f1^4*f5^4                 M   f2^5*f5^5/(f1*f10)     T*  f1^5*f10^5/(f2*f5)
//   A   f2^6*f7^6/f1^2            K   f1^2*f2^2*f7^2*f14^2   L   f1^5*f7^5/(f2*f14)
// theta = lam(q^2)^3/(lam(q)*lam(q^4)*(lam(q^2)+2*lam(q^4)))
// delta = lam(q^2)^3/(lam(q^4)*(lam(q^2)+2*lam(q^4))^2)
constexpr std::string_view kCatalog = R"(
[identity]
name=lemma21_i
source=quintuple-product dissection of f1 via R(q^5)
lhs=f1
rhs=f25*(1/R(q^5) - q - q^2*R(q^5))

[identity]
name=lemma21_ii
source=5-dissection of psi(q)
lhs=psi(q)
rhs=theta(q^10,q^15) + q*theta(q^5,q^20) + q^3*psi(q^25)

[identity]
name=lemma21_iii
source=5-dissection of phi(-q)
lhs=phi(-q)
rhs=-2*q*theta(-q^15,-q^35) + 2*q^4*theta(-q^5,-q^45) + phi(-q^25)

[identity]
name=diss_f1_4
source=2-dissection of f1^4
lhs=f1^4
rhs=f4^10/(f2^2*f8^4) - 4*q*f2^2*f8^4/f4^2

[identity]
name=diss_f5_over_f1
source=2-dissection of f5/f1
lhs=f5/f1
rhs=f8*f20^2/(f2^2*f40) + q*f4^3*f10*f40/(f2^3*f8*f20)

[identity]
name=diss_f1_over_f5
source=2-dissection of f1/f5
lhs=f1/f5
rhs=f2*f8*f20^3/(f4*f10^3*f40) - q*f4^2*f40/(f8*f10^2)

[identity]
name=diss_f1f5cubed
source=2-dissection of f1*f5^3
lhs=f1*f5^3
rhs=f2^3*f10 - q*f2^2*f10^2*f20/f4 + 2*q^2*f4*f20^3 - 2*q^3*f4^4*f10*f40^2/(f2*f8^2)

[identity]
name=diss_f1cubed_f5
source=2-dissection of f1^3*f5
lhs=f1^3*f5
rhs=f2^2*f4*f10^2/f20 + q*(2*f4^3*f20 - 5*f2*f10^3) + 2*q^2*f4^6*f10*f40^2/(f2*f8^2*f20^2)

[identity]
name=jacobi_deg5
source=product form of the degree-5 modular equation
lhs=f2^8*f10^8/(f1^4*f5^4*f4^4*f20^4) - f1^4*f5^4/(f2^4*f10^4)
rhs=8*q + 16*q^3*f4^4*f20^4/(f2^4*f10^4)

[identity]
name=theta_delta
source=delta/theta = theta - 8 for the lambda quotients theta and delta
lhs=(lam(q^2)^3/(lam(q^4)*(lam(q^2) + 2*lam(q^4))^2))/(lam(q^2)^3/(lam(q)*lam(q^4)*(lam(q^2) + 2*lam(q^4))))
rhs=lam(q^2)^3/(lam(q)*lam(q^4)*(lam(q^2) + 2*lam(q^4))) - 8

[identity]
name=huff_theta
source=even part of theta is the constant 4
lhs=H(2; lam(q^2)^3/(lam(q)*lam(q^4)*(lam(q^2) + 2*lam(q^4))))
rhs=4

[identity]
name=lemma41
source=even part of lambda(q)
lhs=H(2; lam(q))
rhs=-4*lam(q^2) - 8*lam(q^4)

[identity]
name=gf_p2n1
source=generating function of P*(2n+1)
lhs=AP(2,1; f1^4*f5^4)
rhs=-4*(f1^2*f4^4*f10^10/(f2^2*f5^2*f20^4) + q^2*f2^10*f5^2*f20^4/(f1^2*f4^4*f10^2))

[identity]
name=gf_p4n3
source=generating function of P*(4n+3)
lhs=AP(4,3; f1^4*f5^4)
rhs=8*(f2^5*f5^5/(f1*f10) - q*f1^5*f10^5/(f2*f5))

[identity]
name=gf_p8n7_s3
source=generating function of P*(8n+7) from the 2-dissection chain
lhs=AP(8,7; f1^4*f5^4)
rhs=8*(f1^2*f2^3*f10^9/(f4*f5^2*f20^3) - f2^9*f5^2*f10^3/(f1^2*f4^3*f20) - 4*q*f1*f4^3*f5^3*f20 - 4*q^2*f1^3*f4*f5*f20^3)

[identity]
name=gf_p8n7_s4
source=generating function of P*(8n+7) through lambda
lhs=q*AP(8,7; f1^4*f5^4)
rhs=-64*lam(q^2)

[identity]
name=gf_p16n7
source=P*(16n+7) vanishes
lhs=AP(16,7; f1^4*f5^4)
rhs=0

[identity]
name=gf_p16n15
source=generating function of P*(16n+15)
lhs=q*AP(16,15; f1^4*f5^4)
rhs=-64*lam(q)

[identity]
name=gf_p32n31
source=generating function of P*(32n+31)
lhs=q*AP(32,31; f1^4*f5^4)
rhs=256*lam(q) + 512*lam(q^2)

[identity]
name=gf_p64n63
source=generating function of P*(64n+63)
lhs=q*AP(64,63; f1^4*f5^4)
rhs=-512*lam(q) - 2048*lam(q^2)

[identity]
name=thmM_a1
source=generating function of M(5n+4)
lhs=AP(5,4; f2^5*f5^5/(f1*f10))
rhs=5*q*f1^5*f10^5/(f2*f5)

[identity]
name=thmM_a2
source=generating function of M(25n+24)
lhs=AP(25,24; f2^5*f5^5/(f1*f10))
rhs=25*f2^5*f5^5/(f1*f10)

[identity]
name=thmT
source=generating function of T*(5n+3) is 5 times that of M
lhs=AP(5,3; f1^5*f10^5/(f2*f5))
rhs=5*f2^5*f5^5/(f1*f10)

[identity]
name=e17_a1
source=generating function of P*(5n+4)
lhs=AP(5,4; f1^4*f5^4)
rhs=-5*f1^4*f5^4

[identity]
name=thm_10n9_a1
source=generating function of P*(10n+9)
lhs=AP(10,9; f1^4*f5^4)
rhs=20*(f1^2*f4^4*f10^10/(f2^2*f5^2*f20^4) + q^2*f2^10*f5^2*f20^4/(f1^2*f4^4*f10^2))

[identity]
name=radu_A7n6
source=Radu witness for A(7n+6): prefactor times the progression equals -7 t
lhs=(f2*f7^9/(q^4*f1^7*f14^13))*AP(7,6; f2^6*f7^6/f1^2)
rhs=-7*f2*f7^7/(q^2*f1*f14^7)

[identity]
name=gf_L7n6
source=generating function of L(7n+6)
lhs=AP(7,6; f1^5*f7^5/(f2*f14))
rhs=-7*f1^5*f7^5/(f2*f14)

[identity]
name=gf_K7n5
source=generating function of K(7n+5)
lhs=AP(7,5; f1^2*f2^2*f7^2*f14^2)
rhs=-7*q*f1^2*f2^2*f7^2*f14^2

[identity]
name=aux_R_S
source=the two quotients of the degree-5 modular equation swap under q -> -q
lhs=negq(f2^8*f10^8/(f1^4*f5^4*f4^4*f20^4))
rhs=f1^4*f5^4/(f2^4*f10^4)
)";

std::string print_coeff(const QSeries& s, std::int64_t n)
{
    return s.coeff(n).get_str();
}

} // namespace

std::string_view builtin_catalog_text()
{
    return kCatalog;
}

std::vector<IdentityEntry> parse_identity_file(std::string_view text)
{
    std::vector<IdentityEntry> out;
    std::set<std::string> names;
    for (const Block& b : parse_blocks(text)) {
        if (b.kind != "identity") {
            throw FormatError(b.line, "unexpected section [" + b.kind + "]");
        }
        b.check_keys({"name", "lhs", "rhs", "order", "source"});
        const std::string& name = b.require("name");
        if (!names.insert(name).second) {
            throw FormatError(b.line, "duplicate identity name '" + name + "'");
        }
        std::int64_t order = b.get_int("order", 500);
        if (order < 1) {
            throw FormatError(b.line, "order must be at least 1");
        }
        out.push_back(IdentityEntry{name, parse_expr(b.require("lhs")), parse_expr(b.require("rhs")),
                                    b.get("source").value_or(""), order});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

const std::vector<IdentityEntry>& builtin_catalog()
{
    static const std::vector<IdentityEntry> entries = parse_identity_file(kCatalog);
    return entries;
}

const IdentityEntry* find_identity(const std::vector<IdentityEntry>& entries, std::string_view name)
{
    for (const auto& e : entries) {
        if (e.name == name) {
            return &e;
        }
    }
    return nullptr;
}

std::string VerificationResult::report_line() const
{
    switch (verdict) {
    case Verdict::Pass:
        return "PASS " + name + " order=" + std::to_string(order);
    case Verdict::Fail:
        return "FAIL " + name + " n=" + std::to_string(exponent) + " lhs=" + lhs_coeff + " rhs=" + rhs_coeff;
    case Verdict::Inapplicable:
        break;
    }
    return "INAPPLICABLE " + name + " reason=" + message;
}

VerificationResult verify_entry(const IdentityEntry& entry, std::int64_t order)
{
    VerificationResult r;
    r.name = entry.name;
    r.order = order;
    if (order < 1) {
        throw std::invalid_argument("verification order must be at least 1");
    }
    try {
        QSeries lhs = eval_exact(entry.lhs, order);
        QSeries rhs = eval_exact(entry.rhs, order);
        for (std::int64_t n = std::min(lhs.valuation(), rhs.valuation()); n <= order; ++n) {
            if (lhs.coeff(n) != rhs.coeff(n)) {
                r.verdict = Verdict::Fail;
                r.exponent = n;
                r.lhs_coeff = print_coeff(lhs, n);
                r.rhs_coeff = print_coeff(rhs, n);
                return r;
            }
        }
    } catch (const std::exception& e) {
        // Evaluation problems (precision, non-unit denominators) are not failures of the identity.
        r.verdict = Verdict::Inapplicable;
        r.message = e.what();
    }
    return r;
}

bool CatalogReport::all_pass() const
{
    return count(Verdict::Pass) == results.size();
}

std::size_t CatalogReport::count(Verdict v) const
{
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [v](const auto& r) { return r.verdict == v; }));
}

CatalogReport verify_all(const std::vector<IdentityEntry>& entries, std::optional<std::int64_t> order)
{
    CatalogReport report;
    for (const auto& e : entries) {
        report.results.push_back(verify_entry(e, order.value_or(e.default_order)));
    }
    std::sort(report.results.begin(), report.results.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    return report;
}

CatalogReport verify_all(std::int64_t order)
{
    return verify_all(builtin_catalog(), order);
}

} // namespace qseries
