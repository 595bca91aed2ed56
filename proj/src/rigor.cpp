#include "qseries/rigor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qseries/eval.hpp"
#include "qseries/special.hpp"

namespace qseries {

namespace {

using Factors = std::map<std::int64_t, std::int64_t>;

constexpr std::size_t kMaxTerms = 4096;
constexpr std::int64_t kLevelMultipliers = 24;
constexpr std::int64_t kMinCheckedOrder = 16;
constexpr std::int64_t kNonvanishingWindow = 64;

struct NotEta {
    std::string reason;
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void merge_into(std::vector<EtaTerm>& out, const EtaTerm& t)
{
    if (sgn(t.coefficient) == 0) {
        return;
    }
    for (auto& existing : out) {
        if (existing.qshift == t.qshift && existing.factors == t.factors) {
            existing.coefficient += t.coefficient;
            return;
        }
    }
    out.push_back(t);
}

std::vector<EtaTerm> combine(const std::vector<EtaTerm>& terms)
{
    std::vector<EtaTerm> out;
    for (const auto& t : terms) {
        merge_into(out, t);
    }
    std::erase_if(out, [](const EtaTerm& t) { return sgn(t.coefficient) == 0; });
    return out;
}

EtaTerm term_product(const EtaTerm& a, const EtaTerm& b)
{
    EtaTerm t{a.coefficient * b.coefficient, a.qshift + b.qshift, a.factors};
    for (const auto& [d, r] : b.factors) {
        t.factors[d] += r;
    }
    std::erase_if(t.factors, [](const auto& kv) { return kv.second == 0; });
    return t;
}

EtaTerm term_inverse(const EtaTerm& a)
{
    EtaTerm t{1 / a.coefficient, -a.qshift, {}};
    for (const auto& [d, r] : a.factors) {
        t.factors[d] = -r;
    }
    return t;
}

EtaTerm from_spec(const EtaQuotientSpec& s)
{
    return EtaTerm{mpq_class(s.scalar), s.qshift, s.factors};
}

EtaQuotientSpec to_spec(const EtaTerm& t)
{
    // Only used on integral coefficients.
    EtaQuotientSpec s;
    s.scalar = t.coefficient.get_num();
    s.qshift = t.qshift;
    s.factors = t.factors;
    s.normalize();
    return s;
}

std::vector<EtaTerm> product(const std::vector<EtaTerm>& a, const std::vector<EtaTerm>& b)
{
    if (a.size() * b.size() > kMaxTerms) {
        throw NotEta{"expansion exceeds " + std::to_string(kMaxTerms) + " terms"};
    }
    std::vector<EtaTerm> out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            merge_into(out, term_product(x, y));
        }
    }
    return combine(out);
}

std::vector<EtaTerm> negated(std::vector<EtaTerm> v)
{
    for (auto& t : v) {
        t.coefficient = -t.coefficient;
    }
    return v;
}

std::vector<EtaTerm> expand(const Expr& e)
{
    using V = std::vector<EtaTerm>;
    return std::visit(
        overloaded{
            [](const ast::IntLit& n) -> V { return combine({EtaTerm{mpq_class(static_cast<long>(n.value)), 0, {}}}); },
            [](const ast::QVar&) -> V { return {EtaTerm{1, 1, {}}}; },
            [](const ast::EtaF& n) -> V { return {EtaTerm{1, 0, {{n.k, 1}}}}; },
            [](const ast::Lam& n) -> V { return {EtaTerm{1, n.k, {{n.k, 4}, {5 * n.k, 4}}}}; },
            [](const ast::Phi&) -> V { throw NotEta{"non-eta atom: theta function phi"}; },
            [](const ast::Psi&) -> V { throw NotEta{"non-eta atom: theta function psi"}; },
            [](const ast::ThetaF&) -> V { throw NotEta{"non-eta atom: theta function f(a,b)"}; },
            [](const ast::RRQ&) -> V { throw NotEta{"non-eta atom: Rogers-Ramanujan quotient R(q)"}; },
            [](const ast::Huff&) -> V { throw NotEta{"unsupported operator: H"}; },
            [](const ast::ExtractAP&) -> V { throw NotEta{"unsupported operator: AP"}; },
            [](const ast::Add& n) -> V {
                V out = expand(n.lhs);
                V rhs = expand(n.rhs);
                out.insert(out.end(), rhs.begin(), rhs.end());
                return combine(out);
            },
            [](const ast::Sub& n) -> V {
                V out = expand(n.lhs);
                V rhs = negated(expand(n.rhs));
                out.insert(out.end(), rhs.begin(), rhs.end());
                return combine(out);
            },
            [](const ast::Neg& n) -> V { return negated(expand(n.arg)); },
            [](const ast::Mul& n) -> V { return product(expand(n.lhs), expand(n.rhs)); },
            [](const ast::Div& n) -> V {
                V den = expand(n.rhs);
                if (den.size() != 1) {
                    throw NotEta{den.empty() ? "division by zero" : "division by a sum"};
                }
                return product(expand(n.lhs), {term_inverse(den.front())});
            },
            [](const ast::PowInt& n) -> V {
                V base = expand(n.base);
                if (n.exponent < 0) {
                    if (base.size() != 1) {
                        throw NotEta{base.empty() ? "negative power of zero" : "negative power of a sum"};
                    }
                    base = {term_inverse(base.front())};
                }
                V out = {EtaTerm{1, 0, {}}};
                for (std::int64_t i = 0; i < (n.exponent < 0 ? -n.exponent : n.exponent); ++i) {
                    out = product(out, base);
                }
                return out;
            },
            [](const ast::SubstPower& n) -> V {
                V out;
                for (const auto& t : expand(n.arg)) {
                    EtaTerm s = from_spec(EtaQuotientSpec{1, t.qshift, t.factors}.substitute_power(n.k));
                    s.coefficient = t.coefficient;
                    out.push_back(s);
                }
                return combine(out);
            },
            [](const ast::NegateQ& n) -> V {
                V out;
                for (const auto& t : expand(n.arg)) {
                    EtaQuotientSpec s = EtaQuotientSpec{1, t.qshift, t.factors}.negate_q();
                    EtaTerm u = from_spec(s);
                    u.coefficient *= t.coefficient;
                    out.push_back(u);
                }
                return combine(out);
            },
        },
        e.node().value);
}

std::int64_t prime_valuation(std::int64_t n, std::int64_t p)
{
    std::int64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_rational_square(const Factors& rho)
{
    std::map<std::int64_t, std::int64_t> exps;
    for (const auto& [d, r] : rho) {
        std::int64_t n = d;
        for (std::int64_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                exps[p] += r * prime_valuation(n, p);
                while (n % p == 0) {
                    n /= p;
                }
            }
        }
        if (n > 1) {
            exps[n] += r;
        }
    }
    return std::all_of(exps.begin(), exps.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

std::string term_text(const EtaTerm& t, bool with_coefficient)
{
    std::string out;
    if (with_coefficient) {
        out = t.coefficient.get_str();
    }
    auto append = [&out](const std::string& s) { out += (out.empty() ? "" : "*") + s; };
    if (t.qshift != 0) {
        append(t.qshift == 1 ? "q" : "q^" + std::to_string(t.qshift));
    }
    for (const auto& [d, r] : t.factors) {
        append("f" + std::to_string(d) + (r == 1 ? "" : "^" + std::to_string(r)));
    }
    return out.empty() ? "1" : out;
}

struct Attempt {
    RigorCertificate cert;
    bool square_failed = false;
};

Attempt attempt(const std::string& name, const std::vector<EtaTerm>& diff, const std::string& form)
{
    Attempt out;
    RigorCertificate& cert = out.cert;
    cert.name = name;
    cert.form = form;
    if (diff.empty()) {
        cert.verdict = RigorVerdict::Proven;
        cert.level = 1;
        cert.reason = "difference cancels as a formal sum of eta quotients";
        cert.checked_order = kMinCheckedOrder;
        return out;
    }
    const std::int64_t weight = std::accumulate(diff.front().factors.begin(), diff.front().factors.end(), std::int64_t{0},
                                                [](std::int64_t s, const auto& kv) { return s + kv.second; });
    for (const auto& t : diff) {
        std::int64_t w = 0;
        for (const auto& [d, r] : t.factors) {
            w += r;
        }
        if (w != weight) {
            cert.reason = "mixed weights";
            return out;
        }
    }
    // Reference: smallest q-shift, earliest term on ties.
    std::size_t ref = 0;
    for (std::size_t i = 1; i < diff.size(); ++i) {
        if (diff[i].qshift < diff[ref].qshift) {
            ref = i;
        }
    }
    cert.reference = term_text(diff[ref], false);
    EtaTerm ref_inv = term_inverse(diff[ref]);
    cert.terms.push_back(EtaTerm{1, 0, {}});
    for (std::size_t i = 0; i < diff.size(); ++i) {
        if (i != ref) {
            cert.terms.push_back(term_product(diff[i], ref_inv));
        }
    }

    std::int64_t L = 1;
    for (const auto& t : cert.terms) {
        std::int64_t implied = 0;
        for (const auto& [d, r] : t.factors) {
            L = std::lcm(L, d);
            implied += d * r;
        }
        if (implied % 24 != 0 || implied / 24 != t.qshift) {
            cert.reason = "q-shift of " + term_text(t, false) + " does not match its eta weight";
            return out;
        }
        if (!is_rational_square(t.factors)) {
            cert.reason = "character condition fails for " + term_text(t, false);
            out.square_failed = true;
            return out;
        }
    }
    std::int64_t N = 0;
    for (std::int64_t k = 1; k <= kLevelMultipliers && N == 0; ++k) {
        bool ok = std::all_of(cert.terms.begin(), cert.terms.end(), [&](const EtaTerm& t) {
            std::int64_t s = 0;
            for (const auto& [d, r] : t.factors) {
                s += (L * k / d) * r;
            }
            return s % 24 == 0;
        });
        if (ok) {
            N = L * k;
        }
    }
    if (N == 0) {
        cert.reason = "no level up to " + std::to_string(kLevelMultipliers * L) + " satisfies the Ligozat conditions";
        return out;
    }
    cert.level = N;

    std::vector<mpq_class> degree(cert.terms.size(), 0);
    std::int64_t B = 0;
    for (std::int64_t c : divisors(N)) {
        CuspRow row;
        row.c = c;
        row.classes = euler_phi(std::gcd(c, N / c));
        row.width = cusp_width(c, N);
        mpq_class lowest = 0;
        for (std::size_t i = 0; i < cert.terms.size(); ++i) {
            mpq_class o = cusp_order(cert.terms[i].factors, c, N);
            degree[i] += o * row.classes;
            lowest = std::min(lowest, o);
            row.orders.push_back(o);
        }
        if (c != N) {
            mpz_class pole = -lowest.get_num();
            mpz_cdiv_q(pole.get_mpz_t(), pole.get_mpz_t(), lowest.get_den_mpz_t());
            B += row.classes * pole.get_si();
        }
        cert.cusps.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < degree.size(); ++i) {
        if (sgn(degree[i]) != 0) {
            throw std::logic_error("degree of the divisor of " + term_text(cert.terms[i], false) + " is not zero");
        }
    }
    cert.pole_bound = B;

    // f = sum T_i has no poles in the upper half plane and at most B poles away
    // from infinity, so vanishing through q^V with V >= B forces f = 0.
    const std::int64_t V = std::max(2 * (B + 1), kMinCheckedOrder);
    mpz_class den = 1;
    for (const auto& t : cert.terms) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
    }
    QSeries f(IntegerRing{}, V);
    for (const auto& t : cert.terms) {
        EtaTerm scaled = t;
        scaled.coefficient *= den;
        f = add(f, eta_quotient(IntegerRing{}, to_spec(scaled), V));
    }
    cert.checked_order = V;
    if (!f.is_zero()) {
        cert.verdict = RigorVerdict::Refuted;
        cert.failing_exponent = f.valuation();
        cert.reason = "normalized difference has coefficient " + f.coeff(f.valuation()).get_str() + " at q^" +
                      std::to_string(f.valuation());
        return out;
    }
    cert.verdict = RigorVerdict::Proven;
    return out;
}

} // namespace

std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
        }
    }
    return out;
}

std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            result -= result / p;
        }
    }
    if (n > 1) {
        result -= result / n;
    }
    return result;
}

std::int64_t index_gamma0(std::int64_t N)
{
    if (N < 1) {
        throw std::invalid_argument("level must be positive");
    }
    std::int64_t idx = N;
    std::int64_t n = N;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            idx = idx / p * (p + 1);
        }
    }
    if (n > 1) {
        idx = idx / n * (n + 1);
    }
    return idx;
}

std::vector<Cusp> cusps_gamma0(std::int64_t N)
{
    if (N < 1) {
        throw std::invalid_argument("level must be positive");
    }
    std::vector<Cusp> out;
    for (std::int64_t c : divisors(N)) {
        std::int64_t g = std::gcd(c, N / c);
        // a/c and a'/c are equivalent iff a == a' mod gcd(c, N/c); take the least a in each unit class.
        std::vector<bool> seen(static_cast<std::size_t>(g), false);
        for (std::int64_t a = 1; std::count(seen.begin(), seen.end(), true) < euler_phi(g); ++a) {
            if (std::gcd(a, c) != 1) {
                continue;
            }
            auto r = static_cast<std::size_t>(a % g);
            if (!seen[r]) {
                seen[r] = true;
                out.push_back(Cusp{a, c});
            }
        }
    }
    return out;
}

std::int64_t cusp_width(std::int64_t c, std::int64_t N)
{
    return N / std::gcd(c * c, N);
}

mpq_class cusp_order(const Factors& factors, std::int64_t c, std::int64_t N)
{
    if (c < 1 || N % c != 0) {
        throw std::invalid_argument("cusp denominator must divide the level");
    }
    mpq_class sum = 0;
    const std::int64_t g = std::gcd(c, N / c);
    for (const auto& [d, r] : factors) {
        if (N % d != 0) {
            throw std::invalid_argument("eta index " + std::to_string(d) + " does not divide the level");
        }
        std::int64_t h = std::gcd(c, d);
        sum += mpq_class(mpz_class(static_cast<long>(h * h * r)), mpz_class(static_cast<long>(g * c * d)));
    }
    mpq_class out = sum * mpq_class(static_cast<long>(N), 24);
    out.canonicalize();
    return out;
}

std::int64_t sturm_bound(std::int64_t k, std::int64_t N)
{
    if (k < 0 || k % 2 != 0) {
        throw std::invalid_argument("weight must be even and nonnegative");
    }
    std::int64_t t = k * index_gamma0(N);
    return (t + 11) / 12;
}

EtaExpansion expand_eta_sum(const Expr& e)
{
    EtaExpansion out;
    try {
        out.terms = expand(e);
    } catch (const NotEta& err) {
        out.failure = err.reason;
    }
    return out;
}

std::string RigorCertificate::summary_line() const
{
    switch (verdict) {
    case RigorVerdict::Proven:
        return "PROVEN " + name + " level=" + std::to_string(level) + " B=" + std::to_string(pole_bound);
    case RigorVerdict::Refuted:
        return "FAIL " + name + " n=" + std::to_string(failing_exponent.value_or(0)) + " reason=" + reason;
    case RigorVerdict::NotApplicable:
        break;
    }
    return "NOT_APPLICABLE " + name + " reason=" + reason;
}

std::string RigorCertificate::render() const
{
    std::ostringstream os;
    os << "certificate " << name << "\n";
    if (verdict == RigorVerdict::NotApplicable) {
        os << "  verdict: NOT_APPLICABLE (" << reason << ")\n";
        return os.str();
    }
    os << "  form: " << form << "\n";
    os << "  level: " << level << " (index " << index_gamma0(level) << ", " << cusps_gamma0(level).size() << " cusps)\n";
    if (!reference.empty()) {
        os << "  reference term: " << reference << "\n";
    }
    if (!terms.empty()) {
        os << "  normalized terms:\n";
        for (std::size_t i = 0; i < terms.size(); ++i) {
            os << "    T" << i << " = " << term_text(terms[i], true) << "\n";
        }
        os << "  cusp orders in local uniformizers:\n";
        for (const auto& row : cusps) {
            os << "    c=" << row.c << " classes=" << row.classes << " width=" << row.width
               << (row.c == level ? " (infinity)" : "") << ":";
            for (const auto& o : row.orders) {
                os << " " << o.get_str();
            }
            os << "\n";
        }
    }
    os << "  pole bound B: " << pole_bound << "\n";
    os << "  checked order V: " << checked_order << "\n";
    if (!reason.empty()) {
        os << "  note: " << reason << "\n";
    }
    os << "  verdict: " << (verdict == RigorVerdict::Proven ? "PROVEN" : "FAIL") << "\n";
    return os.str();
}

RigorCertificate prove(const IdentityEntry& entry)
{
    RigorCertificate na;
    na.name = entry.name;
    EtaExpansion lhs = expand_eta_sum(entry.lhs);
    EtaExpansion rhs = expand_eta_sum(entry.rhs);
    if (!lhs.ok() || !rhs.ok()) {
        na.reason = lhs.ok() ? rhs.failure : lhs.failure;
        return na;
    }
    std::vector<EtaTerm> diff = lhs.terms;
    for (const auto& t : negated(rhs.terms)) {
        diff.push_back(t);
    }
    Attempt direct = attempt(entry.name, combine(diff), "direct");
    if (!direct.square_failed) {
        return direct.cert;
    }

    // lhs^2 = rhs^2 together with lhs + rhs != 0 gives lhs = rhs.
    std::vector<EtaTerm> squared;
    try {
        squared = product(lhs.terms, lhs.terms);
        for (const auto& t : negated(product(rhs.terms, rhs.terms))) {
            squared.push_back(t);
        }
    } catch (const NotEta& err) {
        na.reason = err.reason;
        return na;
    }
    Attempt doubled = attempt(entry.name, combine(squared), "doubled");
    if (doubled.square_failed) {
        na.reason = "character condition fails in direct and doubled forms";
        return na;
    }
    if (doubled.cert.verdict != RigorVerdict::Proven) {
        return doubled.cert;
    }
    QSeries sum = eval_exact(entry.lhs + entry.rhs, kNonvanishingWindow);
    if (sum.is_zero()) {
        na.reason = "doubled form proven but lhs + rhs vanishes through q^" + std::to_string(kNonvanishingWindow);
        return na;
    }
    doubled.cert.reason = "lhs^2 = rhs^2 proven and lhs + rhs is nonzero at q^" + std::to_string(sum.valuation());
    return doubled.cert;
}

} // namespace qseries
