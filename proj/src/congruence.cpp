#include "qseries/congruence.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <regex>
#include <set>

#include "qseries/blockfile.hpp"
#include "qseries/errors.hpp"
#include "qseries/eval.hpp"
#include "qseries/parser.hpp"

namespace qseries {

namespace {

constexpr std::string_view kClaims = R"(
# P*: f1^4*f5^4   M: f2^5*f5^5/(f1*f10)   T*: f1^5*f10^5/(f2*f5)
# A: f2^6*f7^6/f1^2   B: f1^6*f14^4/(f2^2*f7^2)   K: f1^2*f2^2*f7^2*f14^2   L: f1^5*f7^5/(f2*f14)

[congruence]
name=Pstar_2n1_mod4
source=P*(2n+1) divisible by 4
series=f1^4*f5^4
m=2
j=1
mod=4
nmax=5000

[congruence]
name=Pstar_4n3_mod8
source=P*(4n+3) divisible by 8
series=f1^4*f5^4
m=4
j=3
mod=8
nmax=5000

[congruence]
name=Pstar_8n7_mod64
source=P*(8n+7) divisible by 64
series=f1^4*f5^4
m=8
j=7
mod=64
nmax=700

[congruence]
name=Pstar_32n31_mod256
source=P*(32n+31) divisible by 256
series=f1^4*f5^4
m=32
j=31
mod=256
nmax=700

[congruence]
name=Pstar_64n63_mod512
source=P*(64n+63) divisible by 512, stronger than the 2-power family at alpha=6
series=f1^4*f5^4
m=64
j=63
mod=512
nmax=700

[congruence]
name=Pstar_9n2_mod2
source=P*(9n+2) even
series=f1^4*f5^4
m=9
j=2
mod=2
nmax=5000

[congruence]
name=Pstar_9n5_mod2
source=P*(9n+5) even
series=f1^4*f5^4
m=9
j=5
mod=2
nmax=5000

[congruence]
name=Pstar_10n1_mod4
source=P*(10n+1) divisible by 4
series=f1^4*f5^4
m=10
j=1
mod=4
nmax=5000

[congruence]
name=Pstar_10n7_mod4
source=P*(10n+7) divisible by 4
series=f1^4*f5^4
m=10
j=7
mod=4
nmax=5000

[congruence]
name=Pstar_10n3_mod8
source=P*(10n+3) divisible by 8
series=f1^4*f5^4
m=10
j=3
mod=8
nmax=5000

[congruence]
name=Pstar_10n5_mod8
source=P*(10n+5) divisible by 8
series=f1^4*f5^4
m=10
j=5
mod=8
nmax=5000

[congruence]
name=A_7n6_mod7
source=A(7n+6) divisible by 7
series=f2^6*f7^6/f1^2
m=7
j=6
mod=7
nmax=2000

[congruence]
name=B_7n4_mod7
source=B(7n+4) divisible by 7
series=f1^6*f14^4/(f2^2*f7^2)
m=7
j=4
mod=7
nmax=2000

[family]
name=Pstar_family_a8
source=P*(2^a n + 2^a - 1) divisible by 2^(a+1)
series=f1^4*f5^4
p=2
c=1
offset=pα-1
modexp=1
alpha_max=8
nmax=200

[family]
name=Pstar_2x5_family_a3
source=P*(2*5^a n + 2*5^a - 1) divisible by 4*5^a
series=f1^4*f5^4
p=5
c=2
offset=2pα-1
modmul=4
modexp=0
alpha_max=3
nmax=100

[family]
name=M_family_a3
source=M(5^a n + 5^a - 1) divisible by 5^a
series=f2^5*f5^5/(f1*f10)
p=5
c=1
offset=pα-1
modexp=0
alpha_max=3
nmax=100

[family]
name=Tstar_family_a3
source=T*(5^a n + 5^a - 2) divisible by 5^a
series=f1^5*f10^5/(f2*f5)
p=5
c=1
offset=pα-2
modexp=0
alpha_max=3
nmax=100

[family]
name=K_family_a3
source=K(7^a n + 7^a - 2) divisible by 7^a
series=f1^2*f2^2*f7^2*f14^2
p=7
c=1
offset=pα-2
modexp=0
alpha_max=3
nmax=100

[family]
name=L_family_a3
source=L(7^a n + 7^a - 1) divisible by 7^a
series=f1^5*f7^5/(f2*f14)
p=7
c=1
offset=pα-1
modexp=0
alpha_max=3
nmax=100

[scalar]
name=Pstar_16n7_zero
source=P*(16n+7) = 0
series=f1^4*f5^4
m=16
j=7
scalar=0
shift=0
nmax=1000

[scalar]
name=Pstar_16n15_scalar
source=P*(16n+15) = -64 P*(n)
series=f1^4*f5^4
m=16
j=15
scalar=-64
shift=0
nmax=1000

[scalar]
name=L_7n6_scalar
source=L(7n+6) = -7 L(n)
series=f1^5*f7^5/(f2*f14)
m=7
j=6
scalar=-7
shift=0
nmax=2000

[scalar]
name=L_49n48_scalar
source=L(49n+48) = 49 L(n), the iterated relation at a=2
series=f1^5*f7^5/(f2*f14)
m=49
j=48
scalar=49
shift=0
nmax=300

[scalar]
name=L_343n342_scalar
source=L(343n+342) = -343 L(n), the iterated relation at a=3
series=f1^5*f7^5/(f2*f14)
m=343
j=342
scalar=-343
shift=0
nmax=60

[scalar]
name=K_7n5_scalar
source=K(7n+5) = -7 K(n-1)
series=f1^2*f2^2*f7^2*f14^2
m=7
j=5
scalar=-7
shift=1
nmax=2000

[shiftprobe]
name=K_49n47_shift
source=iterated K relation at a=2 as stated, with q-exponent a
series=f1^2*f2^2*f7^2*f14^2
m=49
j=47
scalar=49
shift=2
max_shift=4
nmax=300

[shiftprobe]
name=K_343n341_shift
source=iterated K relation at a=3 as stated, with q-exponent a
series=f1^2*f2^2*f7^2*f14^2
m=343
j=341
scalar=-343
shift=3
max_shift=4
nmax=60
)";

std::uint64_t checked_modulus(std::int64_t value, const std::string& what)
{
    if (value < 2 || static_cast<std::uint64_t>(value) > ResidueRing::max_modulus) {
        throw std::invalid_argument(what + ": modulus " + std::to_string(value) + " outside [2, 2^62]");
    }
    return static_cast<std::uint64_t>(value);
}

std::int64_t ipow(std::int64_t base, std::int64_t e)
{
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / base) {
            throw std::invalid_argument("power " + std::to_string(base) + "^" + std::to_string(e) + " overflows");
        }
        r *= base;
    }
    return r;
}

std::uint64_t residue_of(const mpz_class& v, std::uint64_t modulus)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), modulus);
    return r.get_ui();
}

std::string modulus_text(std::uint64_t m)
{
    return std::to_string(m);
}

void validate(const CongruenceClaim& c)
{
    if (c.m < 1 || c.j < 0 || c.j >= c.m) {
        throw std::invalid_argument(c.name + ": progression needs 0 <= j < m");
    }
    if (c.modulus < 2) {
        throw std::invalid_argument(c.name + ": modulus must be at least 2");
    }
    if (c.n_max < 0) {
        throw std::invalid_argument(c.name + ": nmax must be nonnegative");
    }
}

template <typename Relation>
void validate_relation(const Relation& s)
{
    if (s.m < 2 || s.j < 0 || s.j >= s.m) {
        throw std::invalid_argument(s.name + ": relation needs m >= 2 and 0 <= j < m");
    }
    if (s.n_max < 0) {
        throw std::invalid_argument(s.name + ": nmax must be nonnegative");
    }
}

// a(m*n + j) == scalar * a(n - shift) for every n <= n_max; returns the first n that breaks it.
std::optional<std::int64_t> first_relation_failure(const QSeries& a, std::int64_t m, std::int64_t j, std::int64_t scalar,
                                                   std::int64_t shift, std::int64_t n_max)
{
    for (std::int64_t n = 0; n <= n_max; ++n) {
        mpz_class rhs = n - shift >= 0 ? mpz_class(a.coeff(n - shift) * scalar) : mpz_class(0);
        if (a.coeff(m * n + j) != rhs) {
            return n;
        }
    }
    return std::nullopt;
}

std::int64_t to_int(const Block& b, std::string_view key)
{
    return b.require_int(key);
}

Expr parse_series(const Block& b)
{
    try {
        return parse_expr(b.require("series"));
    } catch (const ParseError& e) {
        throw FormatError(b.line, std::string("series: ") + e.what());
    }
}

} // namespace

std::int64_t FamilyClaim::progression(std::int64_t alpha) const
{
    return c * ipow(p, alpha);
}

std::int64_t FamilyClaim::offset(std::int64_t alpha) const
{
    return offset_mult * ipow(p, alpha) - offset_sub;
}

std::uint64_t FamilyClaim::modulus(std::int64_t alpha) const
{
    return checked_modulus(mod_mult * ipow(p, alpha + mod_exp), name);
}

CongruenceClaim FamilyClaim::instance(std::int64_t alpha) const
{
    return CongruenceClaim{name + "@a" + std::to_string(alpha), series, progression(alpha), offset(alpha), modulus(alpha),
                           n_max, source};
}

void SeriesCache::reserve_modular(const Expr& e, std::uint64_t modulus, std::int64_t order)
{
    std::string key = to_dsl(e);
    exprs_.emplace(key, e);
    ModPlan& plan = mod_[key];
    std::uint64_t l = std::lcm(plan.modulus, modulus);
    // Fall back to separate expansions if the combined modulus leaves the word range.
    if (l / modulus != plan.modulus / std::gcd(plan.modulus, modulus) || l > ResidueRing::max_modulus) {
        return;
    }
    if (l != plan.modulus || order > plan.order) {
        plan.value.reset();
    }
    plan.modulus = l;
    plan.order = std::max(plan.order, order);
}

void SeriesCache::reserve_exact(const Expr& e, std::int64_t order)
{
    std::string key = to_dsl(e);
    exprs_.emplace(key, e);
    ExactPlan& plan = exact_[key];
    if (order > plan.order) {
        plan.value.reset();
        plan.order = order;
    }
}

const ModSeries& SeriesCache::modular(const Expr& e, std::uint64_t modulus, std::int64_t order)
{
    std::string key = to_dsl(e);
    ModPlan& plan = mod_[key];
    if (plan.modulus % modulus != 0 || plan.order < order) {
        reserve_modular(e, modulus, order);
        if (plan.modulus % modulus != 0) {
            plan = ModPlan{modulus, order, std::nullopt};
        }
    }
    if (!plan.value) {
        plan.value = evaluate(e, plan.order, ResidueRing(std::max<std::uint64_t>(plan.modulus, 2)));
    }
    return *plan.value;
}

const QSeries& SeriesCache::exact(const Expr& e, std::int64_t order)
{
    reserve_exact(e, order);
    ExactPlan& plan = exact_[to_dsl(e)];
    if (!plan.value) {
        plan.value = eval_exact(e, plan.order);
    }
    return *plan.value;
}

ClaimResult check_claim(const CongruenceClaim& c, const CoefficientMode& mode, SeriesCache* cache)
{
    validate(c);
    SeriesCache local;
    SeriesCache& sc = cache ? *cache : local;
    const std::int64_t order = c.m * c.n_max + c.j;
    ClaimResult r;
    r.name = c.name;
    auto fail = [&](std::int64_t n, std::uint64_t residue) {
        r.status = ClaimStatus::Fail;
        r.n = n;
        r.residue = std::to_string(residue);
        r.line = "FAIL " + c.name + " n=" + std::to_string(n) + " residue=" + r.residue + " mod=" + modulus_text(c.modulus);
        return r;
    };
    if (mode.is_exact()) {
        const QSeries& s = sc.exact(c.series, order);
        for (std::int64_t n = 0; n <= c.n_max; ++n) {
            if (std::uint64_t res = residue_of(s.coeff(c.m * n + c.j), c.modulus); res != 0) {
                return fail(n, res);
            }
        }
    } else {
        if (mode.modulus() % c.modulus != 0) {
            throw std::invalid_argument(c.name + ": scan modulus " + std::to_string(mode.modulus()) +
                                        " is not a multiple of the claim modulus");
        }
        const ModSeries& s = sc.modular(c.series, mode.modulus(), order);
        for (std::int64_t n = 0; n <= c.n_max; ++n) {
            if (std::uint64_t res = s.coeff(c.m * n + c.j) % c.modulus; res != 0) {
                return fail(n, res);
            }
        }
    }
    r.line = "PASS " + c.name + " m=" + std::to_string(c.m) + " j=" + std::to_string(c.j) + " mod=" +
             modulus_text(c.modulus) + " nmax=" + std::to_string(c.n_max);
    return r;
}

ClaimResult check_claim(const CongruenceClaim& c)
{
    return check_claim(c, CoefficientMode::modular(c.modulus));
}

ClaimResult check_family(const FamilyClaim& f, SeriesCache* cache)
{
    if (f.p < 2 || f.c < 1 || f.alpha_max < 1 || f.n_max < 0) {
        throw std::invalid_argument(f.name + ": family needs p >= 2, c >= 1, alpha_max >= 1, nmax >= 0");
    }
    SeriesCache local;
    SeriesCache& sc = cache ? *cache : local;
    // Moduli grow with alpha, so the largest one serves every instance.
    std::uint64_t top = f.modulus(f.alpha_max);
    for (std::int64_t a = 1; a <= f.alpha_max; ++a) {
        CongruenceClaim inst = f.instance(a);
        validate(inst);
        if (top % inst.modulus != 0) {
            top = 0;
        }
        sc.reserve_modular(f.series, inst.modulus, inst.m * inst.n_max + inst.j);
    }
    ClaimResult r;
    r.name = f.name;
    for (std::int64_t a = 1; a <= f.alpha_max; ++a) {
        CongruenceClaim inst = f.instance(a);
        ClaimResult sub = check_claim(inst, CoefficientMode::modular(top != 0 ? top : inst.modulus), &sc);
        if (sub.status != ClaimStatus::Pass) {
            r.status = sub.status;
            r.alpha = a;
            r.n = sub.n;
            r.residue = sub.residue;
            r.line = "FAIL " + f.name + " alpha=" + std::to_string(a) + " n=" + std::to_string(*sub.n) +
                     " residue=" + sub.residue + " mod=" + modulus_text(inst.modulus);
            return r;
        }
    }
    r.line = "PASS " + f.name + " p=" + std::to_string(f.p) + " alpha<=" + std::to_string(f.alpha_max) +
             " nmax=" + std::to_string(f.n_max);
    return r;
}

ClaimResult check_scalar_relation(const ScalarRelationClaim& s, SeriesCache* cache)
{
    validate_relation(s);
    SeriesCache local;
    SeriesCache& sc = cache ? *cache : local;
    const QSeries& a = sc.exact(s.series, s.m * s.n_max + s.j);
    ClaimResult r;
    r.name = s.name;
    if (auto bad = first_relation_failure(a, s.m, s.j, s.scalar, s.shift, s.n_max)) {
        std::int64_t n = *bad;
        mpz_class rhs = n - s.shift >= 0 ? mpz_class(a.coeff(n - s.shift) * s.scalar) : mpz_class(0);
        r.status = ClaimStatus::Fail;
        r.n = n;
        r.line = "FAIL " + s.name + " n=" + std::to_string(n) + " lhs=" + a.coeff(s.m * n + s.j).get_str() +
                 " rhs=" + rhs.get_str();
        return r;
    }
    // The relation forces a(m*n + j) == 0 mod |scalar| (exact zero when scalar is 0); confirm it independently.
    std::string implied;
    std::uint64_t abs_scalar = static_cast<std::uint64_t>(s.scalar < 0 ? -s.scalar : s.scalar);
    for (std::int64_t n = 0; n <= s.n_max; ++n) {
        const mpz_class& v = a.coeff(s.m * n + s.j);
        bool ok = abs_scalar == 0 ? sgn(v) == 0 : (abs_scalar == 1 || residue_of(v, abs_scalar) == 0);
        if (!ok) {
            throw std::logic_error(s.name + ": relation holds but the implied congruence fails at n=" + std::to_string(n));
        }
    }
    implied = abs_scalar == 0 ? "zero" : "mod" + std::to_string(abs_scalar);
    r.line = "PASS " + s.name + " scalar=" + std::to_string(s.scalar) + " shift=" + std::to_string(s.shift) +
             " nmax=" + std::to_string(s.n_max) + " implies=" + implied;
    return r;
}

ClaimResult probe_shift(const ShiftProbeClaim& p, SeriesCache* cache)
{
    validate_relation(p);
    if (p.max_shift < 0) {
        throw std::invalid_argument(p.name + ": max_shift must be nonnegative");
    }
    SeriesCache local;
    SeriesCache& sc = cache ? *cache : local;
    const QSeries& a = sc.exact(p.series, p.m * p.n_max + p.j);
    ClaimResult r;
    r.name = p.name;
    r.stated_holds = !first_relation_failure(a, p.m, p.j, p.scalar, p.stated_shift, p.n_max);
    for (std::int64_t s = 0; s <= std::max(p.max_shift, p.stated_shift); ++s) {
        if (!first_relation_failure(a, p.m, p.j, p.scalar, s, p.n_max)) {
            r.holding_shifts.push_back(s);
        }
    }
    std::string holding;
    for (std::int64_t s : r.holding_shifts) {
        holding += (holding.empty() ? "" : ",") + std::to_string(s);
    }
    if (r.holding_shifts.empty()) {
        r.status = ClaimStatus::Fail;
        r.line = "FAIL " + p.name + " no shift in [0," + std::to_string(p.max_shift) + "] satisfies scalar=" +
                 std::to_string(p.scalar);
        return r;
    }
    r.status = ClaimStatus::Resolved;
    r.line = "RESOLVED " + p.name + " stated_shift=" + std::to_string(p.stated_shift) +
             (r.stated_holds ? " stated=PASS" : " stated=FAIL") + " empirical_shift=" + holding +
             " scalar=" + std::to_string(p.scalar) + " nmax=" + std::to_string(p.n_max);
    return r;
}

std::pair<std::int64_t, std::int64_t> parse_offset_token(std::string_view token)
{
    static const std::regex re(R"(^\s*(\d*)\s*p\s*(?:\^\s*)?(?:α|a|alpha)\s*-\s*(\d+)\s*$)");
    std::string text(token);
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw std::invalid_argument("offset token '" + text + "' is not of the form [c]pα-d");
    }
    std::int64_t mult = m[1].length() ? std::stoll(m[1].str()) : 1;
    std::int64_t sub = std::stoll(m[2].str());
    if (mult < 1) {
        throw std::invalid_argument("offset multiplier must be positive");
    }
    return {mult, sub};
}

std::string_view builtin_claims_text()
{
    return kClaims;
}

ClaimSet parse_claim_file(std::string_view text)
{
    ClaimSet out;
    std::set<std::string> names;
    for (const Block& b : parse_blocks(text)) {
        const std::string& name = b.require("name");
        if (!names.insert(name).second) {
            throw FormatError(b.line, "duplicate claim name '" + name + "'");
        }
        std::string source = b.get("source").value_or("");
        try {
            if (b.kind == "congruence") {
                b.check_keys({"name", "source", "series", "m", "j", "mod", "nmax"});
                CongruenceClaim c{name, parse_series(b), to_int(b, "m"), to_int(b, "j"),
                                  checked_modulus(to_int(b, "mod"), name), to_int(b, "nmax"), source};
                validate(c);
                out.congruences.push_back(std::move(c));
            } else if (b.kind == "family") {
                b.check_keys({"name", "source", "series", "p", "c", "offset", "modexp", "modmul", "alpha_max", "nmax"});
                auto [mult, sub] = parse_offset_token(b.require("offset"));
                FamilyClaim f{name,
                              parse_series(b),
                              to_int(b, "p"),
                              b.get_int("c", 1),
                              mult,
                              sub,
                              b.get_int("modmul", 1),
                              b.get_int("modexp", 0),
                              b.get_int("alpha_max", 3),
                              b.get_int("nmax", 100),
                              source};
                for (std::int64_t a = 1; a <= f.alpha_max; ++a) {
                    validate(f.instance(a));
                }
                out.families.push_back(std::move(f));
            } else if (b.kind == "scalar") {
                b.check_keys({"name", "source", "series", "m", "j", "scalar", "shift", "nmax"});
                ScalarRelationClaim s{name, parse_series(b), to_int(b, "m"), to_int(b, "j"), to_int(b, "scalar"),
                                      b.get_int("shift", 0), to_int(b, "nmax"), source};
                validate_relation(s);
                out.scalars.push_back(std::move(s));
            } else if (b.kind == "shiftprobe") {
                b.check_keys({"name", "source", "series", "m", "j", "scalar", "shift", "max_shift", "nmax"});
                ShiftProbeClaim p{name,           parse_series(b),      to_int(b, "m"),           to_int(b, "j"),
                                  to_int(b, "scalar"), to_int(b, "shift"), b.get_int("max_shift", 4), to_int(b, "nmax"),
                                  source};
                validate_relation(p);
                out.probes.push_back(std::move(p));
            } else {
                throw FormatError(b.line, "unexpected section [" + b.kind + "]");
            }
        } catch (const std::invalid_argument& e) {
            throw FormatError(b.line, e.what());
        }
    }
    return out;
}

const ClaimSet& builtin_claims()
{
    static const ClaimSet claims = parse_claim_file(kClaims);
    return claims;
}

std::vector<ClaimResult> run_claims(const ClaimSet& claims)
{
    SeriesCache cache;
    // Announce every request first so shared series are expanded once.
    for (const auto& c : claims.congruences) {
        cache.reserve_modular(c.series, c.modulus, c.m * c.n_max + c.j);
    }
    for (const auto& f : claims.families) {
        for (std::int64_t a = 1; a <= f.alpha_max; ++a) {
            CongruenceClaim inst = f.instance(a);
            cache.reserve_modular(f.series, inst.modulus, inst.m * inst.n_max + inst.j);
        }
    }
    for (const auto& s : claims.scalars) {
        cache.reserve_exact(s.series, s.m * s.n_max + s.j);
    }
    for (const auto& p : claims.probes) {
        cache.reserve_exact(p.series, p.m * p.n_max + p.j);
    }

    std::vector<ClaimResult> out;
    auto guarded = [&](const std::string& name, auto&& run) {
        try {
            out.push_back(run());
        } catch (const std::exception& e) {
            ClaimResult r;
            r.name = name;
            r.status = ClaimStatus::Error;
            r.line = "ERROR " + name + " reason=" + e.what();
            out.push_back(std::move(r));
        }
    };
    for (const auto& c : claims.congruences) {
        guarded(c.name, [&] { return check_claim(c, CoefficientMode::modular(c.modulus), &cache); });
    }
    for (const auto& f : claims.families) {
        guarded(f.name, [&] { return check_family(f, &cache); });
    }
    for (const auto& s : claims.scalars) {
        guarded(s.name, [&] { return check_scalar_relation(s, &cache); });
    }
    for (const auto& p : claims.probes) {
        guarded(p.name, [&] { return probe_shift(p, &cache); });
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

} // namespace qseries
