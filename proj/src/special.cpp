#include "qseries/special.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace qseries {

void EtaQuotientSpec::normalize()
{
    for (auto it = factors.begin(); it != factors.end();) {
        if (it->first <= 0) {
            throw std::invalid_argument("eta factor index must be positive, got " + std::to_string(it->first));
        }
        it = it->second == 0 ? factors.erase(it) : std::next(it);
    }
}

EtaQuotientSpec& EtaQuotientSpec::operator*=(const EtaQuotientSpec& other)
{
    scalar *= other.scalar;
    qshift += other.qshift;
    for (const auto& [d, r] : other.factors) {
        factors[d] += r;
    }
    normalize();
    return *this;
}

EtaQuotientSpec EtaQuotientSpec::inverse_factors() const
{
    EtaQuotientSpec out;
    out.scalar = 1;
    out.qshift = -qshift;
    for (const auto& [d, r] : factors) {
        out.factors[d] = -r;
    }
    return out;
}

EtaQuotientSpec EtaQuotientSpec::pow(std::int64_t k) const
{
    if (k < 0 && scalar != 1 && scalar != -1) {
        throw std::domain_error("negative power of an eta quotient with non-unit scalar");
    }
    EtaQuotientSpec out;
    mpz_pow_ui(out.scalar.get_mpz_t(), scalar.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    out.qshift = qshift * k;
    for (const auto& [d, r] : factors) {
        out.factors[d] = r * k;
    }
    out.normalize();
    return out;
}

std::int64_t EtaQuotientSpec::weight_numerator() const
{
    std::int64_t total = 0;
    for (const auto& [d, r] : factors) {
        total += r;
    }
    return total;
}

EtaQuotientSpec EtaQuotientSpec::substitute_power(std::int64_t k) const
{
    if (k < 1) {
        throw std::invalid_argument("substitute_power needs k >= 1");
    }
    EtaQuotientSpec out;
    out.scalar = scalar;
    out.qshift = qshift * k;
    for (const auto& [d, r] : factors) {
        out.factors[d * k] += r;
    }
    out.normalize();
    return out;
}

EtaQuotientSpec EtaQuotientSpec::negate_q() const
{
    EtaQuotientSpec out;
    out.scalar = (qshift % 2 != 0) ? mpz_class(-scalar) : scalar;
    out.qshift = qshift;
    for (const auto& [d, r] : factors) {
        if (d % 2 == 0) {
            out.factors[d] += r;
        } else {
            out.factors[2 * d] += 3 * r;
            out.factors[d] -= r;
            out.factors[4 * d] -= r;
        }
    }
    out.normalize();
    return out;
}

EtaQuotientSpec eta_spec(std::int64_t scalar, std::int64_t qshift, std::map<std::int64_t, std::int64_t> factors)
{
    EtaQuotientSpec spec{mpz_class(static_cast<long>(scalar)), qshift, std::move(factors)};
    spec.normalize();
    return spec;
}

namespace {

struct FamilyRow {
    FamilyName name;
    std::string_view label;
    std::map<std::int64_t, std::int64_t> factors;
};

const std::array<FamilyRow, 7>& family_table()
{
    static const std::array<FamilyRow, 7> table{{
        {FamilyName::Pstar, "Pstar", {{1, 4}, {5, 4}}},
        {FamilyName::M, "M", {{2, 5}, {5, 5}, {1, -1}, {10, -1}}},
        {FamilyName::Tstar, "Tstar", {{1, 5}, {10, 5}, {2, -1}, {5, -1}}},
        {FamilyName::A, "A", {{2, 6}, {7, 6}, {1, -2}}},
        {FamilyName::B, "B", {{1, 6}, {14, 4}, {2, -2}, {7, -2}}},
        {FamilyName::K, "K", {{1, 2}, {2, 2}, {7, 2}, {14, 2}}},
        {FamilyName::L, "L", {{1, 5}, {7, 5}, {2, -1}, {14, -1}}},
    }};
    return table;
}

// c <- c * f_d, in place.
template <typename Ring>
void multiply_by_euler(const Ring& ring, std::vector<typename Ring::value_type>& c,
                       const std::vector<std::pair<std::int64_t, int>>& terms)
{
    const auto top = static_cast<std::int64_t>(c.size()) - 1;
    for (std::int64_t n = top; n > 0; --n) {
        auto& target = c[static_cast<std::size_t>(n)];
        for (std::size_t t = 1; t < terms.size() && terms[t].first <= n; ++t) {
            const auto& src = c[static_cast<std::size_t>(n - terms[t].first)];
            if (terms[t].second > 0) {
                ring.add_to(target, src);
            } else {
                ring.sub_from(target, src);
            }
        }
    }
}

// c <- c / f_d, in place.
template <typename Ring>
void divide_by_euler(const Ring& ring, std::vector<typename Ring::value_type>& c,
                     const std::vector<std::pair<std::int64_t, int>>& terms)
{
    const auto top = static_cast<std::int64_t>(c.size()) - 1;
    for (std::int64_t n = 1; n <= top; ++n) {
        auto& target = c[static_cast<std::size_t>(n)];
        for (std::size_t t = 1; t < terms.size() && terms[t].first <= n; ++t) {
            const auto& src = c[static_cast<std::size_t>(n - terms[t].first)];
            if (terms[t].second > 0) {
                ring.sub_from(target, src);
            } else {
                ring.add_to(target, src);
            }
        }
    }
}

void check_theta_arg(ThetaArg a)
{
    if ((a.sign != 1 && a.sign != -1) || a.exponent < 1) {
        throw std::invalid_argument("theta argument must be +/- q^e with e >= 1");
    }
}

} // namespace

std::string_view family_label(FamilyName name)
{
    for (const auto& row : family_table()) {
        if (row.name == name) {
            return row.label;
        }
    }
    throw std::logic_error("unknown family");
}

std::optional<FamilyName> parse_family(std::string_view label)
{
    for (const auto& row : family_table()) {
        if (row.label == label) {
            return row.name;
        }
    }
    return std::nullopt;
}

const std::vector<FamilyName>& all_families()
{
    static const std::vector<FamilyName> names = [] {
        std::vector<FamilyName> out;
        for (const auto& row : family_table()) {
            out.push_back(row.name);
        }
        return out;
    }();
    return names;
}

EtaQuotientSpec family_spec(FamilyName name)
{
    for (const auto& row : family_table()) {
        if (row.name == name) {
            return EtaQuotientSpec{1, 0, row.factors};
        }
    }
    throw std::logic_error("unknown family");
}

std::vector<std::pair<std::int64_t, int>> pentagonal_terms(std::int64_t k, std::int64_t order)
{
    if (k < 1) {
        throw std::invalid_argument("euler product index must be positive");
    }
    std::vector<std::pair<std::int64_t, int>> terms;
    if (order < 0) {
        return terms;
    }
    terms.emplace_back(0, 1);
    for (std::int64_t j = 1;; ++j) {
        std::int64_t lo = k * (j * (3 * j - 1) / 2);
        if (lo > order) {
            break;
        }
        int sign = (j % 2 == 0) ? 1 : -1;
        terms.emplace_back(lo, sign);
        std::int64_t hi = k * (j * (3 * j + 1) / 2);
        if (hi <= order) {
            terms.emplace_back(hi, sign);
        }
    }
    std::sort(terms.begin(), terms.end());
    return terms;
}

template <typename Ring>
BasicSeries<Ring> euler_f(const Ring& ring, std::int64_t k, std::int64_t order)
{
    auto terms = pentagonal_terms(k, order);
    if (order < 0) {
        return BasicSeries<Ring>(ring, order);
    }
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(order + 1), ring.zero());
    for (const auto& [e, s] : terms) {
        c[static_cast<std::size_t>(e)] = ring.from_int(s);
    }
    return BasicSeries<Ring>(ring, 0, std::move(c), order);
}

template <typename Ring>
BasicSeries<Ring> pochhammer(const Ring& ring, std::int64_t a, std::int64_t m, std::int64_t order)
{
    if (a < 1 || m < 1) {
        throw std::invalid_argument("pochhammer needs a >= 1 and m >= 1");
    }
    if (order < 0) {
        return BasicSeries<Ring>(ring, order);
    }
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(order + 1), ring.zero());
    c[0] = ring.from_int(1);
    for (std::int64_t e = a; e <= order; e += m) {
        for (std::int64_t n = order; n >= e; --n) {
            ring.sub_from(c[static_cast<std::size_t>(n)], c[static_cast<std::size_t>(n - e)]);
        }
    }
    return BasicSeries<Ring>(ring, 0, std::move(c), order);
}

template <typename Ring>
BasicSeries<Ring> eta_quotient(const Ring& ring, const EtaQuotientSpec& spec, std::int64_t order)
{
    const std::int64_t base_order = order - spec.qshift;
    if (base_order < 0 || ring.is_zero(ring.from_integer(spec.scalar))) {
        return BasicSeries<Ring>(ring, order);
    }
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(base_order + 1), ring.zero());
    c[0] = ring.from_int(1);
    // Numerator factors first keeps intermediate coefficients small.
    for (const auto& [d, r] : spec.factors) {
        if (d < 1) {
            throw std::invalid_argument("eta factor index must be positive");
        }
        if (r > 0) {
            auto terms = pentagonal_terms(d, base_order);
            for (std::int64_t i = 0; i < r; ++i) {
                multiply_by_euler(ring, c, terms);
            }
        }
    }
    for (const auto& [d, r] : spec.factors) {
        if (r < 0) {
            auto terms = pentagonal_terms(d, base_order);
            for (std::int64_t i = 0; i < -r; ++i) {
                divide_by_euler(ring, c, terms);
            }
        }
    }
    if (spec.scalar != 1) {
        auto s = ring.from_integer(spec.scalar);
        for (auto& x : c) {
            x = ring.multiply(x, s);
        }
    }
    return BasicSeries<Ring>(ring, spec.qshift, std::move(c), order);
}

template <typename Ring>
BasicSeries<Ring> theta_f(const Ring& ring, ThetaArg a, ThetaArg b, std::int64_t order)
{
    check_theta_arg(a);
    check_theta_arg(b);
    if (order < 0) {
        return BasicSeries<Ring>(ring, order);
    }
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(order + 1), ring.zero());
    auto accumulate = [&](std::int64_t k) {
        // Exponents of a and b in the k-th term.
        std::int64_t ta = k * (k + 1) / 2;
        std::int64_t tb = k * (k - 1) / 2;
        std::int64_t e = a.exponent * ta + b.exponent * tb;
        if (e > order) {
            return false;
        }
        bool negative = (a.sign < 0 && ta % 2 != 0) != (b.sign < 0 && tb % 2 != 0);
        auto& slot = c[static_cast<std::size_t>(e)];
        if (negative) {
            ring.sub_from(slot, ring.from_int(1));
        } else {
            ring.add_to(slot, ring.from_int(1));
        }
        return true;
    };
    // e(k) increases in |k| on each side of zero, so each sweep stops at the first overshoot.
    for (std::int64_t k = 0; accumulate(k); ++k) {
    }
    for (std::int64_t k = -1; accumulate(k); --k) {
    }
    return BasicSeries<Ring>(ring, 0, std::move(c), order);
}

template <typename Ring>
BasicSeries<Ring> phi(const Ring& ring, int sign, std::int64_t k, std::int64_t order)
{
    return theta_f(ring, ThetaArg{sign, k}, ThetaArg{sign, k}, order);
}

template <typename Ring>
BasicSeries<Ring> psi(const Ring& ring, std::int64_t k, std::int64_t order)
{
    return theta_f(ring, ThetaArg{1, k}, ThetaArg{1, 3 * k}, order);
}

template <typename Ring>
BasicSeries<Ring> rr_quotient(const Ring& ring, std::int64_t k, std::int64_t order)
{
    if (k < 1) {
        throw std::invalid_argument("rr_quotient needs k >= 1");
    }
    auto num = mul(pochhammer(ring, k, 5 * k, order), pochhammer(ring, 4 * k, 5 * k, order));
    auto den = mul(pochhammer(ring, 2 * k, 5 * k, order), pochhammer(ring, 3 * k, 5 * k, order));
    return mul(num, invert(den));
}

template <typename Ring>
BasicSeries<Ring> lambda_series(const Ring& ring, std::int64_t k, std::int64_t order)
{
    if (k < 1) {
        throw std::invalid_argument("lambda_series needs k >= 1");
    }
    return eta_quotient(ring, eta_spec(1, k, {{k, 4}, {5 * k, 4}}), order);
}

template <typename Ring>
BasicSeries<Ring> family_gf(const Ring& ring, FamilyName name, std::int64_t order)
{
    return eta_quotient(ring, family_spec(name), order);
}

QSeries euler_f(std::int64_t k, std::int64_t order)
{
    return euler_f(IntegerRing{}, k, order);
}
QSeries pochhammer(std::int64_t a, std::int64_t m, std::int64_t order)
{
    return pochhammer(IntegerRing{}, a, m, order);
}
QSeries eta_quotient(const EtaQuotientSpec& spec, std::int64_t order)
{
    return eta_quotient(IntegerRing{}, spec, order);
}
QSeries theta_f(ThetaArg a, ThetaArg b, std::int64_t order)
{
    return theta_f(IntegerRing{}, a, b, order);
}
QSeries phi(int sign, std::int64_t k, std::int64_t order)
{
    return phi(IntegerRing{}, sign, k, order);
}
QSeries psi(std::int64_t k, std::int64_t order)
{
    return psi(IntegerRing{}, k, order);
}
QSeries rr_quotient(std::int64_t k, std::int64_t order)
{
    return rr_quotient(IntegerRing{}, k, order);
}
QSeries lambda_series(std::int64_t k, std::int64_t order)
{
    return lambda_series(IntegerRing{}, k, order);
}
QSeries family_gf(FamilyName name, std::int64_t order)
{
    return family_gf(IntegerRing{}, name, order);
}

#define QSERIES_SPECIAL_INSTANTIATE(R)                                                                                     \
    template BasicSeries<R> euler_f(const R&, std::int64_t, std::int64_t);                                                 \
    template BasicSeries<R> pochhammer(const R&, std::int64_t, std::int64_t, std::int64_t);                                \
    template BasicSeries<R> eta_quotient(const R&, const EtaQuotientSpec&, std::int64_t);                                  \
    template BasicSeries<R> theta_f(const R&, ThetaArg, ThetaArg, std::int64_t);                                           \
    template BasicSeries<R> phi(const R&, int, std::int64_t, std::int64_t);                                                \
    template BasicSeries<R> psi(const R&, std::int64_t, std::int64_t);                                                     \
    template BasicSeries<R> rr_quotient(const R&, std::int64_t, std::int64_t);                                             \
    template BasicSeries<R> lambda_series(const R&, std::int64_t, std::int64_t);                                           \
    template BasicSeries<R> family_gf(const R&, FamilyName, std::int64_t);

QSERIES_SPECIAL_INSTANTIATE(IntegerRing)
QSERIES_SPECIAL_INSTANTIATE(ResidueRing)

#undef QSERIES_SPECIAL_INSTANTIATE

} // namespace qseries
