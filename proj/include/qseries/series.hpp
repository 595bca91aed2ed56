#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/ring.hpp"

namespace qseries {

/// Truncated Laurent series in q.
///
/// The coefficient of q^(valuation + i) is stored at index i. Every coefficient
/// of q^n with n <= order is known; nothing beyond order is represented, and
/// asking for it raises InsufficientPrecision rather than returning zero.
///
/// Canonical form: leading zeros are stripped, so a nonzero series has a
/// nonzero first stored coefficient. A series whose known coefficients all
/// vanish stores nothing and reports valuation == order + 1.
template <typename Ring>
class BasicSeries {
public:
    using ring_type = Ring;
    using value_type = typename Ring::value_type;

    /// The zero series known through q^order.
    BasicSeries(Ring ring, std::int64_t order);

    /// coeffs[i] is the coefficient of q^(valuation + i). Entries past the
    /// order are dropped; missing entries up to the order are zero.
    BasicSeries(Ring ring, std::int64_t valuation, std::vector<value_type> coeffs, std::int64_t order);

    const Ring& ring() const noexcept { return ring_; }
    std::int64_t valuation() const noexcept { return valuation_; }
    std::int64_t order() const noexcept { return order_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::span<const value_type> coefficients() const noexcept { return coeffs_; }

    /// Coefficient of q^n. Zero below the valuation; throws past the order.
    value_type coeff(std::int64_t n) const;

    bool operator==(const BasicSeries&) const = default;

private:
    void canonicalize();

    Ring ring_;
    std::int64_t valuation_;
    std::vector<value_type> coeffs_;
    std::int64_t order_;
};

using QSeries = BasicSeries<IntegerRing>;
using ModSeries = BasicSeries<ResidueRing>;
using AnySeries = std::variant<QSeries, ModSeries>;

template <typename Ring>
BasicSeries<Ring> monomial(const Ring& ring, const typename Ring::value_type& c, std::int64_t e, std::int64_t order);

template <typename Ring>
BasicSeries<Ring> add(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b);
template <typename Ring>
BasicSeries<Ring> sub(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b);
template <typename Ring>
BasicSeries<Ring> neg(const BasicSeries<Ring>& a);
template <typename Ring>
BasicSeries<Ring> scale(const BasicSeries<Ring>& a, const typename Ring::value_type& c);

/// Cauchy product. The result order is min(a.order + b.valuation, b.order + a.valuation).
template <typename Ring>
BasicSeries<Ring> mul(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b);

/// Multiplicative inverse; needs a nonzero series with unit leading coefficient.
template <typename Ring>
BasicSeries<Ring> invert(const BasicSeries<Ring>& a);

template <typename Ring>
BasicSeries<Ring> pow_int(const BasicSeries<Ring>& a, std::int64_t k);

/// Multiply by q^s.
template <typename Ring>
BasicSeries<Ring> shift_q(const BasicSeries<Ring>& a, std::int64_t s);

/// q -> q^k.
template <typename Ring>
BasicSeries<Ring> subst_power(const BasicSeries<Ring>& a, std::int64_t k);

/// q -> -q.
template <typename Ring>
BasicSeries<Ring> negate_q(const BasicSeries<Ring>& a);

/// Series whose n-th coefficient is the (m*n + j)-th coefficient of a.
template <typename Ring>
BasicSeries<Ring> extract_ap(const BasicSeries<Ring>& a, std::int64_t m, std::int64_t j);

/// Keeps the terms whose exponent is divisible by k, without re-indexing.
template <typename Ring>
BasicSeries<Ring> huff(const BasicSeries<Ring>& a, std::int64_t k);

template <typename Ring>
typename Ring::value_type coeff(const BasicSeries<Ring>& a, std::int64_t n)
{
    return a.coeff(n);
}

/// True iff every coefficient of q^n, n <= order, agrees.
template <typename Ring>
bool eq_to_order(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b, std::int64_t order);

template <typename Ring>
BasicSeries<Ring> truncate(const BasicSeries<Ring>& a, std::int64_t order);

/// Reduce exact coefficients modulo ring.modulus().
ModSeries reduce(const QSeries& a, const ResidueRing& ring);

template <typename Ring>
BasicSeries<Ring> operator+(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b)
{
    return add(a, b);
}
template <typename Ring>
BasicSeries<Ring> operator-(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b)
{
    return sub(a, b);
}
template <typename Ring>
BasicSeries<Ring> operator-(const BasicSeries<Ring>& a)
{
    return neg(a);
}
template <typename Ring>
BasicSeries<Ring> operator*(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b)
{
    return mul(a, b);
}

// Exact-mode conveniences.
QSeries monomial(long c, std::int64_t e, std::int64_t order);
QSeries from_coefficients(std::int64_t valuation, std::vector<long> coeffs, std::int64_t order);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

} // namespace qseries
