#include "qseries/series.hpp"

#include <algorithm>
#include <string>

namespace qseries {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return -floor_div(-a, b);
}

template <typename Ring>
BasicSeries<Ring>::BasicSeries(Ring ring, std::int64_t order)
    : ring_(std::move(ring)), valuation_(order + 1), order_(order)
{
}

template <typename Ring>
BasicSeries<Ring>::BasicSeries(Ring ring, std::int64_t valuation, std::vector<value_type> coeffs, std::int64_t order)
    : ring_(std::move(ring)), valuation_(valuation), coeffs_(std::move(coeffs)), order_(order)
{
    if (valuation_ > order_) {
        coeffs_.clear();
        valuation_ = order_ + 1;
        return;
    }
    coeffs_.resize(static_cast<std::size_t>(order_ - valuation_ + 1), ring_.zero());
    canonicalize();
}

template <typename Ring>
void BasicSeries<Ring>::canonicalize()
{
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [this](const value_type& c) { return !ring_.is_zero(c); });
    if (first == coeffs_.end()) {
        coeffs_.clear();
        valuation_ = order_ + 1;
        return;
    }
    auto skip = first - coeffs_.begin();
    coeffs_.erase(coeffs_.begin(), first);
    valuation_ += skip;
}

template <typename Ring>
typename BasicSeries<Ring>::value_type BasicSeries<Ring>::coeff(std::int64_t n) const
{
    if (n > order_) {
        throw InsufficientPrecision("coefficient of q^" + std::to_string(n) + " requested but the series is known only through q^" +
                                    std::to_string(order_));
    }
    if (n < valuation_) {
        return ring_.zero();
    }
    return coeffs_[static_cast<std::size_t>(n - valuation_)];
}

template <typename Ring>
BasicSeries<Ring> monomial(const Ring& ring, const typename Ring::value_type& c, std::int64_t e, std::int64_t order)
{
    if (e > order) {
        throw InvalidOrder("monomial q^" + std::to_string(e) + " lies beyond order " + std::to_string(order));
    }
    return BasicSeries<Ring>(ring, e, {c}, order);
}

template <typename Ring>
BasicSeries<Ring> add(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b)
{
    const Ring& ring = a.ring();
    std::int64_t order = std::min(a.order(), b.order());
    std::int64_t val = std::min(a.valuation(), b.valuation());
    if (val > order) {
        return BasicSeries<Ring>(ring, order);
    }
    std::vector<typename Ring::value_type> out(static_cast<std::size_t>(order - val + 1), ring.zero());
    for (const auto* s : {&a, &b}) {
        auto cs = s->coefficients();
        std::int64_t last = std::min<std::int64_t>(order, s->valuation() + static_cast<std::int64_t>(cs.size()) - 1);
        for (std::int64_t n = s->valuation(); n <= last; ++n) {
            ring.add_to(out[static_cast<std::size_t>(n - val)], cs[static_cast<std::size_t>(n - s->valuation())]);
        }
    }
    return BasicSeries<Ring>(ring, val, std::move(out), order);
}

template <typename Ring>
BasicSeries<Ring> neg(const BasicSeries<Ring>& a)
{
    std::vector<typename Ring::value_type> out(a.coefficients().begin(), a.coefficients().end());
    for (auto& c : out) {
        c = a.ring().negate(c);
    }
    return BasicSeries<Ring>(a.ring(), a.valuation(), std::move(out), a.order());
}

template <typename Ring>
BasicSeries<Ring> sub(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b)
{
    return add(a, neg(b));
}

template <typename Ring>
BasicSeries<Ring> scale(const BasicSeries<Ring>& a, const typename Ring::value_type& c)
{
    std::vector<typename Ring::value_type> out(a.coefficients().begin(), a.coefficients().end());
    for (auto& x : out) {
        x = a.ring().multiply(x, c);
    }
    return BasicSeries<Ring>(a.ring(), a.valuation(), std::move(out), a.order());
}

template <typename Ring>
BasicSeries<Ring> mul(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b)
{
    const Ring& ring = a.ring();
    std::int64_t order = std::min(a.order() + b.valuation(), b.order() + a.valuation());
    if (a.is_zero() || b.is_zero()) {
        return BasicSeries<Ring>(ring, order);
    }
    std::int64_t val = a.valuation() + b.valuation();
    auto ca = a.coefficients();
    auto cb = b.coefficients();
    const auto la = static_cast<std::int64_t>(ca.size());
    const auto lb = static_cast<std::int64_t>(cb.size());
    const std::int64_t len = order - val + 1;
    std::vector<typename Ring::value_type> out(static_cast<std::size_t>(len), ring.zero());
    for (std::int64_t n = 0; n < len; ++n) {
        std::int64_t lo = std::max<std::int64_t>(0, n - (lb - 1));
        std::int64_t hi = std::min(n, la - 1);
        if (lo > hi) {
            continue;
        }
        out[static_cast<std::size_t>(n)] = ring.dot_reverse(ca.data() + lo, cb.data() + (n - lo), static_cast<std::size_t>(hi - lo + 1));
    }
    return BasicSeries<Ring>(ring, val, std::move(out), order);
}

template <typename Ring>
BasicSeries<Ring> invert(const BasicSeries<Ring>& a)
{
    const Ring& ring = a.ring();
    if (a.is_zero()) {
        throw NotInvertible("cannot invert a series that vanishes through q^" + std::to_string(a.order()));
    }
    auto ca = a.coefficients();
    auto lead_inv = ring.inverse(ca[0]);
    if (!lead_inv) {
        throw NotInvertible("leading coefficient " + ring.to_string(ca[0]) + " is not a unit");
    }
    const auto len = static_cast<std::int64_t>(ca.size());
    std::vector<typename Ring::value_type> out(static_cast<std::size_t>(len), ring.zero());
    out[0] = *lead_inv;
    for (std::int64_t n = 1; n < len; ++n) {
        auto s = ring.dot_reverse(ca.data() + 1, out.data() + (n - 1), static_cast<std::size_t>(n));
        out[static_cast<std::size_t>(n)] = ring.negate(ring.multiply(*lead_inv, s));
    }
    return BasicSeries<Ring>(ring, -a.valuation(), std::move(out), a.order() - 2 * a.valuation());
}

template <typename Ring>
BasicSeries<Ring> pow_int(const BasicSeries<Ring>& a, std::int64_t k)
{
    if (k < 0) {
        return pow_int(invert(a), -k);
    }
    const Ring& ring = a.ring();
    if (k == 0) {
        std::int64_t order = a.is_zero() ? std::max<std::int64_t>(a.order(), 0) : a.order() - a.valuation();
        return monomial(ring, ring.from_int(1), 0, order);
    }
    BasicSeries<Ring> result = a;
    BasicSeries<Ring> base = a;
    bool have = false;
    while (k > 0) {
        if (k & 1) {
            result = have ? mul(result, base) : base;
            have = true;
        }
        k >>= 1;
        if (k > 0) {
            base = mul(base, base);
        }
    }
    return result;
}

template <typename Ring>
BasicSeries<Ring> shift_q(const BasicSeries<Ring>& a, std::int64_t s)
{
    std::vector<typename Ring::value_type> out(a.coefficients().begin(), a.coefficients().end());
    return BasicSeries<Ring>(a.ring(), a.valuation() + s, std::move(out), a.order() + s);
}

template <typename Ring>
BasicSeries<Ring> subst_power(const BasicSeries<Ring>& a, std::int64_t k)
{
    if (k < 1) {
        throw std::invalid_argument("subst_power needs k >= 1, got " + std::to_string(k));
    }
    const Ring& ring = a.ring();
    // q^(order+1) is the first unknown term; it maps to q^(k*(order+1)).
    std::int64_t order = k * a.order() + k - 1;
    if (a.is_zero()) {
        return BasicSeries<Ring>(ring, order);
    }
    auto ca = a.coefficients();
    std::vector<typename Ring::value_type> out((ca.size() - 1) * static_cast<std::size_t>(k) + 1, ring.zero());
    for (std::size_t i = 0; i < ca.size(); ++i) {
        out[i * static_cast<std::size_t>(k)] = ca[i];
    }
    return BasicSeries<Ring>(ring, k * a.valuation(), std::move(out), order);
}

template <typename Ring>
BasicSeries<Ring> negate_q(const BasicSeries<Ring>& a)
{
    std::vector<typename Ring::value_type> out(a.coefficients().begin(), a.coefficients().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if ((a.valuation() + static_cast<std::int64_t>(i)) % 2 != 0) {
            out[i] = a.ring().negate(out[i]);
        }
    }
    return BasicSeries<Ring>(a.ring(), a.valuation(), std::move(out), a.order());
}

template <typename Ring>
BasicSeries<Ring> extract_ap(const BasicSeries<Ring>& a, std::int64_t m, std::int64_t j)
{
    if (m < 1 || j < 0 || j >= m) {
        throw std::invalid_argument("extract_ap needs m >= 1 and 0 <= j < m, got m=" + std::to_string(m) + " j=" + std::to_string(j));
    }
    const Ring& ring = a.ring();
    std::int64_t order = floor_div(a.order() - j, m);
    std::int64_t val = ceil_div(a.valuation() - j, m);
    if (val > order) {
        return BasicSeries<Ring>(ring, order);
    }
    std::vector<typename Ring::value_type> out;
    out.reserve(static_cast<std::size_t>(order - val + 1));
    for (std::int64_t n = val; n <= order; ++n) {
        out.push_back(a.coeff(m * n + j));
    }
    return BasicSeries<Ring>(ring, val, std::move(out), order);
}

template <typename Ring>
BasicSeries<Ring> huff(const BasicSeries<Ring>& a, std::int64_t k)
{
    if (k < 1) {
        throw std::invalid_argument("huff needs k >= 1, got " + std::to_string(k));
    }
    const Ring& ring = a.ring();
    // Exponents up to the next multiple of k past the order are known zeros.
    std::int64_t order = k * floor_div(a.order(), k) + k - 1;
    std::vector<typename Ring::value_type> out(a.coefficients().begin(), a.coefficients().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::int64_t e = a.valuation() + static_cast<std::int64_t>(i);
        if (e % k != 0) {
            out[i] = ring.zero();
        }
    }
    return BasicSeries<Ring>(ring, a.valuation(), std::move(out), order);
}

template <typename Ring>
bool eq_to_order(const BasicSeries<Ring>& a, const BasicSeries<Ring>& b, std::int64_t order)
{
    if (order > std::min(a.order(), b.order())) {
        throw InsufficientPrecision("comparison through q^" + std::to_string(order) + " exceeds known orders " +
                                    std::to_string(a.order()) + " and " + std::to_string(b.order()));
    }
    for (std::int64_t n = std::min(a.valuation(), b.valuation()); n <= order; ++n) {
        if (a.coeff(n) != b.coeff(n)) {
            return false;
        }
    }
    return true;
}

template <typename Ring>
BasicSeries<Ring> truncate(const BasicSeries<Ring>& a, std::int64_t order)
{
    if (order > a.order()) {
        throw InsufficientPrecision("cannot truncate to q^" + std::to_string(order) + ": series known only through q^" +
                                    std::to_string(a.order()));
    }
    auto ca = a.coefficients();
    std::int64_t keep = std::clamp<std::int64_t>(order - a.valuation() + 1, 0, static_cast<std::int64_t>(ca.size()));
    std::vector<typename Ring::value_type> out(ca.begin(), ca.begin() + keep);
    return BasicSeries<Ring>(a.ring(), a.valuation(), std::move(out), order);
}

ModSeries reduce(const QSeries& a, const ResidueRing& ring)
{
    std::vector<ResidueRing::value_type> out;
    out.reserve(a.coefficients().size());
    for (const auto& c : a.coefficients()) {
        out.push_back(ring.from_integer(c));
    }
    return ModSeries(ring, a.valuation(), std::move(out), a.order());
}

QSeries monomial(long c, std::int64_t e, std::int64_t order)
{
    return monomial(IntegerRing{}, mpz_class(c), e, order);
}

QSeries from_coefficients(std::int64_t valuation, std::vector<long> coeffs, std::int64_t order)
{
    std::vector<mpz_class> big(coeffs.begin(), coeffs.end());
    return QSeries(IntegerRing{}, valuation, std::move(big), order);
}

#define QSERIES_INSTANTIATE(R)                                                                                             \
    template class BasicSeries<R>;                                                                                         \
    template BasicSeries<R> monomial(const R&, const R::value_type&, std::int64_t, std::int64_t);                          \
    template BasicSeries<R> add(const BasicSeries<R>&, const BasicSeries<R>&);                                             \
    template BasicSeries<R> sub(const BasicSeries<R>&, const BasicSeries<R>&);                                             \
    template BasicSeries<R> neg(const BasicSeries<R>&);                                                                    \
    template BasicSeries<R> scale(const BasicSeries<R>&, const R::value_type&);                                            \
    template BasicSeries<R> mul(const BasicSeries<R>&, const BasicSeries<R>&);                                             \
    template BasicSeries<R> invert(const BasicSeries<R>&);                                                                 \
    template BasicSeries<R> pow_int(const BasicSeries<R>&, std::int64_t);                                                  \
    template BasicSeries<R> shift_q(const BasicSeries<R>&, std::int64_t);                                                  \
    template BasicSeries<R> subst_power(const BasicSeries<R>&, std::int64_t);                                              \
    template BasicSeries<R> negate_q(const BasicSeries<R>&);                                                               \
    template BasicSeries<R> extract_ap(const BasicSeries<R>&, std::int64_t, std::int64_t);                                 \
    template BasicSeries<R> huff(const BasicSeries<R>&, std::int64_t);                                                     \
    template bool eq_to_order(const BasicSeries<R>&, const BasicSeries<R>&, std::int64_t);                                 \
    template BasicSeries<R> truncate(const BasicSeries<R>&, std::int64_t);

QSERIES_INSTANTIATE(IntegerRing)
QSERIES_INSTANTIATE(ResidueRing)

#undef QSERIES_INSTANTIATE

} // namespace qseries
