#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qseries/series.hpp"

namespace qseries {

/// scalar * q^qshift * prod_d f_d^(r_d), with f_d = (q^d; q^d)_inf.
struct EtaQuotientSpec {
    mpz_class scalar = 1;
    std::int64_t qshift = 0;
    std::map<std::int64_t, std::int64_t> factors;

    /// Drops zero exponents; throws on a non-positive index.
    void normalize();

    EtaQuotientSpec& operator*=(const EtaQuotientSpec& other);
    EtaQuotientSpec inverse_factors() const;
    EtaQuotientSpec pow(std::int64_t k) const;
    std::int64_t weight_numerator() const;  // sum of exponents (twice the weight)

    /// The same quotient with q replaced by q^k.
    EtaQuotientSpec substitute_power(std::int64_t k) const;
    /// The same quotient with q replaced by -q, via f_d(-q) = f_2d^3 / (f_d f_4d) for odd d.
    EtaQuotientSpec negate_q() const;

    bool operator==(const EtaQuotientSpec&) const = default;
};

EtaQuotientSpec eta_spec(std::int64_t scalar, std::int64_t qshift, std::map<std::int64_t, std::int64_t> factors);

/// +/- q^exponent as an argument of Ramanujan's f(a, b).
struct ThetaArg {
    int sign = 1;
    std::int64_t exponent = 1;

    bool operator==(const ThetaArg&) const = default;
};

enum class FamilyName { Pstar, M, Tstar, A, B, K, L };

std::string_view family_label(FamilyName name);
std::optional<FamilyName> parse_family(std::string_view label);
const std::vector<FamilyName>& all_families();
EtaQuotientSpec family_spec(FamilyName name);

/// (exponent, sign) pairs of the pentagonal expansion of f_k through q^order.
std::vector<std::pair<std::int64_t, int>> pentagonal_terms(std::int64_t k, std::int64_t order);

template <typename Ring>
BasicSeries<Ring> euler_f(const Ring& ring, std::int64_t k, std::int64_t order);

/// (q^a; q^m)_inf by direct product.
template <typename Ring>
BasicSeries<Ring> pochhammer(const Ring& ring, std::int64_t a, std::int64_t m, std::int64_t order);

/// Uses sparse pentagonal multiplication and division, so the cost is
/// O(sum |r_d| * order * sqrt(order / d)) rather than dense convolution.
template <typename Ring>
BasicSeries<Ring> eta_quotient(const Ring& ring, const EtaQuotientSpec& spec, std::int64_t order);

template <typename Ring>
BasicSeries<Ring> theta_f(const Ring& ring, ThetaArg a, ThetaArg b, std::int64_t order);

/// phi(sign * q^k)
template <typename Ring>
BasicSeries<Ring> phi(const Ring& ring, int sign, std::int64_t k, std::int64_t order);

/// psi(q^k)
template <typename Ring>
BasicSeries<Ring> psi(const Ring& ring, std::int64_t k, std::int64_t order);

/// Rogers-Ramanujan quotient R(q^k) = (q^k;q^5k)(q^4k;q^5k) / ((q^2k;q^5k)(q^3k;q^5k)).
template <typename Ring>
BasicSeries<Ring> rr_quotient(const Ring& ring, std::int64_t k, std::int64_t order);

/// q^k f_k^4 f_5k^4
template <typename Ring>
BasicSeries<Ring> lambda_series(const Ring& ring, std::int64_t k, std::int64_t order);

template <typename Ring>
BasicSeries<Ring> family_gf(const Ring& ring, FamilyName name, std::int64_t order);

// Exact-mode shorthands.
QSeries euler_f(std::int64_t k, std::int64_t order);
QSeries pochhammer(std::int64_t a, std::int64_t m, std::int64_t order);
QSeries eta_quotient(const EtaQuotientSpec& spec, std::int64_t order);
QSeries theta_f(ThetaArg a, ThetaArg b, std::int64_t order);
QSeries phi(int sign, std::int64_t k, std::int64_t order);
QSeries psi(std::int64_t k, std::int64_t order);
QSeries rr_quotient(std::int64_t k, std::int64_t order);
QSeries lambda_series(std::int64_t k, std::int64_t order);
QSeries family_gf(FamilyName name, std::int64_t order);

} // namespace qseries
