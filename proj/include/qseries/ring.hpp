#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qseries {

/// Arbitrary-precision integer coefficients.
class IntegerRing {
public:
    using value_type = mpz_class;

    value_type zero() const { return value_type(0); }
    value_type from_int(std::int64_t v) const { return value_type(static_cast<long>(v)); }
    value_type from_integer(const mpz_class& v) const { return v; }

    bool is_zero(const value_type& v) const { return sgn(v) == 0; }
    bool is_one(const value_type& v) const { return v == 1; }

    void add_to(value_type& acc, const value_type& x) const { acc += x; }
    void sub_from(value_type& acc, const value_type& x) const { acc -= x; }
    void add_product(value_type& acc, const value_type& a, const value_type& b) const
    {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    value_type negate(const value_type& x) const { return -x; }
    value_type multiply(const value_type& a, const value_type& b) const { return a * b; }

    // Sum of a[t] * b[-t] for t in [0, count); b walks backwards.
    value_type dot_reverse(const value_type* a, const value_type* b, std::size_t count) const
    {
        value_type acc = 0;
        for (std::size_t t = 0; t < count; ++t) {
            mpz_addmul(acc.get_mpz_t(), a[t].get_mpz_t(), (b - t)->get_mpz_t());
        }
        return acc;
    }

    std::optional<value_type> inverse(const value_type& x) const
    {
        if (x == 1 || x == -1) {
            return x;
        }
        return std::nullopt;
    }

    mpz_class to_integer(const value_type& v) const { return v; }
    std::string to_string(const value_type& v) const { return v.get_str(); }

    bool operator==(const IntegerRing&) const = default;
};

/// Residues modulo a word-sized modulus m; every stored value lies in [0, m).
class ResidueRing {
public:
    using value_type = std::uint64_t;

    static constexpr std::uint64_t max_modulus = std::uint64_t(1) << 62;

    explicit ResidueRing(std::uint64_t modulus);

    std::uint64_t modulus() const noexcept { return modulus_; }

    value_type zero() const { return 0; }
    value_type from_int(std::int64_t v) const;
    value_type from_integer(const mpz_class& v) const;

    bool is_zero(value_type v) const { return v == 0; }
    bool is_one(value_type v) const { return v == 1 % modulus_; }

    void add_to(value_type& acc, value_type x) const
    {
        acc += x;
        if (acc >= modulus_) {
            acc -= modulus_;
        }
    }
    void sub_from(value_type& acc, value_type x) const { acc = acc >= x ? acc - x : acc + (modulus_ - x); }
    void add_product(value_type& acc, value_type a, value_type b) const
    {
        acc = static_cast<value_type>((static_cast<unsigned __int128>(a) * b + acc) % modulus_);
    }
    value_type negate(value_type x) const { return x == 0 ? 0 : modulus_ - x; }
    value_type multiply(value_type a, value_type b) const
    {
        return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % modulus_);
    }

    value_type dot_reverse(const value_type* a, const value_type* b, std::size_t count) const;

    std::optional<value_type> inverse(value_type x) const;

    mpz_class to_integer(value_type v) const { return mpz_class(static_cast<unsigned long>(v)); }
    std::string to_string(value_type v) const { return std::to_string(v); }

    bool operator==(const ResidueRing&) const = default;

private:
    std::uint64_t modulus_;
};

/// Selects the coefficient backend: exact integers or residues mod m.
class CoefficientMode {
public:
    static CoefficientMode exact() { return CoefficientMode(0); }
    static CoefficientMode modular(std::uint64_t modulus);

    /// Accepts "exact" or "mod:<m>".
    static CoefficientMode parse(std::string_view text);

    bool is_exact() const noexcept { return modulus_ == 0; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::string to_string() const;

    bool operator==(const CoefficientMode&) const = default;

private:
    explicit CoefficientMode(std::uint64_t modulus) : modulus_(modulus) {}
    std::uint64_t modulus_;
};

} // namespace qseries
