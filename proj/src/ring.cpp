#include "qseries/ring.hpp"

#include <charconv>
#include <stdexcept>

namespace qseries {

ResidueRing::ResidueRing(std::uint64_t modulus) : modulus_(modulus)
{
    if (modulus < 2 || modulus > max_modulus) {
        throw std::invalid_argument("residue modulus must lie in [2, 2^62], got " + std::to_string(modulus));
    }
}

ResidueRing::value_type ResidueRing::from_int(std::int64_t v) const
{
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(modulus_);
    if (r < 0) {
        r += modulus_;
    }
    return static_cast<value_type>(r);
}

ResidueRing::value_type ResidueRing::from_integer(const mpz_class& v) const
{
    mpz_class r;
    mpz_class m(static_cast<unsigned long>(modulus_));
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r.get_ui();
}

ResidueRing::value_type ResidueRing::dot_reverse(const value_type* a, const value_type* b, std::size_t count) const
{
    if (modulus_ <= (std::uint64_t(1) << 32)) {
        // Each product is below 2^64, so 2^64 of them fit in the accumulator.
        unsigned __int128 acc = 0;
        for (std::size_t t = 0; t < count; ++t) {
            acc += static_cast<unsigned __int128>(a[t]) * *(b - t);
        }
        return static_cast<value_type>(acc % modulus_);
    }
    value_type acc = 0;
    for (std::size_t t = 0; t < count; ++t) {
        add_product(acc, a[t], *(b - t));
    }
    return acc;
}

std::optional<ResidueRing::value_type> ResidueRing::inverse(value_type x) const
{
    // Extended Euclid on signed 128-bit values.
    __int128 r0 = modulus_, r1 = x % modulus_;
    __int128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 quot = r0 / r1;
        __int128 tmp = r0 - quot * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - quot * s1;
        s0 = s1;
        s1 = tmp;
    }
    if (r0 != 1) {
        return std::nullopt;
    }
    if (s0 < 0) {
        s0 += modulus_;
    }
    return static_cast<value_type>(s0);
}

CoefficientMode CoefficientMode::modular(std::uint64_t modulus)
{
    ResidueRing check(modulus);
    return CoefficientMode(check.modulus());
}

CoefficientMode CoefficientMode::parse(std::string_view text)
{
    if (text == "exact") {
        return exact();
    }
    constexpr std::string_view prefix = "mod:";
    if (text.substr(0, prefix.size()) == prefix) {
        auto digits = text.substr(prefix.size());
        std::uint64_t m = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
        if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
            return modular(m);
        }
    }
    throw std::invalid_argument("coefficient mode must be 'exact' or 'mod:<m>', got '" + std::string(text) + "'");
}

std::string CoefficientMode::to_string() const
{
    return is_exact() ? std::string("exact") : "mod:" + std::to_string(modulus_);
}

} // namespace qseries
