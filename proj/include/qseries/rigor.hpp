#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qseries/catalog.hpp"
#include "qseries/expr.hpp"

namespace qseries {

std::int64_t index_gamma0(std::int64_t N);
std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

struct Cusp {
    std::int64_t a;
    std::int64_t c;  // c | N; c == N is the cusp at infinity
};

/// One representative a/c per class; c | N contributes phi(gcd(c, N/c)) classes.
std::vector<Cusp> cusps_gamma0(std::int64_t N);

/// Width of the cusp a/c on Gamma0(N): N / gcd(c^2, N).
std::int64_t cusp_width(std::int64_t c, std::int64_t N);

/// Order of prod eta(d tau)^r_d at a cusp with denominator c, in the local
/// uniformizer there:
///     (N / 24) * sum_d gcd(c, d)^2 r_d / (gcd(c, N/c) * c * d).
/// At c = N this is sum d r_d / 24. For N = 8 and f2^4 f8^8 / f4^12:
///     c = 1: (8/24)(4/2 + 8/8 - 12/4)       = 0
///     c = 2: (8/24)(16/(2*2*2) + 8*4/(2*2*8) - 12*4/(2*2*4)) = 0
///     c = 4: (8/24)(4*4/(2*4*2) + 16*8/(2*4*8) - 16*12/(2*4*4)) = -1
///     c = 8: (8 + 64 - 48) / 24              = 1
/// and the degree sum phi(g) * order over the cusps is 0.
mpq_class cusp_order(const std::map<std::int64_t, std::int64_t>& factors, std::int64_t c, std::int64_t N);

/// ceil(k * index / 12) for even k >= 0.
std::int64_t sturm_bound(std::int64_t k, std::int64_t N);

/// coefficient * q^qshift * prod f_d^r_d.
struct EtaTerm {
    mpq_class coefficient;
    std::int64_t qshift = 0;
    std::map<std::int64_t, std::int64_t> factors;
};

/// Expands e into a sum of eta terms with like terms merged, in order of first
/// appearance. Returns the reason on failure (theta atoms, R(q), H, AP, division by a sum).
struct EtaExpansion {
    std::vector<EtaTerm> terms;
    std::string failure;
    bool ok() const { return failure.empty(); }
};
EtaExpansion expand_eta_sum(const Expr& e);

enum class RigorVerdict { Proven, NotApplicable, Refuted };

struct CuspRow {
    std::int64_t c = 0;
    std::int64_t classes = 0;
    std::int64_t width = 0;
    std::vector<mpq_class> orders;  // one per normalized term
};

struct RigorCertificate {
    std::string name;
    RigorVerdict verdict = RigorVerdict::NotApplicable;
    std::string form;  // "direct" or "doubled"
    std::string reason;
    std::int64_t level = 0;
    std::string reference;
    std::vector<EtaTerm> terms;  // normalized by the reference; terms[0] is 1
    std::vector<CuspRow> cusps;
    std::int64_t pole_bound = 0;
    std::int64_t checked_order = -1;
    std::optional<std::int64_t> failing_exponent;

    /// "PROVEN <name> level=<N> B=<B>", "NOT_APPLICABLE <name> reason=<...>" or "FAIL <name> n=<n> ...".
    std::string summary_line() const;
    std::string render() const;
};

/// Proves lhs == rhs for sums of weight-equal eta quotients: divide by a
/// reference term, check the Ligozat conditions on Gamma0(N), bound the poles
/// away from infinity by B and check that the difference vanishes through
/// q^V with V > B. If the square condition fails, the squared identity is tried
/// together with lhs + rhs != 0.
RigorCertificate prove(const IdentityEntry& entry);

} // namespace qseries
