#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/expr.hpp"
#include "qseries/ring.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// a(m*n + j) == 0 (mod modulus) for 0 <= n <= n_max.
struct CongruenceClaim {
    std::string name;
    Expr series;
    std::int64_t m = 1;
    std::int64_t j = 0;
    std::uint64_t modulus = 2;
    std::int64_t n_max = 0;
    std::string source;
};

/// For alpha = 1..alpha_max: m = c*p^alpha, offset = offset_mult*p^alpha - offset_sub,
/// modulus = mod_mult*p^(alpha + mod_exp).
struct FamilyClaim {
    std::string name;
    Expr series;
    std::int64_t p = 2;
    std::int64_t c = 1;
    std::int64_t offset_mult = 1;
    std::int64_t offset_sub = 1;
    std::int64_t mod_mult = 1;
    std::int64_t mod_exp = 0;
    std::int64_t alpha_max = 1;
    std::int64_t n_max = 0;
    std::string source;

    std::int64_t progression(std::int64_t alpha) const;
    std::int64_t offset(std::int64_t alpha) const;
    std::uint64_t modulus(std::int64_t alpha) const;
    CongruenceClaim instance(std::int64_t alpha) const;
};

/// a(m*n + j) == scalar * a(n - shift) for 0 <= n <= n_max, with a(k) = 0 for k < 0.
struct ScalarRelationClaim {
    std::string name;
    Expr series;
    std::int64_t m = 2;
    std::int64_t j = 0;
    std::int64_t scalar = 0;
    std::int64_t shift = 0;
    std::int64_t n_max = 0;
    std::string source;
};

/// Tests a scalar relation with the stated shift and every shift in [0, max_shift],
/// reporting which ones hold.
struct ShiftProbeClaim {
    std::string name;
    Expr series;
    std::int64_t m = 2;
    std::int64_t j = 0;
    std::int64_t scalar = 0;
    std::int64_t stated_shift = 0;
    std::int64_t max_shift = 0;
    std::int64_t n_max = 0;
    std::string source;
};

struct ClaimSet {
    std::vector<CongruenceClaim> congruences;
    std::vector<FamilyClaim> families;
    std::vector<ScalarRelationClaim> scalars;
    std::vector<ShiftProbeClaim> probes;

    std::size_t size() const { return congruences.size() + families.size() + scalars.size() + probes.size(); }
};

enum class ClaimStatus { Pass, Fail, Resolved, Error };

struct ClaimResult {
    std::string name;
    ClaimStatus status = ClaimStatus::Pass;
    std::string line;
    // First counterexample on Fail.
    std::optional<std::int64_t> alpha;
    std::optional<std::int64_t> n;
    std::string residue;
    // Shift probes: every shift in [0, max_shift] that holds.
    std::vector<std::int64_t> holding_shifts;
    bool stated_holds = false;
};

/// Expands each series once per coefficient mode at the largest order requested.
class SeriesCache {
public:
    /// Announces a future request so a single expansion can serve all of them.
    void reserve_modular(const Expr& e, std::uint64_t modulus, std::int64_t order);
    void reserve_exact(const Expr& e, std::int64_t order);

    /// Series whose coefficients are correct modulo a multiple of `modulus`.
    const ModSeries& modular(const Expr& e, std::uint64_t modulus, std::int64_t order);
    const QSeries& exact(const Expr& e, std::int64_t order);

private:
    struct ModPlan {
        std::uint64_t modulus = 1;
        std::int64_t order = 0;
        std::optional<ModSeries> value;
    };
    struct ExactPlan {
        std::int64_t order = 0;
        std::optional<QSeries> value;
    };
    std::map<std::string, Expr> exprs_;
    std::map<std::string, ModPlan> mod_;
    std::map<std::string, ExactPlan> exact_;
};

/// Modular mode (the default) reduces with the claim's modulus; exact mode
/// reduces exact coefficients.
ClaimResult check_claim(const CongruenceClaim& c, const CoefficientMode& mode, SeriesCache* cache = nullptr);
ClaimResult check_claim(const CongruenceClaim& c);
ClaimResult check_family(const FamilyClaim& f, SeriesCache* cache = nullptr);
/// Exact mode only. Also confirms the congruence modulo |scalar| that the relation implies.
ClaimResult check_scalar_relation(const ScalarRelationClaim& s, SeriesCache* cache = nullptr);
ClaimResult probe_shift(const ShiftProbeClaim& p, SeriesCache* cache = nullptr);

/// Offset tokens such as "pα-1", "p^a-2" or "2pα-1", giving (multiplier, subtrahend).
std::pair<std::int64_t, std::int64_t> parse_offset_token(std::string_view token);

const ClaimSet& builtin_claims();
std::string_view builtin_claims_text();
/// Blocks [congruence], [family], [scalar] and [shiftprobe]; names must be unique.
ClaimSet parse_claim_file(std::string_view text);

/// Every claim, sorted by name.
std::vector<ClaimResult> run_claims(const ClaimSet& claims);

} // namespace qseries
