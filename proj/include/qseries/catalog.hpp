#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/expr.hpp"

namespace qseries {

struct IdentityEntry {
    std::string name;
    Expr lhs;
    Expr rhs;
    std::string source;
    std::int64_t default_order = 500;
};

/// The built-in identities, sorted by name.
const std::vector<IdentityEntry>& builtin_catalog();
const IdentityEntry* find_identity(const std::vector<IdentityEntry>& entries, std::string_view name);

/// The catalog in its own "[identity]" file format.
std::string_view builtin_catalog_text();

/// "[identity]" blocks with keys name, lhs, rhs and optional order, source.
/// Throws FormatError or ParseError; duplicate names are a FormatError.
std::vector<IdentityEntry> parse_identity_file(std::string_view text);

enum class Verdict { Pass, Fail, Inapplicable };

struct VerificationResult {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::int64_t order = 0;
    // Set on Fail.
    std::int64_t exponent = 0;
    std::string lhs_coeff;
    std::string rhs_coeff;
    // Set on Inapplicable.
    std::string message;

    std::string report_line() const;
};

/// Compares lhs and rhs with exact coefficients through q^order.
VerificationResult verify_entry(const IdentityEntry& entry, std::int64_t order);

struct CatalogReport {
    std::vector<VerificationResult> results;  // sorted by name

    bool all_pass() const;
    std::size_t count(Verdict v) const;
};

/// A missing order uses each entry's default.
CatalogReport verify_all(const std::vector<IdentityEntry>& entries, std::optional<std::int64_t> order);
CatalogReport verify_all(std::int64_t order);

} // namespace qseries
