#pragma once

#include <cstdint>
#include <optional>

#include "qseries/expr.hpp"
#include "qseries/ring.hpp"
#include "qseries/series.hpp"
#include "qseries/special.hpp"

namespace qseries {

/// Folds products, quotients and powers of literals, q, f_k and lam(q^k) into
/// a single eta quotient. Division folds only when the divisor's scalar is +/-1.
std::optional<EtaQuotientSpec> as_eta_monomial(const Expr& e);

/// Lower estimate of the valuation, used to size intermediate precision.
std::int64_t estimated_valuation(const Expr& e);

/// Coefficients of e through q^order. Intermediate precision grows until the
/// result is certified through q^order; throws InsufficientPrecision if that
/// does not happen (for example when a denominator vanishes identically).
template <typename Ring>
BasicSeries<Ring> evaluate(const Expr& e, std::int64_t order, const Ring& ring);

AnySeries eval(const Expr& e, std::int64_t order, const CoefficientMode& mode);
QSeries eval_exact(const Expr& e, std::int64_t order);

} // namespace qseries
