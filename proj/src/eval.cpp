#include "qseries/eval.hpp"

#include <algorithm>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::int64_t kMaxDemand = std::int64_t{1} << 24;
constexpr int kMaxAttempts = 12;

template <typename Ring>
class Evaluator {
public:
    using Series = BasicSeries<Ring>;

    explicit Evaluator(const Ring& ring) : ring_(ring) {}

    // Returns e known through at least q^demand when the valuation estimates hold;
    // the caller checks the order and retries with more room otherwise.
    Series run(const Expr& e, std::int64_t demand)
    {
        if (demand > kMaxDemand) {
            throw InsufficientPrecision("intermediate precision exceeds q^" + std::to_string(kMaxDemand));
        }
        if (auto spec = as_eta_monomial(e)) {
            return eta_quotient(ring_, *spec, demand);
        }
        return std::visit(
            overloaded{
                [&](const ast::Phi& n) { return atom(demand, [&] { return phi(ring_, n.sign, n.k, demand); }); },
                [&](const ast::Psi& n) { return atom(demand, [&] { return psi(ring_, n.k, demand); }); },
                [&](const ast::RRQ& n) { return atom(demand, [&] { return rr_quotient(ring_, n.k, demand); }); },
                [&](const ast::ThetaF& n) { return atom(demand, [&] { return theta_f(ring_, n.a, n.b, demand); }); },
                [&](const ast::Add& n) { return add(run(n.lhs, demand), run(n.rhs, demand)); },
                [&](const ast::Sub& n) { return sub(run(n.lhs, demand), run(n.rhs, demand)); },
                [&](const ast::Neg& n) { return neg(run(n.arg, demand)); },
                [&](const ast::Mul& n) {
                    Series a = run(n.lhs, demand - estimated_valuation(n.rhs));
                    Series b = run(n.rhs, demand - estimated_valuation(n.lhs));
                    return mul(a, b);
                },
                [&](const ast::Div& n) { return divide(n, demand); },
                [&](const ast::PowInt& n) { return power(n, demand); },
                [&](const ast::Huff& n) { return huff(run(n.arg, demand), n.k); },
                [&](const ast::ExtractAP& n) { return extract_ap(run(n.arg, n.m * demand + n.j), n.m, n.j); },
                [&](const ast::SubstPower& n) {
                    return subst_power(run(n.arg, ceil_div(demand - n.k + 1, n.k)), n.k);
                },
                [&](const ast::NegateQ& n) { return negate_q(run(n.arg, demand)); },
                [&](const auto&) -> Series { throw std::logic_error("eta monomial escaped folding"); },
            },
            e.node().value);
    }

private:
    Ring ring_;

    template <typename F>
    Series atom(std::int64_t demand, F&& make)
    {
        return demand < 0 ? Series(ring_, demand) : make();
    }

    Series reciprocal(const Series& b)
    {
        if (b.is_zero()) {
            throw InsufficientPrecision("denominator vanishes through q^" + std::to_string(b.order()));
        }
        return invert(b);
    }

    Series divide(const ast::Div& n, std::int64_t demand)
    {
        const std::int64_t va = estimated_valuation(n.lhs);
        const std::int64_t vb = estimated_valuation(n.rhs);
        Series a = run(n.lhs, demand + vb);
        if (auto spec = as_eta_monomial(n.rhs); spec && (spec->scalar == 1 || spec->scalar == -1)) {
            EtaQuotientSpec inv = spec->inverse_factors();
            inv.scalar = spec->scalar;
            return mul(a, eta_quotient(ring_, inv, demand - va - spec->qshift + vb));
        }
        Series b = run(n.rhs, demand + 2 * vb - va);
        return mul(a, reciprocal(b));
    }

    Series power(const ast::PowInt& n, std::int64_t demand)
    {
        const std::int64_t k = n.exponent;
        if (k == 0) {
            return atom(demand, [&] { return monomial(ring_, ring_.from_int(1), 0, demand); });
        }
        const std::int64_t v = estimated_valuation(n.base);
        if (k > 0) {
            return pow_int(run(n.base, demand - (k - 1) * v), k);
        }
        const std::int64_t m = -k;
        Series base = run(n.base, demand + (m + 1) * v);
        return pow_int(reciprocal(base), m);
    }
};

} // namespace

std::optional<EtaQuotientSpec> as_eta_monomial(const Expr& e)
{
    using R = std::optional<EtaQuotientSpec>;
    return std::visit(
        overloaded{
            [](const ast::IntLit& n) -> R { return eta_spec(n.value, 0, {}); },
            [](const ast::QVar&) -> R { return eta_spec(1, 1, {}); },
            [](const ast::EtaF& n) -> R { return eta_spec(1, 0, {{n.k, 1}}); },
            [](const ast::Lam& n) -> R { return eta_spec(1, n.k, {{n.k, 4}, {5 * n.k, 4}}); },
            [](const ast::Neg& n) -> R {
                auto a = as_eta_monomial(n.arg);
                if (a) {
                    a->scalar = -a->scalar;
                }
                return a;
            },
            [](const ast::Mul& n) -> R {
                auto a = as_eta_monomial(n.lhs);
                if (!a) {
                    return std::nullopt;
                }
                auto b = as_eta_monomial(n.rhs);
                if (!b) {
                    return std::nullopt;
                }
                *a *= *b;
                return a;
            },
            [](const ast::Div& n) -> R {
                auto b = as_eta_monomial(n.rhs);
                if (!b || (b->scalar != 1 && b->scalar != -1)) {
                    return std::nullopt;
                }
                auto a = as_eta_monomial(n.lhs);
                if (!a) {
                    return std::nullopt;
                }
                // A scalar of +/-1 is its own inverse.
                EtaQuotientSpec inv = b->inverse_factors();
                inv.scalar = b->scalar;
                *a *= inv;
                return a;
            },
            [](const ast::PowInt& n) -> R {
                auto a = as_eta_monomial(n.base);
                if (!a || (n.exponent < 0 && a->scalar != 1 && a->scalar != -1)) {
                    return std::nullopt;
                }
                return a->pow(n.exponent);
            },
            [](const ast::SubstPower& n) -> R {
                auto a = as_eta_monomial(n.arg);
                return a ? R(a->substitute_power(n.k)) : std::nullopt;
            },
            [](const ast::NegateQ& n) -> R {
                auto a = as_eta_monomial(n.arg);
                return a ? R(a->negate_q()) : std::nullopt;
            },
            [](const auto&) -> R { return std::nullopt; },
        },
        e.node().value);
}

std::int64_t estimated_valuation(const Expr& e)
{
    if (auto spec = as_eta_monomial(e)) {
        return spec->qshift;
    }
    return std::visit(overloaded{
                          [](const ast::Add& n) { return std::min(estimated_valuation(n.lhs), estimated_valuation(n.rhs)); },
                          [](const ast::Sub& n) { return std::min(estimated_valuation(n.lhs), estimated_valuation(n.rhs)); },
                          [](const ast::Neg& n) { return estimated_valuation(n.arg); },
                          [](const ast::NegateQ& n) { return estimated_valuation(n.arg); },
                          [](const ast::Huff& n) { return estimated_valuation(n.arg); },
                          [](const ast::Mul& n) { return estimated_valuation(n.lhs) + estimated_valuation(n.rhs); },
                          [](const ast::Div& n) { return estimated_valuation(n.lhs) - estimated_valuation(n.rhs); },
                          [](const ast::PowInt& n) { return n.exponent * estimated_valuation(n.base); },
                          [](const ast::ExtractAP& n) { return ceil_div(estimated_valuation(n.arg) - n.j, n.m); },
                          [](const ast::SubstPower& n) { return n.k * estimated_valuation(n.arg); },
                          [](const auto&) { return std::int64_t{0}; },
                      },
                      e.node().value);
}

template <typename Ring>
BasicSeries<Ring> evaluate(const Expr& e, std::int64_t order, const Ring& ring)
{
    Evaluator<Ring> ev(ring);
    std::int64_t demand = order;
    std::string last = "no attempt made";
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::int64_t deficit = 16;
        try {
            BasicSeries<Ring> r = ev.run(e, demand);
            if (r.order() >= order) {
                return truncate(r, order);
            }
            deficit = std::max<std::int64_t>(deficit, order - r.order());
            last = "result known only through q^" + std::to_string(r.order());
        } catch (const InsufficientPrecision& err) {
            last = err.what();
            if (demand > kMaxDemand) {
                break;
            }
        }
        demand += deficit << attempt;
    }
    throw InsufficientPrecision("could not certify q^" + std::to_string(order) + ": " + last);
}

AnySeries eval(const Expr& e, std::int64_t order, const CoefficientMode& mode)
{
    if (mode.is_exact()) {
        return evaluate(e, order, IntegerRing{});
    }
    return evaluate(e, order, ResidueRing(mode.modulus()));
}

QSeries eval_exact(const Expr& e, std::int64_t order)
{
    return evaluate(e, order, IntegerRing{});
}

template QSeries evaluate(const Expr&, std::int64_t, const IntegerRing&);
template ModSeries evaluate(const Expr&, std::int64_t, const ResidueRing&);

} // namespace qseries
