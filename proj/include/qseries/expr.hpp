#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "qseries/special.hpp"

namespace qseries {

struct Node;

/// Immutable handle to an expression tree of the q-series DSL.
class Expr {
public:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    const Node& node() const noexcept { return *node_; }

    template <typename T>
    const T* as() const;

    bool operator==(const Expr& other) const;

private:
    std::shared_ptr<const Node> node_;
};

namespace ast {

struct IntLit {
    std::int64_t value;
};
struct QVar {
};
struct EtaF {
    std::int64_t k;
};
struct Phi {
    int sign;
    std::int64_t k;
};
struct Psi {
    std::int64_t k;
};
struct RRQ {
    std::int64_t k;
};
struct ThetaF {
    ThetaArg a;
    ThetaArg b;
};
struct Lam {
    std::int64_t k;
};
struct Add {
    Expr lhs, rhs;
};
struct Sub {
    Expr lhs, rhs;
};
struct Mul {
    Expr lhs, rhs;
};
struct Div {
    Expr lhs, rhs;
};
struct Neg {
    Expr arg;
};
struct PowInt {
    Expr base;
    std::int64_t exponent;
};
struct Huff {
    std::int64_t k;
    Expr arg;
};
struct ExtractAP {
    std::int64_t m, j;
    Expr arg;
};
struct SubstPower {
    std::int64_t k;
    Expr arg;
};
struct NegateQ {
    Expr arg;
};

} // namespace ast

struct Node {
    std::variant<ast::IntLit, ast::QVar, ast::EtaF, ast::Phi, ast::Psi, ast::RRQ, ast::ThetaF, ast::Lam, ast::Add, ast::Sub,
                 ast::Mul, ast::Div, ast::Neg, ast::PowInt, ast::Huff, ast::ExtractAP, ast::SubstPower, ast::NegateQ>
        value;
};

template <typename T>
const T* Expr::as() const
{
    return std::get_if<T>(&node_->value);
}

/// Builders. Each validates the same invariants the parser enforces.
namespace build {

Expr lit(std::int64_t value);
Expr q();
Expr eta(std::int64_t k);
Expr phi(int sign, std::int64_t k);
Expr psi(std::int64_t k);
Expr rr(std::int64_t k);
Expr theta(ThetaArg a, ThetaArg b);
Expr lam(std::int64_t k);
Expr pow(Expr base, std::int64_t exponent);
Expr huff(std::int64_t k, Expr arg);
Expr ap(std::int64_t m, std::int64_t j, Expr arg);
Expr subst(std::int64_t k, Expr arg);
Expr negq(Expr arg);
Expr neg(Expr arg);

} // namespace build

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

/// Renders the expression in DSL surface syntax; parse_expr(to_dsl(e)) == e.
std::string to_dsl(const Expr& e);

} // namespace qseries
