#include "qseries/expr.hpp"

#include <stdexcept>

namespace qseries {

namespace {

template <typename T>
Expr make(T value)
{
    return Expr(std::make_shared<const Node>(Node{std::move(value)}));
}

void require_positive(std::int64_t k, const char* what)
{
    if (k < 1) {
        throw std::invalid_argument(std::string(what) + " needs a positive index, got " + std::to_string(k));
    }
}

std::string qpow_text(int sign, std::int64_t k)
{
    std::string out = sign < 0 ? "-q" : "q";
    if (k != 1) {
        out += "^" + std::to_string(k);
    }
    return out;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_atom(const Expr& e)
{
    return std::visit(overloaded{
                          [](const ast::IntLit& n) { return n.value >= 0; },
                          [](const ast::Add&) { return false; },
                          [](const ast::Sub&) { return false; },
                          [](const ast::Mul&) { return false; },
                          [](const ast::Div&) { return false; },
                          [](const ast::Neg&) { return false; },
                          [](const ast::PowInt&) { return false; },
                          [](const auto&) { return true; },
                      },
                      e.node().value);
}

std::string atom(const Expr& e)
{
    std::string s = to_dsl(e);
    return is_atom(e) ? s : "(" + s + ")";
}

// Powers bind tighter than every binary operator, so they need no parentheses as operands.
std::string operand(const Expr& e)
{
    return e.as<ast::PowInt>() != nullptr ? to_dsl(e) : atom(e);
}

} // namespace

bool Expr::operator==(const Expr& other) const
{
    if (node_ == other.node_) {
        return true;
    }
    const auto& a = node_->value;
    const auto& b = other.node_->value;
    if (a.index() != b.index()) {
        return false;
    }
    return std::visit(
        [&b](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b);
            if constexpr (std::is_same_v<T, ast::IntLit>) {
                return lhs.value == rhs.value;
            } else if constexpr (std::is_same_v<T, ast::QVar>) {
                return true;
            } else if constexpr (std::is_same_v<T, ast::EtaF> || std::is_same_v<T, ast::Psi> || std::is_same_v<T, ast::RRQ> ||
                                 std::is_same_v<T, ast::Lam>) {
                return lhs.k == rhs.k;
            } else if constexpr (std::is_same_v<T, ast::Phi>) {
                return lhs.sign == rhs.sign && lhs.k == rhs.k;
            } else if constexpr (std::is_same_v<T, ast::ThetaF>) {
                return lhs.a == rhs.a && lhs.b == rhs.b;
            } else if constexpr (std::is_same_v<T, ast::Add> || std::is_same_v<T, ast::Sub> || std::is_same_v<T, ast::Mul> ||
                                 std::is_same_v<T, ast::Div>) {
                return lhs.lhs == rhs.lhs && lhs.rhs == rhs.rhs;
            } else if constexpr (std::is_same_v<T, ast::Neg> || std::is_same_v<T, ast::NegateQ>) {
                return lhs.arg == rhs.arg;
            } else if constexpr (std::is_same_v<T, ast::PowInt>) {
                return lhs.exponent == rhs.exponent && lhs.base == rhs.base;
            } else if constexpr (std::is_same_v<T, ast::Huff> || std::is_same_v<T, ast::SubstPower>) {
                return lhs.k == rhs.k && lhs.arg == rhs.arg;
            } else {
                static_assert(std::is_same_v<T, ast::ExtractAP>);
                return lhs.m == rhs.m && lhs.j == rhs.j && lhs.arg == rhs.arg;
            }
        },
        a);
}

namespace build {

Expr lit(std::int64_t value)
{
    return make(ast::IntLit{value});
}
Expr q()
{
    return make(ast::QVar{});
}
Expr eta(std::int64_t k)
{
    require_positive(k, "f");
    return make(ast::EtaF{k});
}
Expr phi(int sign, std::int64_t k)
{
    require_positive(k, "phi");
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("phi sign must be +1 or -1");
    }
    return make(ast::Phi{sign, k});
}
Expr psi(std::int64_t k)
{
    require_positive(k, "psi");
    return make(ast::Psi{k});
}
Expr rr(std::int64_t k)
{
    require_positive(k, "R");
    return make(ast::RRQ{k});
}
Expr theta(ThetaArg a, ThetaArg b)
{
    for (const auto& arg : {a, b}) {
        require_positive(arg.exponent, "theta");
        if (arg.sign != 1 && arg.sign != -1) {
            throw std::invalid_argument("theta argument sign must be +1 or -1");
        }
    }
    return make(ast::ThetaF{a, b});
}
Expr lam(std::int64_t k)
{
    require_positive(k, "lam");
    return make(ast::Lam{k});
}
Expr pow(Expr base, std::int64_t exponent)
{
    return make(ast::PowInt{std::move(base), exponent});
}
Expr huff(std::int64_t k, Expr arg)
{
    require_positive(k, "H");
    return make(ast::Huff{k, std::move(arg)});
}
Expr ap(std::int64_t m, std::int64_t j, Expr arg)
{
    require_positive(m, "AP");
    if (j < 0 || j >= m) {
        throw std::invalid_argument("AP residue must satisfy 0 <= j < m");
    }
    return make(ast::ExtractAP{m, j, std::move(arg)});
}
Expr subst(std::int64_t k, Expr arg)
{
    require_positive(k, "sub");
    return make(ast::SubstPower{k, std::move(arg)});
}
Expr negq(Expr arg)
{
    return make(ast::NegateQ{std::move(arg)});
}
Expr neg(Expr arg)
{
    // Keep "-3" a literal so printed trees re-parse to the same shape.
    if (const auto* lit_node = arg.as<ast::IntLit>()) {
        return lit(-lit_node->value);
    }
    return make(ast::Neg{std::move(arg)});
}

} // namespace build

Expr operator+(Expr a, Expr b)
{
    return make(ast::Add{std::move(a), std::move(b)});
}
Expr operator-(Expr a, Expr b)
{
    return make(ast::Sub{std::move(a), std::move(b)});
}
Expr operator*(Expr a, Expr b)
{
    return make(ast::Mul{std::move(a), std::move(b)});
}
Expr operator/(Expr a, Expr b)
{
    return make(ast::Div{std::move(a), std::move(b)});
}
Expr operator-(Expr a)
{
    return build::neg(std::move(a));
}

std::string to_dsl(const Expr& e)
{
    // Operands that are not atoms or powers get parentheses, so re-parsing
    // the output rebuilds the same tree regardless of precedence.
    return std::visit(overloaded{
                          [](const ast::IntLit& n) {
                              return std::to_string(n.value);
                          },
                          [](const ast::QVar&) { return std::string("q"); },
                          [](const ast::EtaF& n) { return "f" + std::to_string(n.k); },
                          [](const ast::Phi& n) { return "phi(" + qpow_text(n.sign, n.k) + ")"; },
                          [](const ast::Psi& n) { return "psi(" + qpow_text(1, n.k) + ")"; },
                          [](const ast::RRQ& n) { return "R(" + qpow_text(1, n.k) + ")"; },
                          [](const ast::ThetaF& n) {
                              return "theta(" + qpow_text(n.a.sign, n.a.exponent) + "," + qpow_text(n.b.sign, n.b.exponent) + ")";
                          },
                          [](const ast::Lam& n) { return "lam(" + qpow_text(1, n.k) + ")"; },
                          [](const ast::Add& n) { return operand(n.lhs) + " + " + operand(n.rhs); },
                          [](const ast::Sub& n) { return operand(n.lhs) + " - " + operand(n.rhs); },
                          [](const ast::Mul& n) { return operand(n.lhs) + "*" + operand(n.rhs); },
                          [](const ast::Div& n) { return operand(n.lhs) + "/" + operand(n.rhs); },
                          [](const ast::Neg& n) { return "-" + operand(n.arg); },
                          [](const ast::PowInt& n) { return atom(n.base) + "^" + std::to_string(n.exponent); },
                          [](const ast::Huff& n) { return "H(" + std::to_string(n.k) + "; " + to_dsl(n.arg) + ")"; },
                          [](const ast::ExtractAP& n) {
                              return "AP(" + std::to_string(n.m) + "," + std::to_string(n.j) + "; " + to_dsl(n.arg) + ")";
                          },
                          [](const ast::SubstPower& n) { return "sub(" + std::to_string(n.k) + "; " + to_dsl(n.arg) + ")"; },
                          [](const ast::NegateQ& n) { return "negq(" + to_dsl(n.arg) + ")"; },
                      },
                      e.node().value);
}

} // namespace qseries
