#include "qseries/parser.hpp"

#include <cctype>
#include <limits>
#include <optional>

namespace qseries {

namespace {

std::string describe(const std::vector<std::string>& expected)
{
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        out += (i == 0 ? "" : ", ") + expected[i];
    }
    return out;
}

const std::vector<std::string> kBaseStart = {"integer", "'q'", "'f'", "'('", "'-'", "phi", "psi",
                                             "R",       "theta", "lam", "H",  "AP",  "sub",  "negq"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse()
    {
        Expr e = expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        std::string msg = "syntax error at offset " + std::to_string(pos_) + ": found " + found + ", expected one of " +
                          describe(expected);
        throw ParseError(pos_, std::move(expected), msg);
    }

    [[noreturn]] void semantic(std::size_t at, const std::string& what) const
    {
        throw ParseError(at, {}, "semantic error at offset " + std::to_string(at) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail({std::string("'") + c + "'"});
        }
    }

    bool at_digit()
    {
        skip_space();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::int64_t integer()
    {
        if (!at_digit()) {
            fail({"integer"});
        }
        std::size_t start = pos_;
        std::int64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            int d = text_[pos_] - '0';
            if (value > (std::numeric_limits<std::int64_t>::max() - d) / 10) {
                semantic(start, "integer literal out of range");
            }
            value = value * 10 + d;
            ++pos_;
        }
        return value;
    }

    std::int64_t signed_integer()
    {
        bool negative = accept('-');
        if (!negative && !at_digit()) {
            fail({"'-'", "integer"});
        }
        std::int64_t v = integer();
        return negative ? -v : v;
    }

    std::string identifier()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    ThetaArg qpow()
    {
        ThetaArg arg;
        if (accept('-')) {
            arg.sign = -1;
        }
        skip_space();
        if (!(pos_ < text_.size() && text_[pos_] == 'q')) {
            fail(arg.sign < 0 ? std::vector<std::string>{"'q'"} : std::vector<std::string>{"'-'", "'q'"});
        }
        ++pos_;
        if (accept('^')) {
            std::size_t at = pos_;
            arg.exponent = integer();
            if (arg.exponent < 1) {
                semantic(at, "exponent of q must be positive");
            }
        }
        return arg;
    }

    // Builders throw std::invalid_argument on bad indices; report those at the call site.
    template <typename F>
    Expr checked(std::size_t at, F&& make)
    {
        try {
            return make();
        } catch (const std::invalid_argument& e) {
            semantic(at, e.what());
        }
    }

    Expr expr()
    {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = lhs + term();
            } else if (accept('-')) {
                lhs = lhs - term();
            } else {
                return lhs;
            }
        }
    }

    Expr term()
    {
        Expr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = lhs * factor();
            } else if (accept('/')) {
                lhs = lhs / factor();
            } else {
                return lhs;
            }
        }
    }

    Expr factor()
    {
        Expr b = base();
        if (accept('^')) {
            b = build::pow(std::move(b), signed_integer());
        }
        return b;
    }

    // psi, R and lam only have a positive-argument node; a '-q^k' argument becomes sub(k; negq(g(q))).
    Expr signed_call(std::size_t at, ThetaArg arg, Expr (*make)(std::int64_t))
    {
        return checked(at, [&] {
            if (arg.sign > 0) {
                return make(arg.exponent);
            }
            Expr inner = build::negq(make(1));
            return arg.exponent == 1 ? inner : build::subst(arg.exponent, inner);
        });
    }

    Expr base()
    {
        skip_space();
        std::size_t at = pos_;
        if (pos_ >= text_.size()) {
            fail(kBaseStart);
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return build::lit(integer());
        }
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            expect(')');
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return build::neg(factor());
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            fail(kBaseStart);
        }
        std::string name = identifier();
        if (name == "q") {
            return build::q();
        }
        if (name == "f") {
            std::size_t k_at = pos_;
            std::int64_t k = integer();
            return checked(k_at, [&] { return build::eta(k); });
        }
        if (name == "phi" || name == "psi" || name == "R" || name == "lam") {
            expect('(');
            ThetaArg arg = qpow();
            expect(')');
            if (name == "phi") {
                return checked(at, [&] { return build::phi(arg.sign, arg.exponent); });
            }
            if (name == "psi") {
                return signed_call(at, arg, &build::psi);
            }
            if (name == "R") {
                return signed_call(at, arg, &build::rr);
            }
            return signed_call(at, arg, &build::lam);
        }
        if (name == "theta") {
            expect('(');
            ThetaArg a = qpow();
            expect(',');
            ThetaArg b = qpow();
            expect(')');
            return checked(at, [&] { return build::theta(a, b); });
        }
        if (name == "H" || name == "sub") {
            expect('(');
            std::int64_t k = integer();
            expect(';');
            Expr arg = expr();
            expect(')');
            if (name == "H") {
                return checked(at, [&] { return build::huff(k, arg); });
            }
            return checked(at, [&] { return build::subst(k, arg); });
        }
        if (name == "AP") {
            expect('(');
            std::int64_t m = integer();
            expect(',');
            std::int64_t j = integer();
            expect(';');
            Expr arg = expr();
            expect(')');
            return checked(at, [&] { return build::ap(m, j, arg); });
        }
        if (name == "negq") {
            expect('(');
            Expr arg = expr();
            expect(')');
            return build::negq(arg);
        }
        pos_ = at;
        fail(kBaseStart);
    }
};

} // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
    : std::runtime_error(message), offset_(offset), expected_(std::move(expected))
{
}

Expr parse_expr(std::string_view text)
{
    return Parser(text).parse();
}

} // namespace qseries
