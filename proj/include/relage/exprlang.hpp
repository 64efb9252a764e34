#pragma once
// Closed-form expressions in one nonnegative variable.
//
// Grammar (lowest to highest precedence):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?        right-associative
//   exponent:= '-' exponent | power
//   primary := number | 'x' | 't' | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sqrt
// There is no implicit multiplication: "11t" is a syntax error.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relage {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public ParseError {
public:
    UnknownIdentifier(std::size_t offset, std::string name)
        : ParseError(offset, {"x", "t", "exp", "log", "sqrt"},
                     "unknown identifier '" + name + "' at offset " + std::to_string(offset)),
          name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class DomainError : public std::domain_error {
public:
    DomainError(std::string subexpr, double point, const std::string& reason)
        : std::domain_error(reason + " in '" + subexpr + "' at x=" + format_point(point)),
          subexpr_(std::move(subexpr)), point_(point) {}

    const std::string& subexpression() const noexcept { return subexpr_; }
    double point() const noexcept { return point_; }

private:
    static std::string format_point(double p) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", p);
        return buf;
    }

    std::string subexpr_;
    double point_;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Exp, Log, Sqrt };

class Expr {
public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        enum class Kind { Number, Variable, Negate, Binary, Call } kind;
        double value = 0.0;                   // Number
        BinaryOp op = BinaryOp::Add;          // Binary
        Func func = Func::Exp;                // Call
        NodePtr lhs, rhs;                     // Negate/Call use lhs
    };

    static Expr number(double v) { return Expr(make({Node::Kind::Number, v})); }
    static Expr variable() { return Expr(make({Node::Kind::Variable})); }
    static Expr negate(const Expr& e) {
        Node n{Node::Kind::Negate};
        n.lhs = e.root_;
        return Expr(make(std::move(n)));
    }
    static Expr binary(BinaryOp op, const Expr& a, const Expr& b) {
        Node n{Node::Kind::Binary};
        n.op = op;
        n.lhs = a.root_;
        n.rhs = b.root_;
        return Expr(make(std::move(n)));
    }
    static Expr call(Func f, const Expr& arg) {
        Node n{Node::Kind::Call};
        n.func = f;
        n.lhs = arg.root_;
        return Expr(make(std::move(n)));
    }

    const Node& root() const { return *root_; }

    double operator()(double x) const { return eval_node(*root_, x); }

    // Fully parenthesized, with literals printed to 17 significant digits so
    // that parse(print(e)) evaluates bit-identically to e.
    std::string print() const { return print_node(*root_); }

private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

    static double checked(const Node& n, double x, double v, const char* reason) {
        if (!std::isfinite(v)) throw DomainError(print_node(n), x, reason);
        return v;
    }

    static double eval_node(const Node& n, double x) {
        switch (n.kind) {
        case Node::Kind::Number: return n.value;
        case Node::Kind::Variable: return x;
        case Node::Kind::Negate: return -eval_node(*n.lhs, x);
        case Node::Kind::Call: {
            const double a = eval_node(*n.lhs, x);
            switch (n.func) {
            case Func::Exp: return checked(n, x, std::exp(a), "overflow");
            case Func::Log:
                if (!(a > 0.0)) throw DomainError(print_node(n), x, "log of non-positive value");
                return std::log(a);
            case Func::Sqrt:
                if (a < 0.0) throw DomainError(print_node(n), x, "sqrt of negative value");
                return std::sqrt(a);
            }
            break;
        }
        case Node::Kind::Binary: {
            const double a = eval_node(*n.lhs, x);
            const double b = eval_node(*n.rhs, x);
            switch (n.op) {
            case BinaryOp::Add: return checked(n, x, a + b, "overflow");
            case BinaryOp::Sub: return checked(n, x, a - b, "overflow");
            case BinaryOp::Mul: return checked(n, x, a * b, "overflow");
            case BinaryOp::Div:
                if (b == 0.0) throw DomainError(print_node(n), x, "division by zero");
                return checked(n, x, a / b, "overflow");
            case BinaryOp::Pow:
                if (a == 0.0 && b < 0.0) throw DomainError(print_node(n), x, "zero to a negative power");
                return checked(n, x, std::pow(a, b), "invalid power");
            }
            break;
        }
        }
        throw std::logic_error("corrupt expression node");
    }

    static std::string print_node(const Node& n) {
        switch (n.kind) {
        case Node::Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            return buf;
        }
        case Node::Kind::Variable: return "x";
        case Node::Kind::Negate: return "(-" + print_node(*n.lhs) + ")";
        case Node::Kind::Call: {
            static constexpr const char* names[] = {"exp", "log", "sqrt"};
            return std::string(names[static_cast<int>(n.func)]) + "(" + print_node(*n.lhs) + ")";
        }
        case Node::Kind::Binary: {
            static constexpr char ops[] = {'+', '-', '*', '/', '^'};
            return "(" + print_node(*n.lhs) + ops[static_cast<int>(n.op)] + print_node(*n.rhs) + ")";
        }
        }
        return {};
    }

    NodePtr root_;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse() {
        skip_ws();
        if (pos_ >= text_.size()) fail({"expression"}, "empty expression");
        Expr e = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) {
            if (text_[pos_] == ')') fail({"end of input"}, "unbalanced ')'");
            fail({"operator", "end of input"}, "unexpected character");
        }
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
        std::string what = msg + " at offset " + std::to_string(pos_) + " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) what += ", ";
            what += expected[i];
        }
        what += ")";
        throw ParseError(pos_, std::move(expected), what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = Expr::binary(BinaryOp::Add, lhs, parse_term());
            else if (accept('-')) lhs = Expr::binary(BinaryOp::Sub, lhs, parse_term());
            else return lhs;
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
            else if (accept('/')) lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::negate(parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_exponent());
        return base;
    }

    Expr parse_exponent() {
        if (accept('-')) return Expr::negate(parse_exponent());
        return parse_power();
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail({"number", "variable", "function", "'('"}, "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail({"')'"}, "unbalanced '('");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail({"number", "variable", "function", "'('"}, "unexpected character");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail({"digit"}, "malformed number");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = mark + 1;
                fail({"exponent digits"}, "malformed exponent");
            }
        }
        const std::string lit(text_.substr(start, pos_ - start));
        // A letter glued to a literal is an implicit product; reject it.
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '('))
            fail({"operator", "')'", "end of input"}, "implicit multiplication is not supported");
        return Expr::number(std::strtod(lit.c_str(), nullptr));
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "x" || name == "t") return Expr::variable();
        Func f;
        if (name == "exp") f = Func::Exp;
        else if (name == "log") f = Func::Log;
        else if (name == "sqrt") f = Func::Sqrt;
        else throw UnknownIdentifier(start, name);
        if (!accept('(')) fail({"'('"}, "function call needs parentheses");
        Expr arg = parse_expr();
        if (!accept(')')) fail({"')'"}, "unbalanced '('");
        return Expr::call(f, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::ExprParser(text).parse(); }

inline double eval(const Expr& e, double point) { return e(point); }

}  // namespace relage
