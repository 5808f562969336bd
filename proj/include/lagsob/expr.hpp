#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <span>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lagsob::expr {

enum class TokenKind { number, identifier, op, left_paren, right_paren, comma };

struct Token {
    TokenKind kind;
    std::string_view text;  // slice of the tokenized input
    std::size_t position;   // byte offset
};

/// Lexical or syntax error at a byte offset of the source text.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at offset " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Domain or non-finite failure while evaluating at a given x.
class eval_error : public std::runtime_error {
public:
    eval_error(const std::string& msg, double x, std::string subexpression)
        : std::runtime_error(msg + " in '" + subexpression + "' at x = " + std::to_string(x)),
          x_(x),
          subexpression_(std::move(subexpression)) {}
    double x() const noexcept { return x_; }
    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    double x_;
    std::string subexpression_;
};

/// Longest-match lexer over ASCII. Numbers take an optional fraction and an
/// exponent only when digits follow the 'e'.
inline std::vector<Token> tokenize(std::string_view input) {
    std::vector<Token> out;
    std::size_t i = 0;
    const auto digit = [&](std::size_t k) { return k < input.size() && std::isdigit(static_cast<unsigned char>(input[k])); };
    while (i < input.size()) {
        const unsigned char c = static_cast<unsigned char>(input[i]);
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(c) || (c == '.' && digit(i + 1))) {
            while (digit(i)) ++i;
            if (i < input.size() && input[i] == '.') {
                ++i;
                while (digit(i)) ++i;
            }
            if (i < input.size() && (input[i] == 'e' || input[i] == 'E')) {
                std::size_t k = i + 1;
                if (k < input.size() && (input[k] == '+' || input[k] == '-')) ++k;
                if (digit(k)) {
                    i = k;
                    while (digit(i)) ++i;
                }
            }
            out.push_back({TokenKind::number, input.substr(start, i - start), start});
        } else if (std::isalpha(c) || c == '_') {
            while (i < input.size() &&
                   (std::isalnum(static_cast<unsigned char>(input[i])) || input[i] == '_'))
                ++i;
            out.push_back({TokenKind::identifier, input.substr(start, i - start), start});
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            out.push_back({TokenKind::op, input.substr(i++, 1), start});
        } else if (c == '(') {
            out.push_back({TokenKind::left_paren, input.substr(i++, 1), start});
        } else if (c == ')') {
            out.push_back({TokenKind::right_paren, input.substr(i++, 1), start});
        } else if (c == ',') {
            out.push_back({TokenKind::comma, input.substr(i++, 1), start});
        } else {
            char shown[8];
            std::snprintf(shown, sizeof shown, c >= 0x20 && c < 0x7f ? "'%c'" : "0x%02X", c);
            throw parse_error(std::string("unexpected character ") + shown, start);
        }
    }
    return out;
}

enum class Func { sin, cos, tan, exp, ln, sqrt, abs };
enum class BinOp { add, sub, mul, div, pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number { double value; };
struct Variable {};
struct Constant { bool is_pi; };  // pi or e
struct Negate { NodePtr operand; };
struct Binary { BinOp op; NodePtr lhs, rhs; };
struct Call { Func func; NodePtr arg; };

struct Node {
    std::variant<Number, Variable, Constant, Negate, Binary, Call> v;
};

/// Immutable expression tree in one real variable x.
class Expr {
public:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    const Node& root() const noexcept { return *root_; }
    const NodePtr& root_ptr() const noexcept { return root_; }

private:
    NodePtr root_;
};

namespace detail {

inline constexpr int max_depth = 200;
// Bounds the length of left-leaning operator chains, which evaluate recursively.
inline constexpr std::size_t max_tokens = 10000;

inline const char* func_name(Func f) {
    switch (f) {
        case Func::sin: return "sin";
        case Func::cos: return "cos";
        case Func::tan: return "tan";
        case Func::exp: return "exp";
        case Func::ln: return "ln";
        case Func::sqrt: return "sqrt";
        case Func::abs: return "abs";
    }
    return "?";
}

inline bool lookup_func(std::string_view name, Func& out) {
    static constexpr std::pair<std::string_view, Func> table[] = {
        {"sin", Func::sin}, {"cos", Func::cos}, {"tan", Func::tan}, {"exp", Func::exp},
        {"ln", Func::ln},   {"sqrt", Func::sqrt}, {"abs", Func::abs}};
    for (const auto& [n, f] : table)
        if (n == name) {
            out = f;
            return true;
        }
    return false;
}

// Precedence, low to high: + - < * / < unary - < ^ (right associative).
class Parser {
public:
    Parser(std::span<const Token> tokens, std::size_t end_pos) : toks_(tokens), end_pos_(end_pos) {}

    NodePtr parse_all() {
        if (toks_.empty()) throw parse_error("empty expression", 0);
        if (toks_.size() > max_tokens)
            throw parse_error("expression longer than " + std::to_string(max_tokens) + " tokens", toks_[max_tokens].position);
        NodePtr e = additive(0);
        if (pos_ < toks_.size())
            throw parse_error("unexpected trailing '" + std::string(toks_[pos_].text) + "'", toks_[pos_].position);
        return e;
    }

private:
    const Token* peek() const { return pos_ < toks_.size() ? &toks_[pos_] : nullptr; }
    std::size_t here() const { return pos_ < toks_.size() ? toks_[pos_].position : end_pos_; }
    bool is_op(char c) const {
        const Token* t = peek();
        return t && t->kind == TokenKind::op && t->text[0] == c;
    }
    static NodePtr make(auto node) { return std::make_shared<const Node>(Node{std::move(node)}); }
    void enter(int depth) const {
        if (depth > max_depth) throw parse_error("expression nested too deeply", here());
    }

    NodePtr additive(int depth) {
        enter(depth);
        NodePtr lhs = multiplicative(depth + 1);
        while (is_op('+') || is_op('-')) {
            const BinOp op = toks_[pos_++].text[0] == '+' ? BinOp::add : BinOp::sub;
            lhs = make(Binary{op, lhs, multiplicative(depth + 1)});
        }
        return lhs;
    }

    NodePtr multiplicative(int depth) {
        enter(depth);
        NodePtr lhs = unary(depth + 1);
        while (is_op('*') || is_op('/')) {
            const BinOp op = toks_[pos_++].text[0] == '*' ? BinOp::mul : BinOp::div;
            lhs = make(Binary{op, lhs, unary(depth + 1)});
        }
        return lhs;
    }

    NodePtr unary(int depth) {
        enter(depth);
        if (is_op('-')) {
            ++pos_;
            return make(Negate{unary(depth + 1)});
        }
        return power(depth + 1);
    }

    NodePtr power(int depth) {
        enter(depth);
        NodePtr base = primary(depth + 1);
        if (is_op('^')) {
            ++pos_;
            return make(Binary{BinOp::pow, base, unary(depth + 1)});
        }
        return base;
    }

    NodePtr primary(int depth) {
        enter(depth);
        const Token* t = peek();
        if (!t) throw parse_error("expected a number, x, constant, function or '('", end_pos_);
        switch (t->kind) {
            case TokenKind::number: {
                ++pos_;
                const std::string text(t->text);
                return make(Number{std::strtod(text.c_str(), nullptr)});
            }
            case TokenKind::left_paren: {
                ++pos_;
                NodePtr inner = additive(depth + 1);
                expect_close();
                return inner;
            }
            case TokenKind::identifier: {
                ++pos_;
                if (t->text == "x") return make(Variable{});
                if (t->text == "pi") return make(Constant{true});
                if (t->text == "e") return make(Constant{false});
                Func f;
                if (!lookup_func(t->text, f))
                    throw parse_error("unknown identifier '" + std::string(t->text) + "'", t->position);
                const Token* open = peek();
                if (!open || open->kind != TokenKind::left_paren)
                    throw parse_error("expected '(' after function '" + std::string(t->text) + "'", here());
                ++pos_;
                NodePtr arg = additive(depth + 1);
                expect_close();
                return make(Call{f, arg});
            }
            default:
                throw parse_error("unexpected '" + std::string(t->text) + "'", t->position);
        }
    }

    void expect_close() {
        const Token* t = peek();
        if (!t || t->kind != TokenKind::right_paren) throw parse_error("expected ')'", here());
        ++pos_;
    }

    std::span<const Token> toks_;
    std::size_t end_pos_;
    std::size_t pos_ = 0;
};

inline int precedence(const Node& n) {
    if (const auto* b = std::get_if<Binary>(&n.v)) {
        switch (b->op) {
            case BinOp::add:
            case BinOp::sub: return 1;
            case BinOp::mul:
            case BinOp::div: return 2;
            case BinOp::pow: return 4;
        }
    }
    if (std::holds_alternative<Negate>(n.v)) return 3;
    return 5;
}

inline void print(const Node& n, std::string& out);

inline void print_wrapped(const Node& n, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(n, out);
    if (wrap) out += ')';
}

inline void print(const Node& n, std::string& out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Number>) {
                if (std::isinf(v.value)) {
                    out += "1e999";  // overflowing literal; lexes back to inf
                } else {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.17g", v.value);
                    out += buf;
                }
            } else if constexpr (std::is_same_v<T, Variable>) {
                out += 'x';
            } else if constexpr (std::is_same_v<T, Constant>) {
                out += v.is_pi ? "pi" : "e";
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += '-';
                print_wrapped(*v.operand, precedence(*v.operand) < 3, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const int p = precedence(n);
                static constexpr const char* sym[] = {" + ", " - ", " * ", " / ", "^"};
                if (v.op == BinOp::pow) {
                    // base binds tighter than ^ (a negation base needs parens); the
                    // exponent is parsed as a unary expression
                    print_wrapped(*v.lhs, precedence(*v.lhs) <= p, out);
                    out += sym[static_cast<int>(v.op)];
                    print_wrapped(*v.rhs, precedence(*v.rhs) < 3, out);
                } else {
                    print_wrapped(*v.lhs, precedence(*v.lhs) < p, out);
                    out += sym[static_cast<int>(v.op)];
                    print_wrapped(*v.rhs, precedence(*v.rhs) <= p, out);
                }
            } else {
                out += func_name(v.func);
                out += '(';
                print(*v.arg, out);
                out += ')';
            }
        },
        n.v);
}

inline bool equal(const Node& a, const Node& b) {
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&](const auto& va) -> bool {
            using T = std::decay_t<decltype(va)>;
            const auto& vb = std::get<T>(b.v);
            if constexpr (std::is_same_v<T, Number>) return va.value == vb.value;
            else if constexpr (std::is_same_v<T, Variable>) return true;
            else if constexpr (std::is_same_v<T, Constant>) return va.is_pi == vb.is_pi;
            else if constexpr (std::is_same_v<T, Negate>) return equal(*va.operand, *vb.operand);
            else if constexpr (std::is_same_v<T, Binary>)
                return va.op == vb.op && equal(*va.lhs, *vb.lhs) && equal(*va.rhs, *vb.rhs);
            else return va.func == vb.func && equal(*va.arg, *vb.arg);
        },
        a.v);
}

}  // namespace detail

inline Expr parse(std::span<const Token> tokens, std::size_t source_length = 0) {
    const std::size_t end = tokens.empty() ? source_length
                                           : std::max(source_length, tokens.back().position + tokens.back().text.size());
    return Expr(detail::Parser(tokens, end).parse_all());
}

inline Expr parse(std::string_view source) {
    const auto tokens = tokenize(source);
    return parse(tokens, source.size());
}

/// Text that parses back to the same tree; numbers keep 17 significant digits.
inline std::string to_string(const Expr& e) {
    std::string out;
    detail::print(e.root(), out);
    return out;
}

inline bool operator==(const Expr& a, const Expr& b) { return detail::equal(a.root(), b.root()); }

namespace detail {

inline double eval_node(const Node& n, double x) {
    const auto fail = [&](const std::string& why) -> double {
        std::string text;
        print(n, text);
        throw eval_error(why, x, text);
    };
    const double r = std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Number>) return v.value;
            else if constexpr (std::is_same_v<T, Variable>) return x;
            else if constexpr (std::is_same_v<T, Constant>) return v.is_pi ? std::numbers::pi : std::numbers::e;
            else if constexpr (std::is_same_v<T, Negate>) return -eval_node(*v.operand, x);
            else if constexpr (std::is_same_v<T, Binary>) {
                const double a = eval_node(*v.lhs, x);
                const double b = eval_node(*v.rhs, x);
                switch (v.op) {
                    case BinOp::add: return a + b;
                    case BinOp::sub: return a - b;
                    case BinOp::mul: return a * b;
                    case BinOp::div:
                        if (b == 0.0) return fail("division by zero");
                        return a / b;
                    case BinOp::pow: return std::pow(a, b);
                }
                return 0.0;
            } else {
                const double a = eval_node(*v.arg, x);
                switch (v.func) {
                    case Func::sin: return std::sin(a);
                    case Func::cos: return std::cos(a);
                    case Func::tan: return std::tan(a);
                    case Func::exp: return std::exp(a);
                    case Func::ln:
                        if (!(a > 0.0)) return fail("logarithm of non-positive value");
                        return std::log(a);
                    case Func::sqrt:
                        if (a < 0.0) return fail("square root of negative value");
                        return std::sqrt(a);
                    case Func::abs: return std::abs(a);
                }
                return 0.0;
            }
        },
        n.v);
    if (!std::isfinite(r)) fail("non-finite result");
    return r;
}

}  // namespace detail

inline double eval(const Expr& e, double x) { return detail::eval_node(e.root(), x); }

}  // namespace lagsob::expr
