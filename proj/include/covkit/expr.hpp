#pragma once

/**
 * @file expr.hpp
 * @brief Inline mapping expressions such as "x1*x2, x1*x3".
 *
 * Grammar (comma separates components):
 *
 *   list    := expr (',' expr)*
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := ('+' | '-') unary | power
 *   power   := primary ('^' unary)?
 *   primary := number | x1..x9 | s | fn '(' expr ')' | '(' expr ')'
 *   fn      := sqrt | exp | ln | sin | cos | abs
 *
 * The parameter symbol s is accepted only when asked for. The evaluator and
 * the dual-number differentiator walk the same tree.
 */

#include <charconv>
#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "covkit/dual.hpp"
#include "covkit/errors.hpp"
#include "covkit/linalg.hpp"
#include "covkit/mapping.hpp"

namespace covkit {

namespace expr {

enum class Op { num, var, param, neg, add, sub, mul, div, pow, ipow, sqrt, exp, ln, sin, cos, abs };

struct Node {
    Op op = Op::num;
    double value = 0.0;     // literal, or integer exponent for ipow
    std::size_t index = 0;  // variable index for var
    std::shared_ptr<const Node> a, b;
    std::string text;
};

using NodePtr = std::shared_ptr<const Node>;

struct Parsed {
    std::vector<NodePtr> components;
    std::size_t n = 1;
    std::size_t highest = 0;  // 0 when no variable appears
    bool uses_param = false;
};

class Parser {
public:
    Parser(std::string_view src, bool allow_param) : src_(normalise(src)), allow_param_(allow_param) {}

    Parsed parse_list() {
        Parsed out;
        skip();
        if (pos_ == src_.size()) throw parse_error("empty expression", pos_);
        for (;;) {
            out.components.push_back(parse_expr());
            skip();
            if (pos_ == src_.size()) break;
            if (src_[pos_] != ',') throw parse_error(std::string("unexpected '") + src_[pos_] + "'", pos_);
            ++pos_;
        }
        out.n = highest_ == 0 ? 1 : highest_;
        out.highest = highest_;
        out.uses_param = uses_param_;
        return out;
    }

private:
    // Accept the typographic minus sign as '-'.
    static std::string normalise(std::string_view s) {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.compare(i, 3, "\xE2\x88\x92") == 0) {
                out += '-';
                i += 2;
            } else {
                out += s[i];
            }
        }
        return out;
    }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr make(Op op, std::size_t from, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        n->text = trim(src_.substr(from, pos_ - from));
        return n;
    }

    static std::string trim(std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        std::size_t i = 0;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        return s.substr(i);
    }

    NodePtr parse_expr() {
        skip();
        const std::size_t from = pos_;
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = make(Op::add, from, lhs, parse_term());
            else if (eat('-')) lhs = make(Op::sub, from, lhs, parse_term());
            else return lhs;
        }
    }

    NodePtr parse_term() {
        skip();
        const std::size_t from = pos_;
        NodePtr lhs = parse_unary();
        for (;;) {
            if (eat('*')) lhs = make(Op::mul, from, lhs, parse_unary());
            else if (eat('/')) lhs = make(Op::div, from, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        skip();
        const std::size_t from = pos_;
        if (eat('-')) {
            NodePtr a = parse_unary();
            return make(Op::neg, from, a);
        }
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        skip();
        const std::size_t from = pos_;
        NodePtr base = parse_primary();
        if (!eat('^')) return base;
        NodePtr ex = parse_unary();
        if (ex->op == Op::num || (ex->op == Op::neg && ex->a->op == Op::num)) {
            const double k = ex->op == Op::num ? ex->value : -ex->a->value;
            if (k == std::round(k) && std::abs(k) <= 64) {
                auto n = std::const_pointer_cast<Node>(make(Op::ipow, from, base));
                n->value = k;
                return n;
            }
        }
        return make(Op::pow, from, base, ex);
    }

    NodePtr parse_primary() {
        skip();
        const std::size_t from = pos_;
        if (pos_ >= src_.size()) throw parse_error("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (eat('(')) {
            NodePtr e = parse_expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < src_.size() && std::isalnum(static_cast<unsigned char>(src_[end]))) ++end;
            const std::string id = src_.substr(pos_, end - pos_);
            if (id.size() == 2 && id[0] == 'x' && id[1] >= '1' && id[1] <= '9') {
                pos_ = end;
                auto n = std::const_pointer_cast<Node>(make(Op::var, from));
                n->index = static_cast<std::size_t>(id[1] - '1');
                highest_ = std::max(highest_, n->index + 1);
                return n;
            }
            if (id == "s") {
                if (!allow_param_) throw parse_error("parameter 's' is not allowed here", from);
                pos_ = end;
                uses_param_ = true;
                return make(Op::param, from);
            }
            Op op;
            if (id == "sqrt") op = Op::sqrt;
            else if (id == "exp") op = Op::exp;
            else if (id == "ln") op = Op::ln;
            else if (id == "sin") op = Op::sin;
            else if (id == "cos") op = Op::cos;
            else if (id == "abs") op = Op::abs;
            else {
                const auto next = src_.find_first_not_of(" \t", end);
                const bool call = next != std::string::npos && src_[next] == '(';
                throw parse_error((call ? "unsupported function '" : "unknown identifier '") + id + "'", from);
            }
            pos_ = end;
            if (!eat('(')) throw parse_error("expected '(' after " + id, pos_);
            NodePtr arg = parse_expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return make(op, from, arg);
        }
        throw parse_error(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t from = pos_;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
        if (ec != std::errc()) throw parse_error("malformed number", pos_);
        pos_ = static_cast<std::size_t>(ptr - src_.data());
        auto n = std::const_pointer_cast<Node>(make(Op::num, from));
        n->value = v;
        return n;
    }

    std::string src_;
    bool allow_param_;
    std::size_t pos_ = 0;
    std::size_t highest_ = 0;
    bool uses_param_ = false;
};

inline Parsed parse(std::string_view text, bool allow_param = false) { return Parser(text, allow_param).parse_list(); }

template <class T>
T eval(const Node& nd, const std::vector<T>& x, const T& s) {
    using std::cos, std::exp, std::log, std::sin, std::sqrt, std::abs;
    constexpr bool dual = !std::is_same_v<T, double>;
    auto fail = [&](const char* why) { throw nondifferentiable_error("'" + nd.text + "': " + why); };
    switch (nd.op) {
    case Op::num: return T(nd.value);
    case Op::var:
        if (nd.index >= x.size()) throw dimension_error("variable x" + std::to_string(nd.index + 1) + " out of range");
        return x[nd.index];
    case Op::param: return s;
    case Op::neg: return -eval(*nd.a, x, s);
    case Op::add: return eval(*nd.a, x, s) + eval(*nd.b, x, s);
    case Op::sub: return eval(*nd.a, x, s) - eval(*nd.b, x, s);
    case Op::mul: return eval(*nd.a, x, s) * eval(*nd.b, x, s);
    case Op::div: {
        const T d = eval(*nd.b, x, s);
        if constexpr (dual)
            if (value_of(d) == 0.0) fail("division by zero");
        return eval(*nd.a, x, s) / d;
    }
    case Op::ipow: {
        const T base = eval(*nd.a, x, s);
        const long k = std::lround(nd.value);
        T r = T(1.0);
        for (long i = 0; i < std::labs(k); ++i) r = r * base;
        if (k < 0) {
            if constexpr (dual)
                if (value_of(base) == 0.0) fail("negative power of zero");
            r = T(1.0) / r;
        }
        return r;
    }
    case Op::pow: {
        const T base = eval(*nd.a, x, s);
        if constexpr (dual)
            if (!(value_of(base) > 0.0)) fail("non-integer power needs a positive base");
        if constexpr (!dual)
            if (!(base > 0.0)) return std::nan("");
        return exp(eval(*nd.b, x, s) * log(base));
    }
    case Op::sqrt: {
        const T a = eval(*nd.a, x, s);
        if constexpr (dual)
            if (!(value_of(a) > 0.0)) fail("sqrt argument is not positive");
        return sqrt(a);
    }
    case Op::exp: return exp(eval(*nd.a, x, s));
    case Op::ln: {
        const T a = eval(*nd.a, x, s);
        if constexpr (dual)
            if (!(value_of(a) > 0.0)) fail("ln argument is not positive");
        return log(a);
    }
    case Op::sin: return sin(eval(*nd.a, x, s));
    case Op::cos: return cos(eval(*nd.a, x, s));
    case Op::abs: {
        const T a = eval(*nd.a, x, s);
        if constexpr (dual)
            if (value_of(a) == 0.0) fail("abs at zero");
        return abs(a);
    }
    }
    return T(0.0);
}

/// True when some sqrt, ln, abs or divisor argument vanishes at z.
inline bool hits_singularity(const Node& nd, const std::vector<double>& z, double s = 0.0) {
    auto sub = [&](const NodePtr& p) { return p && hits_singularity(*p, z, s); };
    if (sub(nd.a) || sub(nd.b)) return true;
    switch (nd.op) {
    case Op::sqrt:
    case Op::ln:
    case Op::abs: return eval(*nd.a, z, s) == 0.0;
    case Op::div: return eval(*nd.b, z, s) == 0.0;
    case Op::ipow: return nd.value < 0 && eval(*nd.a, z, s) == 0.0;
    default: return false;
    }
}

} // namespace expr

/// Builds a mapping from text; n is the highest variable index used, m the
/// number of comma-separated components.
inline MappingSpec parse_inline_mapping(const std::string& text, const std::string& name = "expr") {
    const expr::Parsed p = expr::parse(text);
    MappingSpec s;
    s.name = name;
    s.n = p.n;
    s.m = p.components.size();
    auto comps = p.components;
    s.eval = [comps](const Vector& z) {
        std::vector<double> out;
        for (const auto& c : comps) out.push_back(expr::eval(*c, z.values(), 0.0));
        return Vector(out);
    };
    s.eval_dual = [comps](const std::vector<Dual<>>& z) {
        std::vector<Dual<>> out;
        for (const auto& c : comps) out.push_back(expr::eval(*c, z, Dual<>(0.0)));
        return out;
    };
    s.singular_locus = [comps](const Vector& z) {
        for (const auto& c : comps)
            if (expr::hits_singularity(*c, z.values())) return true;
        return false;
    };
    s.locus_description = "a sqrt, ln, abs or divisor argument vanishes";
    s.origin = Origin::user;
    return s;
}

} // namespace covkit
