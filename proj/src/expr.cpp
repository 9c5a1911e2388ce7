#include "birkhoff/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// intervals

Interval Interval::whole() { return {-kInf, kInf}; }

double Interval::abs_sup() const { return std::max(std::abs(lo), std::abs(hi)); }

Interval interval_add(Interval a, Interval b) {
    double lo = a.lo + b.lo, hi = a.hi + b.hi;
    if (std::isnan(lo)) lo = -kInf;
    if (std::isnan(hi)) hi = kInf;
    return {lo, hi};
}

Interval interval_sub(Interval a, Interval b) { return interval_add(a, interval_neg(b)); }

namespace {
// 0 * inf = 0 by the measure convention (matches the lazy evaluator)
double mul_conv(double x, double y) {
    if (x == 0.0 || y == 0.0) return 0.0;
    return x * y;
}
}  // namespace

Interval interval_mul(Interval a, Interval b) {
    const double c[4] = {mul_conv(a.lo, b.lo), mul_conv(a.lo, b.hi), mul_conv(a.hi, b.lo),
                         mul_conv(a.hi, b.hi)};
    double lo = c[0], hi = c[0];
    for (double v : c) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

Interval interval_div(Interval a, Interval b) {
    if (b.contains_zero()) return Interval::whole();
    const double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    double lo = c[0], hi = c[0];
    for (double v : c) {
        lo = std::min(lo, std::isnan(v) ? -kInf : v);
        hi = std::max(hi, std::isnan(v) ? kInf : v);
    }
    return {lo, hi};
}

Interval interval_neg(Interval a) { return {-a.hi, -a.lo}; }

Interval interval_abs(Interval a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return {-a.hi, -a.lo};
    return {0.0, std::max(-a.lo, a.hi)};
}

Interval interval_min(Interval a, Interval b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval interval_max(Interval a, Interval b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval interval_pow(Interval base, double exponent) {
    if (exponent == 0.0) return Interval::point(1.0);
    if (base.lo >= 0.0) {
        const double pl = std::pow(base.lo, exponent);
        const double ph = std::pow(base.hi, exponent);
        // monotone increasing for e > 0, decreasing for e < 0
        double lo = std::min(pl, ph), hi = std::max(pl, ph);
        if (std::isnan(lo)) lo = 0.0;
        if (std::isnan(hi)) hi = kInf;
        return {lo, hi};
    }
    const double r = std::round(exponent);
    if (r == exponent && std::abs(exponent) < 64.0) {
        // integer exponent: extrema sit at endpoints (and 0 when straddling)
        std::vector<double> cand{std::pow(base.lo, exponent), std::pow(base.hi, exponent)};
        if (base.contains_zero()) cand.push_back(exponent > 0.0 ? 0.0 : kInf);
        double lo = cand[0], hi = cand[0];
        for (double v : cand) {
            lo = std::min(lo, std::isnan(v) ? -kInf : v);
            hi = std::max(hi, std::isnan(v) ? kInf : v);
        }
        if (exponent < 0.0 && base.contains_zero()) return Interval::whole();
        return {lo, hi};
    }
    return Interval::whole();  // fractional power of a negative base
}

// ---------------------------------------------------------------------------
// construction

namespace {
ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr make_num(double v) {
    if (!std::isfinite(v)) throw EvalError("numeric literal must be finite");
    if (std::signbit(v) && v != 0.0) return make_neg(make_num(-v));
    Expr e;
    e.tag = Expr::Tag::Num;
    e.value = v;
    return node(std::move(e));
}

ExprPtr make_var() {
    Expr e;
    e.tag = Expr::Tag::Var;
    return node(std::move(e));
}

ExprPtr make_neg(ExprPtr child) {
    Expr e;
    e.tag = Expr::Tag::Neg;
    e.left = std::move(child);
    return node(std::move(e));
}

ExprPtr make_abs(ExprPtr child) {
    Expr e;
    e.tag = Expr::Tag::Abs;
    e.left = std::move(child);
    return node(std::move(e));
}

ExprPtr make_binary(Expr::Tag op, ExprPtr l, ExprPtr r) {
    Expr e;
    e.tag = op;
    e.left = std::move(l);
    e.right = std::move(r);
    return node(std::move(e));
}

ExprPtr make_indicator(std::string name, std::optional<MeasurableSet> set) {
    Expr e;
    e.tag = Expr::Tag::Indicator;
    e.set_name = std::move(name);
    e.set = std::move(set);
    return node(std::move(e));
}

ExprPtr make_geom(double ratio) {
    if (!std::isfinite(ratio)) throw EvalError("geom ratio must be finite");
    Expr e;
    e.tag = Expr::Tag::Geom;
    e.value = ratio;
    return node(std::move(e));
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    Kind kind;
    std::size_t pos;
    double number = 0.0;
    std::string ident;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        current_.pos = i_;
        if (i_ >= text_.size()) {
            current_.kind = Token::Kind::End;
            return;
        }
        const char c = text_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) {
                ++j;
            }
            current_.kind = Token::Kind::Ident;
            current_.ident = text_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        using K = Token::Kind;
        switch (c) {
            case '+': current_.kind = K::Plus; break;
            case '-': current_.kind = K::Minus; break;
            case '*': current_.kind = K::Star; break;
            case '/': current_.kind = K::Slash; break;
            case '^': current_.kind = K::Caret; break;
            case '(': current_.kind = K::LParen; break;
            case ')': current_.kind = K::RParen; break;
            case ',': current_.kind = K::Comma; break;
            default: throw SyntaxError(i_, std::string("unexpected character '") + c + "'");
        }
        ++i_;
    }

    void lex_number() {
        std::size_t j = i_;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        if (j < text_.size() && text_[j] == '.') {
            ++j;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        }
        if (j < text_.size() && (text_[j] == 'e' || text_[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
            if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
                ++k;
                while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
                j = k;
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(text_.data() + i_, text_.data() + j, v);
        if (res.ec != std::errc()) throw SyntaxError(i_, "bad numeric literal");
        current_.kind = Token::Kind::Number;
        current_.number = v;
        i_ = j;
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End) throw SyntaxError(t.pos, "trailing input");
        return e;
    }

private:
    using K = Token::Kind;

    ExprPtr expr() {
        ExprPtr e = term();
        while (lex_.peek().kind == K::Plus || lex_.peek().kind == K::Minus) {
            const Token op = lex_.take();
            e = make_binary(op.kind == K::Plus ? Expr::Tag::Add : Expr::Tag::Sub, e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (lex_.peek().kind == K::Star || lex_.peek().kind == K::Slash) {
            const Token op = lex_.take();
            e = make_binary(op.kind == K::Star ? Expr::Tag::Mul : Expr::Tag::Div, e, factor());
        }
        return e;
    }

    ExprPtr factor() {
        ExprPtr base = signed_atom();
        if (lex_.peek().kind == K::Caret) {
            lex_.take();
            return make_binary(Expr::Tag::Pow, base, factor());  // right-associative
        }
        return base;
    }

    ExprPtr signed_atom() {
        if (lex_.peek().kind == K::Minus) {
            lex_.take();
            return make_neg(signed_atom());
        }
        return atom();
    }

    ExprPtr atom() {
        const Token t = lex_.take();
        switch (t.kind) {
            case K::Number: return make_num(t.number);
            case K::LParen: {
                ExprPtr e = expr();
                expect(K::RParen, "expected ')'");
                return e;
            }
            case K::Ident: return call_or_var(t);
            default: throw SyntaxError(t.pos, "expected operand");
        }
    }

    ExprPtr call_or_var(const Token& name) {
        if (name.ident == "n") return make_var();
        if (lex_.peek().kind != K::LParen) throw UnknownIdentifier(name.ident);
        lex_.take();
        if (name.ident == "abs") {
            ExprPtr a = expr();
            expect(K::RParen, "expected ')'");
            return make_abs(a);
        }
        if (name.ident == "min" || name.ident == "max") {
            ExprPtr a = expr();
            expect(K::Comma, "expected ','");
            ExprPtr b = expr();
            expect(K::RParen, "expected ')'");
            return make_binary(name.ident == "min" ? Expr::Tag::Min : Expr::Tag::Max, a, b);
        }
        if (name.ident == "indicator") {
            const Token arg = lex_.take();
            if (arg.kind != K::Ident) throw SyntaxError(arg.pos, "expected set name");
            expect(K::RParen, "expected ')'");
            return make_indicator(arg.ident);
        }
        if (name.ident == "geom" || name.ident == "const") {
            ExprPtr inner = signed_atom();
            if (inner->tag != Expr::Tag::Num &&
                !(inner->tag == Expr::Tag::Neg && inner->left->tag == Expr::Tag::Num)) {
                throw SyntaxError(lex_.peek().pos, "expected numeric literal");
            }
            const double v = inner->tag == Expr::Tag::Num ? inner->value : -inner->left->value;
            expect(K::RParen, "expected ')'");
            return name.ident == "geom" ? make_geom(v) : make_num(v);
        }
        throw UnknownIdentifier(name.ident);
    }

    void expect(K kind, const char* message) {
        const Token t = lex_.take();
        if (t.kind != kind) throw SyntaxError(t.pos, message);
    }

    Lexer lex_;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(const ExprPtr& e) {
    switch (e->tag) {
        case Expr::Tag::Add:
        case Expr::Tag::Sub: return 1;
        case Expr::Tag::Mul:
        case Expr::Tag::Div: return 2;
        case Expr::Tag::Pow: return 3;
        case Expr::Tag::Neg: return 4;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void print(const ExprPtr& e, std::string& out);

void print_child(const ExprPtr& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        print(child, out);
        out += ')';
    } else {
        print(child, out);
    }
}

void print(const ExprPtr& e, std::string& out) {
    switch (e->tag) {
        case Expr::Tag::Num: out += format_number(e->value); return;
        case Expr::Tag::Var: out += 'n'; return;
        case Expr::Tag::Neg:
            out += '-';
            print_child(e->left, 4, out);
            return;
        case Expr::Tag::Abs:
            out += "abs(";
            print(e->left, out);
            out += ')';
            return;
        case Expr::Tag::Add:
        case Expr::Tag::Sub:
            print_child(e->left, 1, out);
            out += e->tag == Expr::Tag::Add ? " + " : " - ";
            print_child(e->right, 2, out);
            return;
        case Expr::Tag::Mul:
        case Expr::Tag::Div:
            print_child(e->left, 2, out);
            out += e->tag == Expr::Tag::Mul ? " * " : " / ";
            print_child(e->right, 3, out);
            return;
        case Expr::Tag::Pow:
            print_child(e->left, 4, out);
            out += '^';
            print_child(e->right, 3, out);
            return;
        case Expr::Tag::Min:
        case Expr::Tag::Max:
            out += e->tag == Expr::Tag::Min ? "min(" : "max(";
            print(e->left, out);
            out += ", ";
            print(e->right, out);
            out += ')';
            return;
        case Expr::Tag::Indicator:
            out += "indicator(";
            out += e->set_name;
            out += ')';
            return;
        case Expr::Tag::Geom:
            out += "geom(";
            out += format_number(e->value);
            out += ')';
            return;
    }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    std::string out;
    print(e, out);
    return out;
}

ExprPtr bind_sets(const ExprPtr& e, const SetEnv& env) {
    switch (e->tag) {
        case Expr::Tag::Indicator: {
            auto it = env.find(e->set_name);
            if (it == env.end()) throw UnknownIdentifier(e->set_name);
            return make_indicator(e->set_name, it->second);
        }
        case Expr::Tag::Num:
        case Expr::Tag::Var:
        case Expr::Tag::Geom: return e;
        case Expr::Tag::Neg: return make_neg(bind_sets(e->left, env));
        case Expr::Tag::Abs: return make_abs(bind_sets(e->left, env));
        default:
            return make_binary(e->tag, bind_sets(e->left, env), bind_sets(e->right, env));
    }
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->tag != b->tag) return false;
    switch (a->tag) {
        case Expr::Tag::Num:
        case Expr::Tag::Geom: return a->value == b->value;
        case Expr::Tag::Var: return true;
        case Expr::Tag::Indicator: return a->set_name == b->set_name;
        case Expr::Tag::Neg:
        case Expr::Tag::Abs: return expr_equal(a->left, b->left);
        default: return expr_equal(a->left, b->left) && expr_equal(a->right, b->right);
    }
}

// ---------------------------------------------------------------------------
// evaluation

double eval_expr(const ExprPtr& e, Nat n) {
    switch (e->tag) {
        case Expr::Tag::Num: return e->value;
        case Expr::Tag::Var: return static_cast<double>(n);
        case Expr::Tag::Neg: return -eval_expr(e->left, n);
        case Expr::Tag::Abs: return std::abs(eval_expr(e->left, n));
        case Expr::Tag::Add: return eval_expr(e->left, n) + eval_expr(e->right, n);
        case Expr::Tag::Sub: return eval_expr(e->left, n) - eval_expr(e->right, n);
        case Expr::Tag::Mul: {
            const double l = eval_expr(e->left, n);
            if (l == 0.0) return 0.0;  // dead branch is never evaluated
            const double r = eval_expr(e->right, n);
            if (r == 0.0) return 0.0;
            return l * r;
        }
        case Expr::Tag::Div: {
            const double r = eval_expr(e->right, n);
            if (r == 0.0) throw EvalError("division by zero at n=" + std::to_string(n));
            return eval_expr(e->left, n) / r;
        }
        case Expr::Tag::Pow: {
            const double v = std::pow(eval_expr(e->left, n), eval_expr(e->right, n));
            if (!std::isfinite(v)) {
                throw EvalError("non-finite power at n=" + std::to_string(n));
            }
            return v;
        }
        case Expr::Tag::Min: return std::min(eval_expr(e->left, n), eval_expr(e->right, n));
        case Expr::Tag::Max: return std::max(eval_expr(e->left, n), eval_expr(e->right, n));
        case Expr::Tag::Indicator:
            if (!e->set) throw UnknownIdentifier(e->set_name);
            return e->set->member(n) ? 1.0 : 0.0;
        case Expr::Tag::Geom: {
            const double v = std::pow(e->value, static_cast<double>(n));
            if (!std::isfinite(v)) {
                throw EvalError("non-finite geom at n=" + std::to_string(n));
            }
            return v;
        }
    }
    throw Error("unreachable expr tag");
}

namespace {

Interval indicator_range_from(const MeasurableSet& s, Nat start) {
    using K = MeasurableSet::Kind;
    switch (s.kind()) {
        case K::Finite: {
            const auto& e = s.explicit_list();
            if (e.empty() || e.back() < start) return Interval::point(0.0);
            return {0.0, 1.0};
        }
        case K::Cofinite: {
            const auto& e = s.explicit_list();
            if (e.empty() || e.back() < start) return Interval::point(1.0);
            return {0.0, 1.0};
        }
        default: break;
    }
    switch (s.predicate_kind()) {
        case PredicateKind::Lt:
            if (s.predicate_param() <= start) return Interval::point(0.0);
            break;
        case PredicateKind::Geq:
            if (s.predicate_param() <= start) return Interval::point(1.0);
            break;
        default: break;
    }
    return {0.0, 1.0};
}

}  // namespace

Interval expr_range_from(const ExprPtr& e, Nat start) {
    switch (e->tag) {
        case Expr::Tag::Num: return Interval::point(e->value);
        case Expr::Tag::Var: return {static_cast<double>(start), kInf};
        case Expr::Tag::Neg: return interval_neg(expr_range_from(e->left, start));
        case Expr::Tag::Abs: return interval_abs(expr_range_from(e->left, start));
        case Expr::Tag::Add:
            return interval_add(expr_range_from(e->left, start), expr_range_from(e->right, start));
        case Expr::Tag::Sub:
            return interval_sub(expr_range_from(e->left, start), expr_range_from(e->right, start));
        case Expr::Tag::Mul:
            return interval_mul(expr_range_from(e->left, start), expr_range_from(e->right, start));
        case Expr::Tag::Div:
            return interval_div(expr_range_from(e->left, start), expr_range_from(e->right, start));
        case Expr::Tag::Pow:
            if (e->right->tag == Expr::Tag::Num) {
                return interval_pow(expr_range_from(e->left, start), e->right->value);
            }
            if (e->right->tag == Expr::Tag::Neg && e->right->left->tag == Expr::Tag::Num) {
                return interval_pow(expr_range_from(e->left, start), -e->right->left->value);
            }
            return Interval::whole();
        case Expr::Tag::Min:
            return interval_min(expr_range_from(e->left, start), expr_range_from(e->right, start));
        case Expr::Tag::Max:
            return interval_max(expr_range_from(e->left, start), expr_range_from(e->right, start));
        case Expr::Tag::Indicator:
            if (!e->set) throw UnknownIdentifier(e->set_name);
            return indicator_range_from(*e->set, start);
        case Expr::Tag::Geom: {
            const double r = e->value;
            const double a = std::abs(r);
            if (a < 1.0) {
                const double m = std::pow(a, static_cast<double>(start));
                return r >= 0.0 ? Interval{0.0, m} : Interval{-m, m};
            }
            if (r == 1.0) return Interval::point(1.0);
            return r > 1.0 ? Interval{std::pow(r, static_cast<double>(start)), kInf}
                           : Interval::whole();
        }
    }
    return Interval::whole();
}

}  // namespace birkhoff
