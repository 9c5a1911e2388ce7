#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "birkhoff/sets.hpp"

namespace birkhoff {

/// Closed range of possible values of an expression over a tail [N, ∞).
/// Endpoints may be ±infinity. Multiplication uses the measure-theoretic
/// convention 0 * ∞ = 0, matching the evaluator's zero short-circuit.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval point(double v) { return {v, v}; }
    static Interval whole();

    double abs_sup() const;
    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
};

Interval interval_add(Interval a, Interval b);
Interval interval_sub(Interval a, Interval b);
Interval interval_mul(Interval a, Interval b);
Interval interval_div(Interval a, Interval b);
Interval interval_neg(Interval a);
Interval interval_abs(Interval a);
Interval interval_min(Interval a, Interval b);
Interval interval_max(Interval a, Interval b);
Interval interval_pow(Interval base, double exponent);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Abstract syntax for scalar functions of the index variable `n`.
///
/// Grammar (whitespace-insensitive; `pow` right-associative; unary minus
/// binds tighter than every binary operator, so -2^2 = (-2)^2):
///
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := signed ('^' factor)?
///   signed  := '-' signed | atom
///   atom    := NUMBER | 'n' | call | '(' expr ')'
///   call    := 'abs' '(' expr ')' | 'min' '(' expr ',' expr ')'
///            | 'max' '(' expr ',' expr ')' | 'indicator' '(' IDENT ')'
///            | 'geom' '(' NUMBER ')' | 'const' '(' NUMBER ')'
struct Expr {
    enum class Tag { Num, Var, Neg, Abs, Add, Sub, Mul, Div, Pow, Min, Max, Indicator, Geom };

    Tag tag;
    double value = 0.0;       // Num, Geom (ratio)
    ExprPtr left, right;      // operands
    std::string set_name;     // Indicator
    std::optional<MeasurableSet> set;  // Indicator, once bound
};

using SetEnv = std::map<std::string, MeasurableSet>;

// -- construction -----------------------------------------------------------

ExprPtr make_num(double v);  // negative v normalizes to Neg(Num(-v))
ExprPtr make_var();
ExprPtr make_neg(ExprPtr e);
ExprPtr make_abs(ExprPtr e);
ExprPtr make_binary(Expr::Tag op, ExprPtr l, ExprPtr r);
ExprPtr make_indicator(std::string name, std::optional<MeasurableSet> set = std::nullopt);
ExprPtr make_geom(double ratio);

// -- parsing and printing ---------------------------------------------------

/// Parses the grammar above. Indicator references stay unbound.
/// Throws SyntaxError (0-based position) and UnknownIdentifier.
ExprPtr parse_expr(const std::string& text);

/// Canonical form with minimal parentheses; parsing it back yields a
/// structurally identical tree.
std::string to_string(const ExprPtr& e);

/// Resolves indicator set names against `env`; throws UnknownIdentifier.
ExprPtr bind_sets(const ExprPtr& e, const SetEnv& env);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// -- evaluation -------------------------------------------------------------

/// Evaluates at index n. Multiplication short-circuits on an exactly-zero
/// left factor. Throws EvalError on division by zero or non-finite results,
/// UnknownIdentifier for unbound indicators.
double eval_expr(const ExprPtr& e, Nat n);

/// Sound enclosure of the expression's values on [start, ∞).
Interval expr_range_from(const ExprPtr& e, Nat start);

}  // namespace birkhoff
