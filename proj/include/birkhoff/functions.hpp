#pragma once

#include <optional>
#include <string>

#include "birkhoff/expr.hpp"
#include "birkhoff/sets.hpp"

namespace birkhoff {

/// A real function on the naturals, carried by a bound expression tree,
/// with an optional declared support (outside of which it evaluates to 0).
class ScalarFunction {
public:
    ScalarFunction() : expr_(make_num(0.0)), support_(MeasurableSet::empty()) {}

    static ScalarFunction from_expr(ExprPtr expr, std::optional<MeasurableSet> support = {},
                                    std::string label = "");
    static ScalarFunction from_text(const std::string& text, const SetEnv& env,
                                    std::optional<MeasurableSet> support = {},
                                    std::string label = "");
    static ScalarFunction constant(double c, std::string label = "");
    static ScalarFunction indicator(MeasurableSet set, std::string name = "");
    static ScalarFunction geometric(double ratio, std::string label = "");

    double operator()(Nat n) const { return eval_expr(expr_, n); }

    const ExprPtr& expr() const { return expr_; }
    const std::optional<MeasurableSet>& declared_support() const { return support_; }
    const std::string& label() const { return label_; }
    std::string to_text() const { return to_string(expr_); }

private:
    ExprPtr expr_;
    std::optional<MeasurableSet> support_;
    std::string label_;
};

enum class PointwiseOp { Min, Max, AbsOfFirst, Sum, Product };

/// Pointwise combination of two functions; closure under the integral is a
/// tested property, not an assumption. AbsOfFirst ignores v.
ScalarFunction pointwise(const ScalarFunction& u, const ScalarFunction& v, PointwiseOp op);

ScalarFunction pw_min(const ScalarFunction& u, const ScalarFunction& v);
ScalarFunction pw_max(const ScalarFunction& u, const ScalarFunction& v);
ScalarFunction pw_abs(const ScalarFunction& u);
ScalarFunction pw_sum(const ScalarFunction& u, const ScalarFunction& v);
ScalarFunction pw_product(const ScalarFunction& u, const ScalarFunction& v);
ScalarFunction pw_scale(const ScalarFunction& u, double c);

}  // namespace birkhoff
