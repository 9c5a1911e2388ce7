#include "birkhoff/functions.hpp"

namespace birkhoff {

namespace {

// a declared support is a promise: the function vanishes outside it
void spot_check_support(const ExprPtr& expr, const MeasurableSet& support) {
    int probed = 0;
    for (Nat n = 0; n < 64 && probed < 8; ++n) {
        if (support.member(n)) continue;
        ++probed;
        if (eval_expr(expr, n) != 0.0) {
            throw EvalError("declared support violated at n=" + std::to_string(n));
        }
    }
}

std::optional<MeasurableSet> support_union(const std::optional<MeasurableSet>& a,
                                           const std::optional<MeasurableSet>& b) {
    if (!a || !b) return std::nullopt;
    return set_union(*a, *b);
}

std::optional<MeasurableSet> support_intersect(const std::optional<MeasurableSet>& a,
                                               const std::optional<MeasurableSet>& b) {
    if (a && b) return set_intersect(*a, *b);
    if (a) return a;
    return b;
}

}  // namespace

ScalarFunction ScalarFunction::from_expr(ExprPtr expr, std::optional<MeasurableSet> support,
                                         std::string label) {
    if (support) spot_check_support(expr, *support);
    ScalarFunction f;
    f.expr_ = std::move(expr);
    f.support_ = std::move(support);
    f.label_ = std::move(label);
    return f;
}

ScalarFunction ScalarFunction::from_text(const std::string& text, const SetEnv& env,
                                         std::optional<MeasurableSet> support,
                                         std::string label) {
    return from_expr(bind_sets(parse_expr(text), env), std::move(support), std::move(label));
}

ScalarFunction ScalarFunction::constant(double c, std::string label) {
    std::optional<MeasurableSet> support;
    if (c == 0.0) support = MeasurableSet::empty();
    return from_expr(make_num(c), std::move(support),
                     label.empty() ? "const" : std::move(label));
}

ScalarFunction ScalarFunction::indicator(MeasurableSet set, std::string name) {
    if (name.empty()) name = set.label().empty() ? "S" : set.label();
    auto expr = make_indicator(name, set);
    return from_expr(std::move(expr), std::move(set), "chi_" + name);
}

ScalarFunction ScalarFunction::geometric(double ratio, std::string label) {
    return from_expr(make_geom(ratio), std::nullopt, std::move(label));
}

ScalarFunction pointwise(const ScalarFunction& u, const ScalarFunction& v, PointwiseOp op) {
    switch (op) {
        case PointwiseOp::Min: return pw_min(u, v);
        case PointwiseOp::Max: return pw_max(u, v);
        case PointwiseOp::AbsOfFirst: return pw_abs(u);
        case PointwiseOp::Sum: return pw_sum(u, v);
        case PointwiseOp::Product: return pw_product(u, v);
    }
    throw Error("unreachable pointwise op");
}

ScalarFunction pw_min(const ScalarFunction& u, const ScalarFunction& v) {
    return ScalarFunction::from_expr(make_binary(Expr::Tag::Min, u.expr(), v.expr()),
                                     support_union(u.declared_support(), v.declared_support()));
}

ScalarFunction pw_max(const ScalarFunction& u, const ScalarFunction& v) {
    return ScalarFunction::from_expr(make_binary(Expr::Tag::Max, u.expr(), v.expr()),
                                     support_union(u.declared_support(), v.declared_support()));
}

ScalarFunction pw_abs(const ScalarFunction& u) {
    return ScalarFunction::from_expr(make_abs(u.expr()), u.declared_support());
}

ScalarFunction pw_sum(const ScalarFunction& u, const ScalarFunction& v) {
    return ScalarFunction::from_expr(make_binary(Expr::Tag::Add, u.expr(), v.expr()),
                                     support_union(u.declared_support(), v.declared_support()));
}

ScalarFunction pw_product(const ScalarFunction& u, const ScalarFunction& v) {
    return ScalarFunction::from_expr(make_binary(Expr::Tag::Mul, u.expr(), v.expr()),
                                     support_intersect(u.declared_support(), v.declared_support()));
}

ScalarFunction pw_scale(const ScalarFunction& u, double c) {
    if (c == 0.0) return ScalarFunction::constant(0.0);
    return ScalarFunction::from_expr(make_binary(Expr::Tag::Mul, make_num(c), u.expr()),
                                     u.declared_support());
}

}  // namespace birkhoff
