#include "birkhoff/weights.hpp"

#include <cmath>
#include <numbers>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {
constexpr double kZeta2Scale = 6.0 / (std::numbers::pi * std::numbers::pi);
}

WeightSequence WeightSequence::geometric(double ratio) {
    if (!(ratio > 0.0) || !(ratio < 1.0)) {
        throw BadBounds("geometric ratio must lie in (0,1)");
    }
    WeightSequence w;
    w.repr_ = Geometric{ratio};
    return w;
}

WeightSequence WeightSequence::uniform(Nat count) {
    if (count == 0) throw BadBounds("uniform weight count must be positive");
    WeightSequence w;
    w.repr_ = Uniform{count};
    return w;
}

WeightSequence WeightSequence::zeta2() {
    WeightSequence w;
    w.repr_ = Zeta2{};
    return w;
}

WeightSequence WeightSequence::explicit_list(std::vector<double> weights) {
    for (double x : weights) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw BadBounds("explicit weights must be finite and nonnegative");
        }
    }
    WeightSequence w;
    w.repr_ = Explicit{std::move(weights)};
    return w;
}

WeightSequence WeightSequence::parse(const std::string& text) {
    if (text == "zeta2") return zeta2();
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string family = text.substr(0, colon);
        const std::string arg = text.substr(colon + 1);
        try {
            if (family == "geometric") return geometric(std::stod(arg));
            if (family == "uniform") return uniform(static_cast<Nat>(std::stoull(arg)));
        } catch (const std::logic_error&) {
            throw BadBounds("bad weight parameter '" + arg + "'");
        }
    }
    throw BadBounds("unknown weight family '" + text + "'");
}

double WeightSequence::at(Nat n) const {
    if (const auto* g = std::get_if<Geometric>(&repr_)) {
        return (1.0 - g->ratio) * std::pow(g->ratio, static_cast<double>(n));
    }
    if (const auto* u = std::get_if<Uniform>(&repr_)) {
        return n < u->count ? 1.0 / static_cast<double>(u->count) : 0.0;
    }
    if (std::get_if<Zeta2>(&repr_)) {
        const double m = static_cast<double>(n) + 1.0;
        return kZeta2Scale / (m * m);
    }
    const auto& list = std::get<Explicit>(repr_).weights;
    return n < list.size() ? list[n] : 0.0;
}

std::optional<double> WeightSequence::tail_bound(Nat start, double power) const {
    const double N = static_cast<double>(start);
    if (const auto* g = std::get_if<Geometric>(&repr_)) {
        // sum_{n>=N} ((1-r) r^n)^p = (1-r)^p r^{pN} / (1 - r^p)
        const double rp = std::pow(g->ratio, power);
        if (!(rp < 1.0)) return std::nullopt;
        return std::pow(1.0 - g->ratio, power) * std::pow(g->ratio, power * N) / (1.0 - rp);
    }
    if (const auto* u = std::get_if<Uniform>(&repr_)) {
        if (start >= u->count) return 0.0;
        const double w = std::pow(1.0 / static_cast<double>(u->count), power);
        return static_cast<double>(u->count - start) * w;
    }
    if (std::get_if<Zeta2>(&repr_)) {
        // sum_{m>N} m^{-s} <= N^{1-s}/(s-1) for s > 1, diverges otherwise
        const double s = 2.0 * power;
        if (!(s > 1.0)) return std::nullopt;
        const double anchor = std::max(N, 1.0);
        return std::pow(kZeta2Scale, power) * std::pow(anchor, 1.0 - s) / (s - 1.0);
    }
    const auto& list = std::get<Explicit>(repr_).weights;
    double total = 0.0;
    for (std::size_t n = start; n < list.size(); ++n) total += std::pow(list[n], power);
    return total;
}

std::string WeightSequence::describe() const {
    if (const auto* g = std::get_if<Geometric>(&repr_)) {
        return "geometric:" + std::to_string(g->ratio);
    }
    if (const auto* u = std::get_if<Uniform>(&repr_)) {
        return "uniform:" + std::to_string(u->count);
    }
    if (std::get_if<Zeta2>(&repr_)) return "zeta2";
    return "explicit[" + std::to_string(std::get<Explicit>(repr_).weights.size()) + "]";
}

}  // namespace birkhoff
