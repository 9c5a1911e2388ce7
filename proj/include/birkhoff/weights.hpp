#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "birkhoff/sets.hpp"

namespace birkhoff {

/// A nonnegative weight sequence w(0), w(1), ... with a summable closed-form
/// tail. Families:
///   geometric(r):  w(n) = (1-r) * r^n            (total 1, tail r^N)
///   uniform(k):    w(n) = 1/k for n < k, else 0  (total 1, zero tail)
///   zeta2:         w(n) = (6/pi^2) / (n+1)^2     (total 1)
///   explicit list: w(n) = list[n], 0 beyond
class WeightSequence {
public:
    static WeightSequence geometric(double ratio);
    static WeightSequence uniform(Nat count);
    static WeightSequence zeta2();
    static WeightSequence explicit_list(std::vector<double> weights);

    /// Parse "geometric:0.5" | "uniform:8" | "zeta2".
    static WeightSequence parse(const std::string& text);

    double at(Nat n) const;

    /// Upper bound on sum_{n >= start} w(n)^power. nullopt when the
    /// transformed series diverges or no closed form is available.
    /// power = 1 is the plain tail; 0.5 and 2 serve distorted measures.
    std::optional<double> tail_bound(Nat start, double power = 1.0) const;

    std::string describe() const;

private:
    struct Geometric {
        double ratio;
    };
    struct Uniform {
        Nat count;
    };
    struct Zeta2 {};
    struct Explicit {
        std::vector<double> weights;
    };
    std::variant<Geometric, Uniform, Zeta2, Explicit> repr_;
};

}  // namespace birkhoff
