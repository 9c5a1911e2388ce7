#pragma once

#include <cstdint>

#include "birkhoff/errors.hpp"
#include "birkhoff/sets.hpp"

namespace birkhoff {

/// Shared numeric configuration for integration, audits, and checks.
struct RunConfig {
    double tolerance = 1e-8;       // convergence tolerance for integrals
    int stages = 8;                // refinement stages sampled by the integrator
    int samples_per_stage = 32;    // sampled refinements per stage
    Nat horizon = 64;              // enumeration truncation index
    std::uint64_t seed = 42;       // deterministic sampling seed

    void validate() const {
        if (!(tolerance > 0.0)) throw ConfigError("run.tolerance", "must be positive");
        if (stages < 1) throw ConfigError("run.stages", "must be positive");
        if (samples_per_stage < 1) throw ConfigError("run.samples_per_stage", "must be positive");
        if (horizon < 1) throw ConfigError("run.horizon", "must be positive");
        if (horizon < static_cast<Nat>(stages)) {
            throw ConfigError("run.horizon", "must be at least run.stages");
        }
    }

    /// The ground space this configuration enumerates over.
    GroundSpace ground() const { return GroundSpace{horizon, "naturals"}; }
};

/// Tolerance used when comparing set-function iterates along chains.
inline constexpr double kTailTolerance = 1e-10;

}  // namespace birkhoff
