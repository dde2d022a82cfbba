#pragma once

#include <cstdint>
#include <string>

#include "apport/cmatrix.hpp"

namespace apport {

enum class ApportionStatus { uniform, inconclusive, infeasible_by_theorem };

std::string to_string(ApportionStatus s);

/// Outcome of an apportionment attempt.
struct ApportionReport {
    ApportionStatus status = ApportionStatus::inconclusive;
    CMatrix transform;      // U (unitary mode) or M (general mode)
    CMatrix result;         // transform * A * transform^{-1}
    double kappa = 0.0;     // target or measured constant
    double residual = 0.0;  // max deviation of |entries| from kappa
    std::int64_t iterations = 0;
    std::uint64_t seed = 0;
    std::string note;       // names the closed-form test behind an infeasibility verdict
};

}  // namespace apport
