#pragma once

#include <optional>

#include "ndc/errors.hpp"

namespace ndc {

/// Certified interval [lower, upper] for an operator-norm quantity. An absent
/// upper end means no finite bound is known.
struct NormBound {
    double lower = 0.0;
    std::optional<double> upper;

    NormBound() = default;
    NormBound(double lo, std::optional<double> hi) : lower(lo), upper(hi) {
        if (lo < 0.0 || (hi && *hi < lo)) {
            throw ConsistencyError("norm bound requires 0 <= lower <= upper");
        }
    }

    static NormBound exact(double v) { return NormBound(v, v); }
    bool upper_known() const { return upper.has_value(); }
};

}  // namespace ndc
