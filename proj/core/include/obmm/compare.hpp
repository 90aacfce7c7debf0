#pragma once

#include "obmm/multivector.hpp"

#include <algorithm>
#include <cmath>

namespace obmm {

inline constexpr double kAbsFloor = 1e-15;

/// |a - b| <= max(rel * max(|a|, |b|), kAbsFloor).
inline bool approx_equal(double a, double b, double rel) noexcept
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(rel * scale, kAbsFloor);
}

struct Mismatch {
    BladeId id = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Per-coefficient comparison over the union of terms of both multivectors.
/// Returns false (and fills *where, when given) on the first disagreement.
bool approx_equal(const SparseMultivector& a, const SparseMultivector& b, double rel,
                  Mismatch* where = nullptr);

}  // namespace obmm
