#pragma once

// Cached basis mapping: precompute T_i for every domain blade i and map a
// multivector by a loop over its nonzero terms.

#include "obmm/mapping.hpp"
#include "obmm/multivector.hpp"
#include "obmm/outermorphism.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace obmm {

/// Default cap on cached scalars: 2^27 doubles (1 GiB).
inline constexpr std::uint64_t kDefaultCbmmBudget = std::uint64_t{1} << 27;

/// Scalars stored by a full table: sum_k C(n,k) * C(m,k). Equals C(2n, n)
/// when n == m.
std::uint64_t cbmm_scalar_count(int n, int m) noexcept;

class CbmmTable {
public:
    const Outermorphism& base() const noexcept { return base_; }

    /// Entry i is T_i; empty when grade(i) exceeds the codomain dimension
    /// (the image is zero).
    std::span<const std::optional<KVector>> blades() const noexcept { return blades_; }
    const std::optional<KVector>& blade(BladeId i) const { return blades_.at(i); }

    std::uint64_t scalar_count() const noexcept { return scalars_; }

private:
    friend CbmmTable cbmm_build(const Outermorphism& om, std::uint64_t max_scalars);

    explicit CbmmTable(Outermorphism base) : base_(std::move(base)) {}

    Outermorphism base_;
    std::vector<std::optional<KVector>> blades_;
    std::uint64_t scalars_ = 0;
};

/// Throws ResourceError when cbmm_scalar_count exceeds max_scalars.
CbmmTable cbmm_build(const Outermorphism& om, std::uint64_t max_scalars = kDefaultCbmmBudget);

/// Y = sum over terms (i, x_i) of x_i * T_i.
GradedOutput map_cbmm(const CbmmTable& table, const SparseMultivector& x);

}  // namespace obmm
