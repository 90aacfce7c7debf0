#pragma once

// Basis blade ids and combinadic indexing.
//
// A basis blade E_i over an n-dimensional frame is named by the integer i
// whose set bits select the participating basis vectors (bit j <-> e_j).
// Factors are always taken in ascending index order, so E_5 = e_0 ^ e_2.

#include <bit>
#include <cstdint>
#include <utility>

namespace obmm {

using BladeId = std::uint32_t;

/// Hard ceiling on frame dimension. Blade ids must fit a 32-bit word.
inline constexpr int kMaxDim = 30;

/// Frame of n ordered basis vectors. No metric is stored.
class Frame {
public:
    constexpr Frame() = default;
    explicit Frame(int dim);

    constexpr int dim() const noexcept { return dim_; }
    constexpr std::uint64_t blade_count() const noexcept { return std::uint64_t{1} << dim_; }
    constexpr bool contains(BladeId id) const noexcept
    {
        return static_cast<std::uint64_t>(id) < blade_count();
    }

    friend constexpr bool operator==(Frame, Frame) = default;

private:
    int dim_ = 1;
};

/// Throws DomainError unless 1 <= dim <= kMaxDim.
void check_dim(int dim);

constexpr int grade(BladeId id) noexcept { return std::popcount(id); }

/// Sign (-1, 0 or +1) and resulting id of the outer product E_a ^ E_b.
struct SignedBlade {
    int sign;
    BladeId id;

    friend constexpr bool operator==(const SignedBlade&, const SignedBlade&) = default;
};

/// Outer product of two basis blades. Zero when they share a basis vector,
/// otherwise the sign counts the transpositions needed to sort the factor
/// sequence of a followed by b.
constexpr SignedBlade blade_wedge(BladeId a, BladeId b) noexcept
{
    if ((a & b) != 0) {
        return {0, 0};
    }
    // For each bit j of b, count bits of a strictly above j.
    int swaps = 0;
    BladeId rest = b;
    while (rest != 0) {
        const int j = std::countr_zero(rest);
        rest &= rest - 1;
        swaps += std::popcount(a >> (j + 1));
    }
    return {(swaps & 1) ? -1 : +1, a | b};
}

/// Binomial coefficient C(n, k) for 0 <= n <= 63; zero when k < 0 or k > n.
std::uint64_t binomial(int n, int k) noexcept;

/// Rank of id among all grade(id)-blades sorted by ascending integer value.
/// The rank does not depend on the frame dimension.
std::uint64_t comb_rank(BladeId id) noexcept;

/// Checked form: requires id < 2^n.
std::uint64_t comb_rank(BladeId id, int n);

/// Inverse of comb_rank. Throws DomainError if rank >= C(n, k).
BladeId comb_unrank(int n, int k, std::uint64_t rank);

/// Next blade id of the same grade in ascending order (Gosper's hack).
/// id must be nonzero.
constexpr BladeId next_same_grade(BladeId id) noexcept
{
    const BladeId low = id & (~id + 1);
    const BladeId ripple = id + low;
    return ripple | (((id ^ ripple) >> 2) / low);
}

}  // namespace obmm
