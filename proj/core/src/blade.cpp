#include "obmm/blade.hpp"

#include "obmm/errors.hpp"

#include <array>
#include <string>

namespace obmm {

namespace {

constexpr int kBinomialRows = 64;

constexpr auto make_binomials()
{
    std::array<std::array<std::uint64_t, kBinomialRows>, kBinomialRows> table{};
    for (int n = 0; n < kBinomialRows; ++n) {
        table[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            table[n][k] = table[n - 1][k - 1] + (k < n ? table[n - 1][k] : 0);
        }
    }
    return table;
}

constexpr auto kBinomials = make_binomials();

}  // namespace

Frame::Frame(int dim) : dim_(dim) { check_dim(dim); }

void check_dim(int dim)
{
    if (dim < 1 || dim > kMaxDim) {
        throw DomainError("frame dimension " + std::to_string(dim) + " outside [1, " +
                          std::to_string(kMaxDim) + "]");
    }
}

std::uint64_t binomial(int n, int k) noexcept
{
    if (n < 0 || n >= kBinomialRows || k < 0 || k > n) {
        return 0;
    }
    return kBinomials[n][k];
}

// Combinatorial number system: with set bits c_0 < c_1 < ... < c_{k-1},
// rank = sum_t C(c_t, t + 1). This enumerates k-subsets in colex order,
// which is ascending integer order of the ids.
std::uint64_t comb_rank(BladeId id) noexcept
{
    std::uint64_t rank = 0;
    int t = 1;
    while (id != 0) {
        const int c = std::countr_zero(id);
        id &= id - 1;
        rank += kBinomials[c][t];
        ++t;
    }
    return rank;
}

std::uint64_t comb_rank(BladeId id, int n)
{
    check_dim(n);
    if (!Frame(n).contains(id)) {
        throw DomainError("blade id " + std::to_string(id) + " outside dimension " +
                          std::to_string(n));
    }
    return comb_rank(id);
}

BladeId comb_unrank(int n, int k, std::uint64_t rank)
{
    if (n < 0 || n > kMaxDim || k < 0 || k > n) {
        throw DomainError("comb_unrank: grade " + std::to_string(k) + " invalid for dimension " +
                          std::to_string(n));
    }
    if (rank >= binomial(n, k)) {
        throw DomainError("comb_unrank: rank " + std::to_string(rank) + " >= C(" +
                          std::to_string(n) + "," + std::to_string(k) + ")");
    }
    BladeId id = 0;
    int c = n - 1;
    for (int t = k; t >= 1; --t) {
        // Largest c with C(c, t) <= rank.
        while (binomial(c, t) > rank) {
            --c;
        }
        id |= BladeId{1} << c;
        rank -= binomial(c, t);
        --c;
    }
    return id;
}

}  // namespace obmm
