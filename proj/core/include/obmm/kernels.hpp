#pragma once

// Outer product of a vector with a k-vector, t ^ T, specialized per
// (dimension m, grade k).
//
// For every (k+1)-subset S of {0..m-1} the output slot rank(S) receives
//     sum over j in S of (-1)^p * v[j] * T[rank(S \ {j})]
// where p is the position of j inside ascending S. The vector factor is
// inserted on the left.
//
// Dimensions up to the build's kernel ceiling run generated straight-line
// functions; larger ones run a generic driver over per-(m,k) tables that are
// computed once and cached.

#include "obmm/kvector.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace obmm {

struct KernelTriple {
    std::uint32_t out_index;
    std::uint32_t vector_index;
    std::uint32_t kvector_index;
    int sign;

    friend bool operator==(const KernelTriple&, const KernelTriple&) = default;
};

struct KernelTable {
    int vspace_dim = 0;
    int grade = 0;
    /// Grouped by ascending out_index, k+1 triples per slot in ascending
    /// vector_index order.
    std::vector<KernelTriple> triples;
};

/// Throws DomainError unless 0 <= k < m <= kMaxDim.
KernelTable kernel_table(int m, int k);

/// Process-wide immutable table for (m, k); safe to call concurrently.
const KernelTable& cached_kernel_table(int m, int k);

/// t ^ T. v must have grade 1; both operands share the vector space and
/// T.grade() < m. Allocates only the result.
KVector vector_wedge_kvector(const KVector& v, const KVector& t);

/// Same product through the table-driven driver regardless of the ceiling.
KVector vector_wedge_kvector_tabulated(const KVector& v, const KVector& t);

/// Largest m with generated kernels in this build.
int generated_kernel_ceiling() noexcept;
bool has_generated_kernel(int m, int k) noexcept;

/// Human-readable kernel listing for dimension m, one block per grade:
/// `out[<r>] += <sign> v[<j>] * T[<s>]`.
void write_kernel_spec(std::ostream& out, int m);

}  // namespace obmm
