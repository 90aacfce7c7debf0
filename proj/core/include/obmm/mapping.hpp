#pragma once

// Online basis mapping: apply an outermorphism to a multivector by walking
// its BTR with two synchronized stacks, one of tree nodes and one of the
// k-vectors T_i = t_{i_0} ^ ... ^ t_{i_k} computed along the way. Nothing
// beyond the n defining columns is stored between calls.

#include "obmm/btr.hpp"
#include "obmm/kvector.hpp"
#include "obmm/outermorphism.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace obmm {

/// Output accumulated per grade: bucket k, once touched, is a dense grade-k
/// k-vector of the codomain.
class GradedOutput {
public:
    explicit GradedOutput(int codomain_dim);

    int codomain_dim() const noexcept { return codomain_dim_; }
    const std::optional<KVector>& bucket(int k) const { return buckets_.at(static_cast<std::size_t>(k)); }

    /// bucket[grade(t)] += scale * t
    void accumulate(double scale, const KVector& t);
    /// bucket[k] += scale * coefs, coefs holding C(m, k) values.
    void accumulate(double scale, int k, std::span<const double> coefs);
    /// Writable bucket k, zero-filled on first touch.
    std::span<double> bucket_coefs(int k);

private:
    int codomain_dim_;
    std::vector<std::optional<KVector>> buckets_;
};

SparseMultivector graded_to_sparse(const GradedOutput& y);

struct TraceEvent {
    enum class Kind { Push, Pop, Internal, Leaf };

    Kind kind;
    /// 0 for the initial push, then the 1-based loop iteration.
    int iteration;
    std::string node_path;
    /// Blade id whose image T_i is carried with the node; names the wedge
    /// factors t_{i_0} ^ ... (the empty set is the scalar 1).
    BladeId factors;
    /// Leaf coefficient, for Leaf events.
    double value = 0.0;
};

/// Iteration log of one map_obmm call.
class ObmmTrace {
public:
    std::vector<TraceEvent> events;

    int iterations() const noexcept;

    /// Listing in the form
    ///   Iteration 2:
    ///     Pop (X_1--, t2)
    ///     Internal node
    ///     Push (X_11-, t1^t2)
    std::string to_text() const;
};

/// `1` for the empty set, otherwise `t0^t1^...` in ascending index order.
std::string factor_label(BladeId factors);

struct ObmmStats {
    std::size_t iterations = 0;
    std::size_t kernel_calls = 0;
    /// Largest total coefficient count held by the k-vector stack at once.
    std::size_t peak_stack_scalars = 0;
};

/// Y = T[X]. Throws DomainError when x.dim() != om.domain_dim().
/// The 0-child is pushed before the 1-child, so 1-branches are processed
/// first. When the codomain is smaller than the domain, 1-children whose
/// wedge would exceed grade m are pruned (their image is zero).
GradedOutput map_obmm(const Outermorphism& om, const BtrTree& x, ObmmTrace* trace = nullptr,
                      ObmmStats* stats = nullptr);

/// Same traversal as map_obmm with the k-vector arithmetic replaced by size
/// bookkeeping; returns the peak stack coefficient count for codomain dim m.
std::size_t obmm_stack_profile(const BtrTree& x, int codomain_dim);

}  // namespace obmm
