#pragma once

// Binary Tree Representation (BTR) of sparse multivectors.
//
// Levels decide basis vectors in reversed order: the root (tree depth n)
// branches on e_{n-1}, a node of tree depth d branches on e_{d-1}, and the
// nodes of tree depth 1 hold leaves. A node's id carries the bits already
// decided along its path; the 1-child adds 2^(d-1), the 0-child keeps it.
//
// Nodes live in two pooled arrays addressed by index. Children of an internal
// node with depth > 1 index `internals()`, children at depth 1 index `leaves()`.

#include "obmm/blade.hpp"
#include "obmm/multivector.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace obmm {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoChild = std::numeric_limits<NodeIndex>::max();

struct BtrInternal {
    BladeId id = 0;
    int tree_depth = 0;
    NodeIndex child[2] = {kNoChild, kNoChild};

    bool has_child(int which) const noexcept { return child[which] != kNoChild; }
};

struct BtrLeaf {
    BladeId id = 0;
    double value = 0.0;
};

/// Handle to a node of a BtrTree.
struct NodeRef {
    bool leaf = false;
    NodeIndex index = kNoChild;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

class BtrTree {
public:
    /// Empty tree (the zero multivector) over a frame of dimension dim.
    explicit BtrTree(int dim = 1);

    /// Adopts raw node pools; internals[0] is the root. No validation is done
    /// here, btr_to_terms() and validate() check structure.
    static BtrTree from_nodes(int dim, std::vector<BtrInternal> internals,
                              std::vector<BtrLeaf> leaves);

    int dim() const noexcept { return dim_; }
    bool empty() const noexcept { return internals_.empty(); }

    NodeRef root() const noexcept { return {false, empty() ? kNoChild : 0}; }
    std::span<const BtrInternal> internals() const noexcept { return internals_; }
    std::span<const BtrLeaf> leaves() const noexcept { return leaves_; }

    const BtrInternal& internal(NodeIndex i) const { return internals_.at(i); }
    const BtrLeaf& leaf(NodeIndex i) const { return leaves_.at(i); }

    /// Child `which` of an internal node, or nullopt-like {false, kNoChild}.
    NodeRef child(NodeRef parent, int which) const;

    BladeId id_of(NodeRef node) const;
    int depth_of(NodeRef node) const;

    /// Throws IntegrityError on any id/path/depth inconsistency.
    void validate() const;

private:
    friend BtrTree build_btr(const SparseMultivector& mv);

    int dim_;
    std::vector<BtrInternal> internals_;
    std::vector<BtrLeaf> leaves_;
};

/// Id of the `which` child of a node with the given id and tree depth d >= 1.
constexpr BladeId child_id(BladeId parent_id, int parent_depth, int which) noexcept
{
    return which == 0 ? parent_id : parent_id + (BladeId{1} << (parent_depth - 1));
}

/// One leaf per term, internal nodes only on paths to stored leaves.
/// Requires a normalized multivector (throws DomainError otherwise).
BtrTree build_btr(const SparseMultivector& mv);

/// Terms in ascending id order. Throws IntegrityError on a malformed tree.
SparseMultivector btr_to_terms(const BtrTree& tree);

struct NodeCount {
    std::size_t internal = 0;
    std::size_t leaf = 0;

    std::size_t total() const noexcept { return internal + leaf; }
    friend bool operator==(const NodeCount&, const NodeCount&) = default;
};

NodeCount node_count(const BtrTree& tree);

/// Label of a node in the `01-` convention: bits from e_{n-1} down to e_d
/// followed by d '-' padding characters.
std::string path_string(BladeId id, int tree_depth, int dim);

/// One line per node in depth-first, 0-child-first order:
/// `<path> depth=<d> id=<id> [value=<v>]`.
void dump_btr(std::ostream& out, const BtrTree& tree);

}  // namespace obmm
