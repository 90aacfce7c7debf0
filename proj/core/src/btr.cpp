#include "obmm/btr.hpp"

#include "obmm/errors.hpp"

#include <ostream>
#include <utility>

namespace obmm {

BtrTree::BtrTree(int dim) : dim_(dim) { check_dim(dim); }

BtrTree BtrTree::from_nodes(int dim, std::vector<BtrInternal> internals,
                            std::vector<BtrLeaf> leaves)
{
    BtrTree tree(dim);
    tree.internals_ = std::move(internals);
    tree.leaves_ = std::move(leaves);
    return tree;
}

NodeRef BtrTree::child(NodeRef parent, int which) const
{
    if (parent.leaf) {
        return {};
    }
    const BtrInternal& node = internal(parent.index);
    const NodeIndex c = node.child[which];
    if (c == kNoChild) {
        return {};
    }
    return {node.tree_depth == 1, c};
}

BladeId BtrTree::id_of(NodeRef node) const
{
    return node.leaf ? leaf(node.index).id : internal(node.index).id;
}

int BtrTree::depth_of(NodeRef node) const
{
    return node.leaf ? 0 : internal(node.index).tree_depth;
}

namespace {

// Depth-first walk checking every structural invariant. Visits leaves in
// ascending id order (0-child before 1-child) and hands them to `emit`.
template <class Emit>
void checked_walk(const BtrTree& tree, Emit&& emit)
{
    if (tree.empty()) {
        if (!tree.leaves().empty()) {
            throw IntegrityError("BTR has leaves but no root");
        }
        return;
    }
    const auto& internals = tree.internals();
    const auto& leaves = tree.leaves();
    const BtrInternal& root = internals[0];
    if (root.tree_depth != tree.dim() || root.id != 0) {
        throw IntegrityError("BTR root must have id 0 and tree depth n");
    }
    std::vector<bool> seen_internal(internals.size(), false);
    std::vector<bool> seen_leaf(leaves.size(), false);
    std::vector<NodeIndex> stack{0};
    seen_internal[0] = true;
    while (!stack.empty()) {
        const BtrInternal& node = internals[stack.back()];
        stack.pop_back();
        if (!node.has_child(0) && !node.has_child(1)) {
            throw IntegrityError("BTR internal node " + std::to_string(node.id) +
                                 " has no children");
        }
        // Push 1 then 0 so the 0-child is visited first.
        for (int which = 1; which >= 0; --which) {
            const NodeIndex c = node.child[which];
            if (c == kNoChild) {
                continue;
            }
            const BladeId expected = child_id(node.id, node.tree_depth, which);
            if (node.tree_depth == 1) {
                if (c >= leaves.size() || seen_leaf[c]) {
                    throw IntegrityError("BTR leaf reference invalid or shared");
                }
                seen_leaf[c] = true;
                if (leaves[c].id != expected) {
                    throw IntegrityError("BTR leaf id " + std::to_string(leaves[c].id) +
                                         " does not match its path id " +
                                         std::to_string(expected));
                }
                if (leaves[c].value == 0.0) {
                    throw IntegrityError("BTR leaf holds a zero coefficient");
                }
            } else {
                if (c >= internals.size() || seen_internal[c]) {
                    throw IntegrityError("BTR internal reference invalid or shared");
                }
                seen_internal[c] = true;
                const BtrInternal& child = internals[c];
                if (child.tree_depth != node.tree_depth - 1) {
                    throw IntegrityError("BTR child tree depth mismatch");
                }
                if (child.id != expected) {
                    throw IntegrityError("BTR node id " + std::to_string(child.id) +
                                         " does not match its path id " +
                                         std::to_string(expected));
                }
            }
        }
        // Visit order: 0-child subtree fully before 1-child subtree.
        if (node.tree_depth == 1) {
            for (int which = 0; which < 2; ++which) {
                if (node.has_child(which)) {
                    emit(leaves[node.child[which]]);
                }
            }
        } else {
            if (node.has_child(1)) {
                stack.push_back(node.child[1]);
            }
            if (node.has_child(0)) {
                stack.push_back(node.child[0]);
            }
        }
    }
}

}  // namespace

void BtrTree::validate() const
{
    checked_walk(*this, [](const BtrLeaf&) {});
}

BtrTree build_btr(const SparseMultivector& mv)
{
    if (!mv.is_normalized()) {
        throw DomainError("build_btr requires a normalized multivector");
    }
    const int n = mv.dim();
    BtrTree tree(n);
    if (mv.empty()) {
        return tree;
    }
    auto& internals = tree.internals_;
    auto& leaves = tree.leaves_;
    internals.push_back({0, n, {kNoChild, kNoChild}});
    leaves.reserve(mv.size());
    for (const Term& term : mv.terms()) {
        NodeIndex at = 0;
        for (int d = n; d >= 1; --d) {
            const int which = static_cast<int>((term.id >> (d - 1)) & 1u);
            const BladeId id = child_id(internals[at].id, d, which);
            NodeIndex next = internals[at].child[which];
            if (d == 1) {
                leaves.push_back({id, term.coef});
                internals[at].child[which] = static_cast<NodeIndex>(leaves.size() - 1);
                break;
            }
            if (next == kNoChild) {
                internals.push_back({id, d - 1, {kNoChild, kNoChild}});
                next = static_cast<NodeIndex>(internals.size() - 1);
                internals[at].child[which] = next;
            }
            at = next;
        }
    }
    return tree;
}

SparseMultivector btr_to_terms(const BtrTree& tree)
{
    std::vector<Term> terms;
    terms.reserve(tree.leaves().size());
    checked_walk(tree, [&](const BtrLeaf& leaf) { terms.push_back({leaf.id, leaf.value}); });
    return SparseMultivector(tree.dim(), std::move(terms));
}

NodeCount node_count(const BtrTree& tree)
{
    return {tree.internals().size(), tree.leaves().size()};
}

std::string path_string(BladeId id, int tree_depth, int dim)
{
    std::string path(static_cast<std::size_t>(dim), '-');
    for (int bit = dim - 1; bit >= tree_depth; --bit) {
        path[static_cast<std::size_t>(dim - 1 - bit)] = ((id >> bit) & 1u) ? '1' : '0';
    }
    return path;
}

void dump_btr(std::ostream& out, const BtrTree& tree)
{
    if (tree.empty()) {
        return;
    }
    std::vector<NodeRef> stack{tree.root()};
    while (!stack.empty()) {
        const NodeRef node = stack.back();
        stack.pop_back();
        const BladeId id = tree.id_of(node);
        const int depth = tree.depth_of(node);
        out << path_string(id, depth, tree.dim()) << " depth=" << depth << " id=" << id;
        if (node.leaf) {
            out << " value=" << format_double(tree.leaf(node.index).value);
        }
        out << '\n';
        for (int which = 1; which >= 0; --which) {
            const NodeRef c = tree.child(node, which);
            if (c.index != kNoChild) {
                stack.push_back(c);
            }
        }
    }
}

}  // namespace obmm
