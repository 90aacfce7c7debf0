#include "obmm/mapping.hpp"

#include "obmm/errors.hpp"
#include "generated_kernels.hpp"
#include "obmm/kernels.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>
#include <utility>

namespace obmm {

GradedOutput::GradedOutput(int codomain_dim)
    : codomain_dim_(codomain_dim), buckets_(static_cast<std::size_t>(codomain_dim) + 1)
{
    check_dim(codomain_dim);
}

void GradedOutput::accumulate(double scale, const KVector& t)
{
    if (t.vspace_dim() != codomain_dim_) {
        throw DomainError("graded output dimension mismatch");
    }
    accumulate(scale, t.grade(), t.coefs());
}

void GradedOutput::accumulate(double scale, int k, std::span<const double> coefs)
{
    if (k < 0 || k > codomain_dim_ || coefs.size() != binomial(codomain_dim_, k)) {
        throw DomainError("graded output shape mismatch");
    }
    const auto dst = bucket_coefs(k);
    for (std::size_t r = 0; r < dst.size(); ++r) {
        dst[r] += scale * coefs[r];
    }
}

std::span<double> GradedOutput::bucket_coefs(int k)
{
    std::optional<KVector>& slot = buckets_.at(static_cast<std::size_t>(k));
    if (!slot) {
        slot.emplace(codomain_dim_, k);
    }
    return slot->coefs();
}

SparseMultivector graded_to_sparse(const GradedOutput& y)
{
    std::vector<Term> terms;
    for (int k = 0; k <= y.codomain_dim(); ++k) {
        if (const auto& bucket = y.bucket(k)) {
            const SparseMultivector part = bucket->to_sparse();
            terms.insert(terms.end(), part.terms().begin(), part.terms().end());
        }
    }
    return normalize(SparseMultivector(y.codomain_dim(), std::move(terms)));
}

std::string factor_label(BladeId factors)
{
    if (factors == 0) {
        return "1";
    }
    std::string label;
    while (factors != 0) {
        const int j = std::countr_zero(factors);
        factors &= factors - 1;
        if (!label.empty()) {
            label += '^';
        }
        label += 't' + std::to_string(j);
    }
    return label;
}

int ObmmTrace::iterations() const noexcept
{
    int last = 0;
    for (const TraceEvent& e : events) {
        last = std::max(last, e.iteration);
    }
    return last;
}

std::string ObmmTrace::to_text() const
{
    std::ostringstream out;
    int current = -1;
    for (const TraceEvent& e : events) {
        if (e.iteration != current) {
            current = e.iteration;
            if (current == 0) {
                out << "Initialize stacks:\n";
            } else {
                out << "Iteration " << current << ":\n";
            }
        }
        const std::string pair = "(X_" + e.node_path + ", " + factor_label(e.factors) + ")";
        switch (e.kind) {
        case TraceEvent::Kind::Push:
            out << "  Push " << pair << '\n';
            break;
        case TraceEvent::Kind::Pop:
            out << "  Pop " << pair << '\n';
            break;
        case TraceEvent::Kind::Internal:
            out << "  Internal node\n";
            break;
        case TraceEvent::Kind::Leaf:
            out << "  Leaf node; Y <- Y + (" << format_double(e.value) << ") " << factor_label(e.factors) << '\n';
            break;
        }
    }
    return out.str();
}

GradedOutput map_obmm(const Outermorphism& om, const BtrTree& x, ObmmTrace* trace, ObmmStats* stats)
{
    if (x.dim() != om.domain_dim()) {
        throw DomainError("map_obmm: multivector dimension " + std::to_string(x.dim()) +
                          " != outermorphism domain " + std::to_string(om.domain_dim()));
    }
    const int n = x.dim();
    const int m = om.codomain_dim();
    GradedOutput y(m);
    if (x.empty()) {
        return y;
    }

    // S_X holds nodes with the grade and offset of their T; S_T is one flat
    // scalar buffer whose top segment belongs to the top node. A 0-child
    // inherits its parent's T in place, so only 1-children write scalars.
    struct Entry {
        NodeRef node;
        int grade;
        std::size_t offset;
    };
    thread_local std::vector<Entry> node_stack;
    thread_local std::vector<double> scalar_stack;
    node_stack.clear();
    node_stack.reserve(static_cast<std::size_t>(n) + 1);
    ObmmStats local;

    auto note = [&](TraceEvent::Kind kind, int iteration, NodeRef node, double value = 0.0) {
        if (trace != nullptr) {
            const BladeId id = x.id_of(node);
            trace->events.push_back({kind, iteration, path_string(id, x.depth_of(node), n), id, value});
        }
    };
    auto reserve = [&](std::size_t top) {
        if (scalar_stack.size() < top) {
            scalar_stack.resize(std::max(top, 2 * scalar_stack.size()));
        }
        local.peak_stack_scalars = std::max(local.peak_stack_scalars, top);
    };

    reserve(1);
    scalar_stack[0] = 1.0;
    node_stack.push_back({x.root(), 0, 0});
    note(TraceEvent::Kind::Push, 0, x.root());
    int iteration = 0;
    while (!node_stack.empty()) {
        ++iteration;
        const Entry e = node_stack.back();
        node_stack.pop_back();
        const std::size_t size = binomial(m, e.grade);
        note(TraceEvent::Kind::Pop, iteration, e.node);

        if (e.node.leaf) {
            const double v = x.leaf(e.node.index).value;
            note(TraceEvent::Kind::Leaf, iteration, e.node, v);
            y.accumulate(v, e.grade, std::span<const double>(scalar_stack.data() + e.offset, size));
            continue;
        }
        note(TraceEvent::Kind::Internal, iteration, e.node);

        const NodeRef child0 = x.child(e.node, 0);
        const NodeRef child1 = x.child(e.node, 1);
        const bool has0 = child0.index != kNoChild;
        const bool has1 = child1.index != kNoChild && e.grade < m;
        if (has0) {
            node_stack.push_back({child0, e.grade, e.offset});
            note(TraceEvent::Kind::Push, iteration, child0);
        }
        if (has1) {
            const int j = x.internal(e.node.index).tree_depth - 1;
            const std::size_t wedge_size = binomial(m, e.grade + 1);
            const std::size_t at = e.offset + size;
            reserve(at + wedge_size);
            double* base = scalar_stack.data();
            detail::wedge_into(m, e.grade, om.column(j).coefs().data(), base + e.offset, base + at);
            ++local.kernel_calls;
            std::size_t offset = at;
            if (!has0) {
                // The parent's T is dead; slide the wedge down over it.
                std::copy(base + at, base + at + wedge_size, base + e.offset);
                offset = e.offset;
            }
            node_stack.push_back({child1, e.grade + 1, offset});
            note(TraceEvent::Kind::Push, iteration, child1);
        }
    }
    local.iterations = static_cast<std::size_t>(iteration);
    if (stats != nullptr) {
        *stats = local;
    }
    return y;
}

std::size_t obmm_stack_profile(const BtrTree& x, int codomain_dim)
{
    check_dim(codomain_dim);
    if (x.empty()) {
        return 0;
    }
    const int m = codomain_dim;
    struct Entry {
        NodeRef node;
        int grade;
    };
    std::vector<Entry> stack;
    std::size_t held = binomial(m, 0);
    std::size_t peak = held;
    stack.push_back({x.root(), 0});
    while (!stack.empty()) {
        const Entry e = stack.back();
        stack.pop_back();
        held -= binomial(m, e.grade);
        if (e.node.leaf) {
            continue;
        }
        const NodeRef child0 = x.child(e.node, 0);
        const NodeRef child1 = x.child(e.node, 1);
        if (child0.index != kNoChild) {
            stack.push_back({child0, e.grade});
            held += binomial(m, e.grade);
            peak = std::max(peak, held);
        }
        if (child1.index != kNoChild && e.grade < m) {
            stack.push_back({child1, e.grade + 1});
            // Without a 0-child the parent's T is still live while t_j ^ T is formed.
            const std::size_t live = child0.index == kNoChild ? binomial(m, e.grade) : 0;
            held += binomial(m, e.grade + 1);
            peak = std::max(peak, held + live);
        }
    }
    return peak;
}

}  // namespace obmm
