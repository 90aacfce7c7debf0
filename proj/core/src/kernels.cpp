#include "obmm/kernels.hpp"

#include "generated_kernels.hpp"
#include "obmm/errors.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>

namespace obmm {

namespace {

struct TableSlot {
    std::once_flag once;
    std::unique_ptr<const KernelTable> table;
};

TableSlot& table_slot(int m, int k)
{
    static std::array<std::array<TableSlot, kMaxDim>, kMaxDim + 1> slots;
    return slots[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

void check_operands(const KVector& v, const KVector& t)
{
    if (v.grade() != 1) {
        throw DomainError("left operand of vector^k-vector must have grade 1, got " +
                          std::to_string(v.grade()));
    }
    if (v.vspace_dim() != t.vspace_dim()) {
        throw DomainError("vector^k-vector dimension mismatch: " + std::to_string(v.vspace_dim()) +
                          " vs " + std::to_string(t.vspace_dim()));
    }
    if (t.grade() >= t.vspace_dim()) {
        throw DomainError("vector^k-vector result grade " + std::to_string(t.grade() + 1) +
                          " exceeds dimension " + std::to_string(t.vspace_dim()));
    }
}

void run_table(const KernelTable& table, const double* v, const double* t, double* out) noexcept
{
    const std::size_t per_slot = static_cast<std::size_t>(table.grade) + 1;
    const KernelTriple* p = table.triples.data();
    const KernelTriple* const end = p + table.triples.size();
    while (p != end) {
        double value = 0.0;
        for (std::size_t q = 0; q < per_slot; ++q, ++p) {
            const double product = v[p->vector_index] * t[p->kvector_index];
            value = p->sign > 0 ? value + product : value - product;
        }
        out[(p - 1)->out_index] = value;
    }
}

}  // namespace

const KernelTable& cached_kernel_table(int m, int k)
{
    check_dim(m);
    if (k < 0 || k >= m) {
        throw DomainError("no vector^k-vector kernel for grade " + std::to_string(k) +
                          " in dimension " + std::to_string(m));
    }
    TableSlot& slot = table_slot(m, k);
    std::call_once(slot.once, [&] { slot.table = std::make_unique<const KernelTable>(kernel_table(m, k)); });
    return *slot.table;
}

void detail::wedge_into(int m, int k, const double* v, const double* t, double* out)
{
    if (const KernelFn fn = generated_kernel(m, k)) {
        fn(v, t, out);
    } else {
        run_table(cached_kernel_table(m, k), v, t, out);
    }
}

KVector vector_wedge_kvector(const KVector& v, const KVector& t)
{
    check_operands(v, t);
    KVector out(t.vspace_dim(), t.grade() + 1);
    detail::wedge_into(t.vspace_dim(), t.grade(), v.coefs().data(), t.coefs().data(),
                       out.coefs().data());
    return out;
}

KVector vector_wedge_kvector_tabulated(const KVector& v, const KVector& t)
{
    check_operands(v, t);
    KVector out(t.vspace_dim(), t.grade() + 1);
    run_table(cached_kernel_table(t.vspace_dim(), t.grade()), v.coefs().data(),
              t.coefs().data(), out.coefs().data());
    return out;
}

int generated_kernel_ceiling() noexcept { return detail::kGeneratedKernelCeiling; }

bool has_generated_kernel(int m, int k) noexcept
{
    return detail::generated_kernel(m, k) != nullptr;
}

}  // namespace obmm
