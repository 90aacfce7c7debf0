#include "obmm/cbmm.hpp"

#include "obmm/errors.hpp"
#include "obmm/kernels.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace obmm {

std::uint64_t cbmm_scalar_count(int n, int m) noexcept
{
    std::uint64_t total = 0;
    for (int k = 0; k <= std::min(n, m); ++k) {
        total += binomial(n, k) * binomial(m, k);
    }
    return total;
}

CbmmTable cbmm_build(const Outermorphism& om, std::uint64_t max_scalars)
{
    const int n = om.domain_dim();
    const int m = om.codomain_dim();
    const std::uint64_t needed = cbmm_scalar_count(n, m);
    if (needed > max_scalars) {
        throw ResourceError("cached outermorphism table needs " + std::to_string(needed) +
                            " scalars, budget is " + std::to_string(max_scalars));
    }
    CbmmTable table(om);
    const std::size_t count = std::size_t{1} << n;
    table.blades_.resize(count);
    table.blades_[0] = KVector::scalar(m);
    // T_i = t_{low(i)} ^ T_{i without low(i)}. Unrolled, this is the fold over
    // the set bits of i from highest to lowest with each new factor wedged on
    // the left, i.e. t_{i_0} ^ t_{i_1} ^ ... ^ t_{i_k}.
    for (std::size_t i = 1; i < count; ++i) {
        const auto id = static_cast<BladeId>(i);
        const std::optional<KVector>& rest = table.blades_[id & (id - 1)];
        if (!rest || rest->grade() >= m) {
            continue;
        }
        table.blades_[i] = vector_wedge_kvector(om.column(std::countr_zero(id)), *rest);
    }
    table.scalars_ = needed;
    return table;
}

GradedOutput map_cbmm(const CbmmTable& table, const SparseMultivector& x)
{
    const Outermorphism& om = table.base();
    if (x.dim() != om.domain_dim()) {
        throw DomainError("map_cbmm: multivector dimension " + std::to_string(x.dim()) +
                          " != outermorphism domain " + std::to_string(om.domain_dim()));
    }
    GradedOutput y(om.codomain_dim());
    for (const Term& term : x.terms()) {
        if (term.coef == 0.0) {
            continue;
        }
        if (const std::optional<KVector>& t = table.blade(term.id)) {
            const auto src = t->coefs();
            const auto dst = y.bucket_coefs(t->grade());
            for (std::size_t r = 0; r < dst.size(); ++r) {
                dst[r] += term.coef * src[r];
            }
        }
    }
    return y;
}

}  // namespace obmm
