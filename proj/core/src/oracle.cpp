#include "obmm/oracle.hpp"

#include "obmm/errors.hpp"

#include <bit>
#include <string>
#include <vector>

namespace obmm {

namespace {

SparseMultivector column_image(const Outermorphism& om, int j)
{
    const KVector& t = om.column(j);
    std::vector<Term> terms;
    for (int i = 0; i < om.codomain_dim(); ++i) {
        terms.push_back({BladeId{1} << i, t[static_cast<std::size_t>(i)]});
    }
    return normalize(SparseMultivector(om.codomain_dim(), std::move(terms)));
}

}  // namespace

SparseMultivector oracle_blade_image(const Outermorphism& om, BladeId id)
{
    if (!Frame(om.domain_dim()).contains(id)) {
        throw DomainError("blade id " + std::to_string(id) + " outside the domain");
    }
    SparseMultivector acc = SparseMultivector::scalar(om.codomain_dim(), 1.0);
    while (id != 0) {
        const int j = std::countr_zero(id);
        id &= id - 1;
        acc = sparse_wedge(acc, column_image(om, j));
    }
    return acc;
}

SparseMultivector map_oracle(const Outermorphism& om, const SparseMultivector& x)
{
    if (x.dim() != om.domain_dim()) {
        throw DomainError("map_oracle: multivector dimension mismatch");
    }
    const SparseMultivector input = normalize(x);
    std::vector<Term> terms;
    for (const Term& term : input.terms()) {
        const SparseMultivector image = oracle_blade_image(om, term.id);
        for (const Term& t : image.terms()) {
            terms.push_back({t.id, term.coef * t.coef});
        }
    }
    return normalize(SparseMultivector(om.codomain_dim(), std::move(terms)));
}

}  // namespace obmm
