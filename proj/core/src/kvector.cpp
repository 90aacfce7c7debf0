#include "obmm/kvector.hpp"

#include "obmm/errors.hpp"

#include <string>

namespace obmm {

namespace {

void check_shape(int m, int k)
{
    check_dim(m);
    if (k < 0 || k > m) {
        throw DomainError("k-vector grade " + std::to_string(k) + " outside [0, " +
                          std::to_string(m) + "]");
    }
}

}  // namespace

KVector::KVector(int vspace_dim, int grade) : vspace_dim_(vspace_dim), grade_(grade)
{
    check_shape(vspace_dim, grade);
    coefs_.assign(binomial(vspace_dim, grade), 0.0);
}

KVector::KVector(int vspace_dim, int grade, std::vector<double> coefs)
    : vspace_dim_(vspace_dim), grade_(grade), coefs_(std::move(coefs))
{
    check_shape(vspace_dim, grade);
    if (coefs_.size() != binomial(vspace_dim, grade)) {
        throw DomainError("k-vector of grade " + std::to_string(grade) + " in dimension " +
                          std::to_string(vspace_dim) + " needs " +
                          std::to_string(binomial(vspace_dim, grade)) + " coefficients, got " +
                          std::to_string(coefs_.size()));
    }
}

KVector KVector::scalar(int vspace_dim, double value)
{
    return KVector(vspace_dim, 0, {value});
}

KVector KVector::from_vector(std::span<const double> components)
{
    return KVector(static_cast<int>(components.size()), 1,
                   std::vector<double>(components.begin(), components.end()));
}

KVector KVector::from_sparse(const SparseMultivector& mv, int grade)
{
    KVector out(mv.dim(), grade);
    for (const Term& t : mv.terms()) {
        if (obmm::grade(t.id) != grade) {
            throw DomainError("multivector is not homogeneous of grade " + std::to_string(grade));
        }
        out.coefs_[comb_rank(t.id)] += t.coef;
    }
    return out;
}

BladeId KVector::blade(std::size_t r) const
{
    return comb_unrank(vspace_dim_, grade_, r);
}

SparseMultivector KVector::to_sparse() const
{
    std::vector<Term> terms;
    terms.reserve(coefs_.size());
    BladeId id = (BladeId{1} << grade_) - 1;
    for (std::size_t r = 0; r < coefs_.size(); ++r) {
        terms.push_back({id, coefs_[r]});
        if (grade_ > 0) {
            id = next_same_grade(id);
        }
    }
    return normalize(SparseMultivector(vspace_dim_, std::move(terms)));
}

}  // namespace obmm
