#pragma once

#include "obmm/blade.hpp"
#include "obmm/multivector.hpp"

#include <span>
#include <vector>

namespace obmm {

/// Dense grade-k coefficient array over an m-dimensional vector space.
/// Index r holds the coefficient of comb_unrank(m, k, r).
class KVector {
public:
    /// Zero k-vector.
    KVector(int vspace_dim, int grade);
    /// Throws DomainError unless coefs.size() == C(m, k).
    KVector(int vspace_dim, int grade, std::vector<double> coefs);

    /// Grade-0 k-vector {value}. T_0 = 1 is scalar(m).
    static KVector scalar(int vspace_dim, double value = 1.0);
    /// Grade-1 k-vector from vector components.
    static KVector from_vector(std::span<const double> components);
    /// Grade-k part of a sparse multivector. Throws DomainError if mv has
    /// terms of any other grade.
    static KVector from_sparse(const SparseMultivector& mv, int grade);

    int vspace_dim() const noexcept { return vspace_dim_; }
    int grade() const noexcept { return grade_; }
    std::size_t size() const noexcept { return coefs_.size(); }

    std::span<const double> coefs() const noexcept { return coefs_; }
    std::span<double> coefs() noexcept { return coefs_; }
    double operator[](std::size_t r) const noexcept { return coefs_[r]; }
    double& operator[](std::size_t r) noexcept { return coefs_[r]; }

    BladeId blade(std::size_t r) const;
    SparseMultivector to_sparse() const;

    friend bool operator==(const KVector&, const KVector&) = default;

private:
    int vspace_dim_;
    int grade_;
    std::vector<double> coefs_;
};

}  // namespace obmm
