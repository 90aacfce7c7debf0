#pragma once

#include "obmm/blade.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace obmm {

struct Term {
    BladeId id;
    double coef;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivector: a list of (blade id, coefficient) terms over a frame.
///
/// Construction accepts any term list; duplicates and zeros are only removed
/// by normalize(). Arithmetic helpers always return normalized values.
class SparseMultivector {
public:
    SparseMultivector() = default;
    explicit SparseMultivector(int dim, std::vector<Term> terms = {});

    int dim() const noexcept { return dim_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    /// Coefficient of blade id, summing duplicates. Zero if absent.
    double coef(BladeId id) const noexcept;

    /// True when ids are strictly ascending, in range and coefficients nonzero.
    bool is_normalized() const noexcept;

    static SparseMultivector scalar(int dim, double value);
    static SparseMultivector basis_vector(int dim, int index, double value = 1.0);
    /// Grade-1 multivector with coefficient values[j] on e_j.
    static SparseMultivector from_vector(int dim, std::span<const double> values);

    friend bool operator==(const SparseMultivector&, const SparseMultivector&) = default;

private:
    int dim_ = 1;
    std::vector<Term> terms_;
};

/// Merge duplicate ids, drop exact zeros, sort ascending. Idempotent.
/// Throws DomainError on an id outside the frame.
SparseMultivector normalize(const SparseMultivector& mv);

SparseMultivector operator+(const SparseMultivector& a, const SparseMultivector& b);
SparseMultivector operator-(const SparseMultivector& a, const SparseMultivector& b);
SparseMultivector operator*(double s, const SparseMultivector& a);

/// Outer product by distributing blade_wedge over all term pairs.
SparseMultivector sparse_wedge(const SparseMultivector& a, const SparseMultivector& b);

/// Terms of grade k only.
SparseMultivector grade_part(const SparseMultivector& mv, int k);

/// Reads `<blade_id_decimal> <coefficient>` lines; `#` lines and blank lines
/// are skipped. The result is normalized.
SparseMultivector read_multivector(std::istream& in, int dim);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// Writes one `<id> <coef>` line per term with round-trip precision.
void write_multivector(std::ostream& out, const SparseMultivector& mv);

}  // namespace obmm
