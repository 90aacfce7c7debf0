#pragma once

// An outermorphism between an n-dimensional and an m-dimensional frame is
// fully defined by the images t_j of the n domain basis vectors. Column j of
// the m x n defining matrix is t_j; entry (i, j) is the f_i-coefficient of t_j.

#include "obmm/kvector.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace obmm {

class Outermorphism {
public:
    /// Throws DomainError unless there are n columns, each of length m.
    Outermorphism(int domain_dim, int codomain_dim, const std::vector<std::vector<double>>& columns);

    static Outermorphism identity(int n);
    /// From a row-major m x n matrix.
    static Outermorphism from_matrix(int rows, int cols, std::span<const double> row_major);

    int domain_dim() const noexcept { return domain_dim_; }
    int codomain_dim() const noexcept { return codomain_dim_; }

    /// t_j as a grade-1 k-vector of the codomain.
    const KVector& column(int j) const { return columns_.at(static_cast<std::size_t>(j)); }
    std::span<const KVector> columns() const noexcept { return columns_; }

    /// Defining matrix entry (row i, column j) = t_j[i].
    double at(int i, int j) const { return column(j)[static_cast<std::size_t>(i)]; }

    /// Row-major m x n defining matrix.
    std::vector<double> matrix() const;

    friend bool operator==(const Outermorphism&, const Outermorphism&) = default;

private:
    int domain_dim_;
    int codomain_dim_;
    std::vector<KVector> columns_;
};

/// Stores the columns verbatim; singular maps are legal.
Outermorphism om_from_columns(int n, int m, const std::vector<std::vector<double>>& columns);

/// outer o inner. Requires outer.domain_dim() == inner.codomain_dim().
Outermorphism compose(const Outermorphism& outer, const Outermorphism& inner);

/// Transposed defining matrix.
Outermorphism adjoint(const Outermorphism& om);

inline constexpr double kPivotTolerance = 1e-12;

/// Inverse by Gauss-Jordan elimination with partial pivoting. Throws
/// SingularityError when a pivot falls below kPivotTolerance times the
/// largest row norm, DomainError when the map is not square.
Outermorphism inverse(const Outermorphism& om);

/// `dims <n> <m>` followed by n lines of m floats (column t_j on line j).
Outermorphism read_outermorphism(std::istream& in);
void write_outermorphism(std::ostream& out, const Outermorphism& om);

}  // namespace obmm
