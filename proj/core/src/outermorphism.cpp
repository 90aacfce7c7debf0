#include "obmm/outermorphism.hpp"

#include "obmm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace obmm {

Outermorphism::Outermorphism(int domain_dim, int codomain_dim,
                             const std::vector<std::vector<double>>& columns)
    : domain_dim_(domain_dim), codomain_dim_(codomain_dim)
{
    check_dim(domain_dim);
    check_dim(codomain_dim);
    if (columns.size() != static_cast<std::size_t>(domain_dim)) {
        throw DomainError("outermorphism needs " + std::to_string(domain_dim) + " columns, got " +
                          std::to_string(columns.size()));
    }
    columns_.reserve(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != static_cast<std::size_t>(codomain_dim)) {
            throw DomainError("outermorphism column " + std::to_string(j) + " has length " +
                              std::to_string(columns[j].size()) + ", expected " +
                              std::to_string(codomain_dim));
        }
        columns_.push_back(KVector::from_vector(columns[j]));
    }
}

Outermorphism Outermorphism::identity(int n)
{
    std::vector<std::vector<double>> columns(static_cast<std::size_t>(n),
                                             std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int j = 0; j < n; ++j) {
        columns[j][j] = 1.0;
    }
    return Outermorphism(n, n, columns);
}

Outermorphism Outermorphism::from_matrix(int rows, int cols, std::span<const double> row_major)
{
    if (rows < 0 || cols < 0 ||
        row_major.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw DomainError("matrix data does not match its shape");
    }
    std::vector<std::vector<double>> columns(static_cast<std::size_t>(cols),
                                             std::vector<double>(static_cast<std::size_t>(rows)));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            columns[j][i] = row_major[static_cast<std::size_t>(i) * cols + j];
        }
    }
    return Outermorphism(cols, rows, columns);
}

std::vector<double> Outermorphism::matrix() const
{
    std::vector<double> out(static_cast<std::size_t>(codomain_dim_) * domain_dim_);
    for (int i = 0; i < codomain_dim_; ++i) {
        for (int j = 0; j < domain_dim_; ++j) {
            out[static_cast<std::size_t>(i) * domain_dim_ + j] = at(i, j);
        }
    }
    return out;
}

Outermorphism om_from_columns(int n, int m, const std::vector<std::vector<double>>& columns)
{
    return Outermorphism(n, m, columns);
}

Outermorphism compose(const Outermorphism& outer, const Outermorphism& inner)
{
    if (outer.domain_dim() != inner.codomain_dim()) {
        throw DomainError("compose: outer domain " + std::to_string(outer.domain_dim()) +
                          " != inner codomain " + std::to_string(inner.codomain_dim()));
    }
    const int n = inner.domain_dim();
    const int mid = inner.codomain_dim();
    const int m = outer.codomain_dim();
    std::vector<std::vector<double>> columns(static_cast<std::size_t>(n),
                                             std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            double sum = 0.0;
            for (int l = 0; l < mid; ++l) {
                sum += outer.at(i, l) * inner.at(l, j);
            }
            columns[j][i] = sum;
        }
    }
    return Outermorphism(n, m, columns);
}

Outermorphism adjoint(const Outermorphism& om)
{
    const int n = om.domain_dim();
    const int m = om.codomain_dim();
    std::vector<std::vector<double>> columns(static_cast<std::size_t>(m),
                                             std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            columns[i][j] = om.at(i, j);
        }
    }
    return Outermorphism(m, n, columns);
}

Outermorphism inverse(const Outermorphism& om)
{
    const int n = om.domain_dim();
    if (om.codomain_dim() != n) {
        throw DomainError("inverse requires a square outermorphism, got " + std::to_string(n) +
                          " -> " + std::to_string(om.codomain_dim()));
    }
    const auto un = static_cast<std::size_t>(n);
    // Augmented [A | I], row-major.
    std::vector<double> a = om.matrix();
    std::vector<double> inv(un * un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        inv[i * un + i] = 1.0;
    }
    double max_row_norm = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < un; ++j) {
            sq += a[i * un + j] * a[i * un + j];
        }
        max_row_norm = std::max(max_row_norm, std::sqrt(sq));
    }
    const double threshold = kPivotTolerance * max_row_norm;

    for (std::size_t col = 0; col < un; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < un; ++r) {
            if (std::abs(a[r * un + col]) > std::abs(a[pivot * un + col])) {
                pivot = r;
            }
        }
        const double p = a[pivot * un + col];
        if (!(std::abs(p) > threshold)) {
            throw SingularityError("outermorphism matrix is singular (pivot " + std::to_string(p) +
                                   " in column " + std::to_string(col) + ")");
        }
        if (pivot != col) {
            std::swap_ranges(a.begin() + pivot * un, a.begin() + (pivot + 1) * un, a.begin() + col * un);
            std::swap_ranges(inv.begin() + pivot * un, inv.begin() + (pivot + 1) * un,
                             inv.begin() + col * un);
        }
        for (std::size_t j = 0; j < un; ++j) {
            a[col * un + j] /= p;
            inv[col * un + j] /= p;
        }
        for (std::size_t r = 0; r < un; ++r) {
            if (r == col) {
                continue;
            }
            const double f = a[r * un + col];
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < un; ++j) {
                a[r * un + j] -= f * a[col * un + j];
                inv[r * un + j] -= f * inv[col * un + j];
            }
        }
    }
    return Outermorphism::from_matrix(n, n, inv);
}

Outermorphism read_outermorphism(std::istream& in)
{
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first != std::string::npos && line[first] != '#') {
                return true;
            }
        }
        return false;
    };
    if (!next_line()) {
        throw ParseError("outermorphism file is empty");
    }
    std::istringstream header(line);
    std::string tag;
    int n = 0;
    int m = 0;
    std::string extra;
    if (!(header >> tag >> n >> m) || tag != "dims" || (header >> extra)) {
        throw ParseError("outermorphism line " + std::to_string(line_no) +
                         ": expected `dims <n> <m>`");
    }
    check_dim(n);
    check_dim(m);
    std::vector<std::vector<double>> columns;
    for (int j = 0; j < n; ++j) {
        if (!next_line()) {
            throw ParseError("outermorphism file ends before column " + std::to_string(j));
        }
        std::istringstream fields(line);
        std::vector<double> column;
        double value = 0.0;
        while (fields >> value) {
            column.push_back(value);
        }
        if (!fields.eof() || column.size() != static_cast<std::size_t>(m)) {
            throw ParseError("outermorphism line " + std::to_string(line_no) + ": expected " +
                             std::to_string(m) + " numbers");
        }
        columns.push_back(std::move(column));
    }
    if (next_line()) {
        throw ParseError("outermorphism line " + std::to_string(line_no) + ": unexpected data");
    }
    return Outermorphism(n, m, columns);
}

void write_outermorphism(std::ostream& out, const Outermorphism& om)
{
    out << "dims " << om.domain_dim() << ' ' << om.codomain_dim() << '\n';
    for (const KVector& column : om.columns()) {
        for (std::size_t i = 0; i < column.size(); ++i) {
            out << (i ? " " : "") << format_double(column[i]);
        }
        out << '\n';
    }
}

}  // namespace obmm
