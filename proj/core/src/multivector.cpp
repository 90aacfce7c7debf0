#include "obmm/multivector.hpp"

#include "obmm/compare.hpp"
#include "obmm/errors.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace obmm {

SparseMultivector::SparseMultivector(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms))
{
    check_dim(dim);
}

double SparseMultivector::coef(BladeId id) const noexcept
{
    double sum = 0.0;
    for (const Term& t : terms_) {
        if (t.id == id) {
            sum += t.coef;
        }
    }
    return sum;
}

bool SparseMultivector::is_normalized() const noexcept
{
    const Frame frame(dim_);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coef == 0.0 || !frame.contains(terms_[i].id)) {
            return false;
        }
        if (i > 0 && terms_[i - 1].id >= terms_[i].id) {
            return false;
        }
    }
    return true;
}

SparseMultivector SparseMultivector::scalar(int dim, double value)
{
    return normalize(SparseMultivector(dim, {{0, value}}));
}

SparseMultivector SparseMultivector::basis_vector(int dim, int index, double value)
{
    if (index < 0 || index >= dim) {
        throw DomainError("basis vector index out of range");
    }
    return normalize(SparseMultivector(dim, {{BladeId{1} << index, value}}));
}

SparseMultivector SparseMultivector::from_vector(int dim, std::span<const double> values)
{
    if (values.size() != static_cast<std::size_t>(dim)) {
        throw DomainError("vector length does not match dimension");
    }
    std::vector<Term> terms;
    terms.reserve(values.size());
    for (int j = 0; j < dim; ++j) {
        terms.push_back({BladeId{1} << j, values[j]});
    }
    return normalize(SparseMultivector(dim, std::move(terms)));
}

SparseMultivector normalize(const SparseMultivector& mv)
{
    const Frame frame(mv.dim());
    std::vector<Term> terms(mv.terms().begin(), mv.terms().end());
    for (const Term& t : terms) {
        if (!frame.contains(t.id)) {
            throw DomainError("blade id " + std::to_string(t.id) + " outside dimension " +
                              std::to_string(mv.dim()));
        }
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& a, const Term& b) { return a.id < b.id; });
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (const Term& t : terms) {
        if (!merged.empty() && merged.back().id == t.id) {
            merged.back().coef += t.coef;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
    return SparseMultivector(mv.dim(), std::move(merged));
}

namespace {

void require_same_dim(const SparseMultivector& a, const SparseMultivector& b)
{
    if (a.dim() != b.dim()) {
        throw DomainError("multivector dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
    }
}

}  // namespace

SparseMultivector operator+(const SparseMultivector& a, const SparseMultivector& b)
{
    require_same_dim(a, b);
    std::vector<Term> terms(a.terms().begin(), a.terms().end());
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return normalize(SparseMultivector(a.dim(), std::move(terms)));
}

SparseMultivector operator-(const SparseMultivector& a, const SparseMultivector& b)
{
    return a + (-1.0) * b;
}

SparseMultivector operator*(double s, const SparseMultivector& a)
{
    std::vector<Term> terms(a.terms().begin(), a.terms().end());
    for (Term& t : terms) {
        t.coef *= s;
    }
    return normalize(SparseMultivector(a.dim(), std::move(terms)));
}

SparseMultivector sparse_wedge(const SparseMultivector& a, const SparseMultivector& b)
{
    require_same_dim(a, b);
    std::vector<Term> terms;
    terms.reserve(a.size() * b.size());
    for (const Term& x : a.terms()) {
        for (const Term& y : b.terms()) {
            const SignedBlade w = blade_wedge(x.id, y.id);
            if (w.sign != 0) {
                terms.push_back({w.id, w.sign * (x.coef * y.coef)});
            }
        }
    }
    return normalize(SparseMultivector(a.dim(), std::move(terms)));
}

SparseMultivector grade_part(const SparseMultivector& mv, int k)
{
    std::vector<Term> terms;
    for (const Term& t : mv.terms()) {
        if (grade(t.id) == k) {
            terms.push_back(t);
        }
    }
    return normalize(SparseMultivector(mv.dim(), std::move(terms)));
}

SparseMultivector read_multivector(std::istream& in, int dim)
{
    std::vector<Term> terms;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        long long id = -1;
        double coef = 0.0;
        std::string extra;
        if (!(fields >> id >> coef) || (fields >> extra) || id < 0 ||
            id > std::numeric_limits<BladeId>::max()) {
            throw ParseError("multivector line " + std::to_string(line_no) + ": expected `<id> <coef>`");
        }
        terms.push_back({static_cast<BladeId>(id), coef});
    }
    return normalize(SparseMultivector(dim, std::move(terms)));
}

std::string format_double(double value)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_multivector(std::ostream& out, const SparseMultivector& mv)
{
    for (const Term& t : mv.terms()) {
        out << t.id << ' ' << format_double(t.coef) << '\n';
    }
}

bool approx_equal(const SparseMultivector& a, const SparseMultivector& b, double rel,
                  Mismatch* where)
{
    if (a.dim() != b.dim()) {
        return false;
    }
    const SparseMultivector na = normalize(a);
    const SparseMultivector nb = normalize(b);
    auto ia = na.terms().begin();
    auto ib = nb.terms().begin();
    while (ia != na.terms().end() || ib != nb.terms().end()) {
        BladeId id = 0;
        double x = 0.0;
        double y = 0.0;
        if (ib == nb.terms().end() || (ia != na.terms().end() && ia->id < ib->id)) {
            id = ia->id;
            x = (ia++)->coef;
        } else if (ia == na.terms().end() || ib->id < ia->id) {
            id = ib->id;
            y = (ib++)->coef;
        } else {
            id = ia->id;
            x = (ia++)->coef;
            y = (ib++)->coef;
        }
        if (!approx_equal(x, y, rel)) {
            if (where != nullptr) {
                *where = {id, x, y};
            }
            return false;
        }
    }
    return true;
}

}  // namespace obmm
