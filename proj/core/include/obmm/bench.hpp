#pragma once

// Experimental harness: sparsity-classed random inputs, a wall-clock timing
// protocol for OBMM and CBMM mappings, exponential curve fitting c * b^n and
// scalar-storage accounting.

#include "obmm/cbmm.hpp"
#include "obmm/multivector.hpp"
#include "obmm/outermorphism.hpp"

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace obmm::bench {

enum class SparsityClass { Full, KVectors, Terms };
enum class Method { Obmm, Cbmm };

inline constexpr SparsityClass kAllClasses[] = {SparsityClass::Full, SparsityClass::KVectors,
                                                SparsityClass::Terms};
inline constexpr Method kAllMethods[] = {Method::Obmm, Method::Cbmm};

std::string_view name(SparsityClass cls) noexcept;
std::string_view name(Method method) noexcept;
SparsityClass parse_class(std::string_view text);
Method parse_method(std::string_view text);

/// Deterministic 64-bit seed derivation (splitmix64 over the parts).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) noexcept;

/// Random input of the given class. Coefficients are uniform in [-1, 1]
/// excluding 0. Full: all 2^n blades. KVectors: every blade of `grade`
/// (required, 0..n). Terms: one blade drawn uniformly from [1, 2^n).
SparseMultivector gen_input(int n, SparsityClass cls, std::optional<int> grade, std::uint64_t seed);

/// Random n -> m outermorphism with entries uniform in [-1, 1].
Outermorphism gen_outermorphism(int n, int m, std::uint64_t seed);

struct TimingOptions {
    int warmup = 3;
    /// Calls are batched until one timed sample spans at least this long;
    /// the per-call time of the batch is the sample.
    double min_sample_us = 20.0;
    std::uint64_t cbmm_budget = kDefaultCbmmBudget;
};

struct Timing {
    double mean_us = 0.0;
    double std_us = 0.0;
    int reps = 0;
    /// Largest OBMM k-vector stack footprint over the timed inputs.
    std::size_t peak_stack_scalars = 0;
};

/// Mean wall-clock time of one mapping call. Input generation, BTR build
/// and CBMM table build happen outside the timed region. Each rep maps its
/// own seeded input. For KVectors the result is the mean over grades 0..n of
/// per-grade means, with pooled standard deviation.
Timing time_mapping(Method method, int n, SparsityClass cls, int reps, std::uint64_t seed,
                    const TimingOptions& options = {});

struct FitPoint {
    double n;
    double time;
};

struct FitResult {
    double c = 0.0;
    double b = 0.0;
    /// RMS residual of the fit in the log domain.
    double residual = 0.0;
};

/// Least squares on (n, ln time): slope ln b, intercept ln c.
/// Throws DomainError for fewer than two distinct n or a nonpositive time.
FitResult fit_exponential(std::span<const FitPoint> points);

struct MemoryReport {
    int n = 0;
    std::uint64_t cbmm_def_scalars = 0;
    std::uint64_t obmm_def_scalars = 0;
    /// Peak k-vector stack coefficients while mapping a full multivector.
    std::uint64_t obmm_mapping_peak_scalars = 0;
    std::uint64_t btr_nodes_full = 0;
    /// Mean over grades 0..n of the node count of a full grade-k k-vector.
    double btr_nodes_kvectors = 0.0;
    std::uint64_t btr_nodes_terms = 0;
};

/// Node count (internal + leaf) of the BTR holding every grade-k blade of
/// an n-dimensional frame, counted analytically.
std::uint64_t btr_kvector_nodes(int n, int k);

MemoryReport memory_report(int n);

void write_memory_table(std::ostream& out, std::span<const MemoryReport> reports);

struct BenchConfig {
    int n_min = 3;
    int n_max = 10;
    std::vector<SparsityClass> classes{std::begin(kAllClasses), std::end(kAllClasses)};
    std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    int reps = 20;
    std::uint64_t seed = 42;
    bool parallel_cells = false;
    TimingOptions timing;
};

struct BenchRow {
    int n = 0;
    SparsityClass cls = SparsityClass::Full;
    Method method = Method::Obmm;
    double mean_us = 0.0;
    double std_us = 0.0;
    /// Definition scalars, plus the peak stack footprint for OBMM.
    std::uint64_t scalar_mem = 0;
};

struct FitRow {
    SparsityClass cls;
    Method method;
    FitResult fit;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<FitRow> fits;
};

BenchReport bench_run(const BenchConfig& config);

/// One fit per (class, method) present in rows, in first-appearance order.
std::vector<FitRow> fit_rows(std::span<const BenchRow> rows);

/// Header `n,class,method,mean_us,std_us,scalar_mem`, one row per cell,
/// then footer rows `fit,<class>,<method>,<c>,<b>,<residual>`.
void write_csv(std::ostream& out, const BenchReport& report);

/// Measurement rows of a CSV written by write_csv; footer rows are skipped.
std::vector<BenchRow> read_csv(std::istream& in);

void write_fits(std::ostream& out, std::span<const FitRow> fits);

/// Parses `lo..hi` or a single `n`.
std::pair<int, int> parse_dim_range(std::string_view text);

}  // namespace obmm::bench
