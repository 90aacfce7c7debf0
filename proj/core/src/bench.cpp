#include "obmm/bench.hpp"

#include "obmm/btr.hpp"
#include "obmm/errors.hpp"
#include "obmm/mapping.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

namespace obmm::bench {

std::string_view name(SparsityClass cls) noexcept
{
    switch (cls) {
    case SparsityClass::Full:
        return "full";
    case SparsityClass::KVectors:
        return "kvectors";
    case SparsityClass::Terms:
        return "terms";
    }
    return "?";
}

std::string_view name(Method method) noexcept
{
    return method == Method::Obmm ? "obmm" : "cbmm";
}

SparsityClass parse_class(std::string_view text)
{
    for (SparsityClass cls : kAllClasses) {
        if (name(cls) == text) {
            return cls;
        }
    }
    throw DomainError("unknown sparsity class `" + std::string(text) + "`");
}

Method parse_method(std::string_view text)
{
    for (Method method : kAllMethods) {
        if (name(method) == text) {
            return method;
        }
    }
    throw DomainError("unknown method `" + std::string(text) + "`");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double nonzero_uniform(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double v = 0.0;
    while (v == 0.0) {
        v = dist(rng);
    }
    return v;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) noexcept
{
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t p : parts) {
        h = splitmix64(h ^ splitmix64(p));
    }
    return h;
}

SparseMultivector gen_input(int n, SparsityClass cls, std::optional<int> grade, std::uint64_t seed)
{
    check_dim(n);
    std::mt19937_64 rng(seed);
    std::vector<Term> terms;
    switch (cls) {
    case SparsityClass::Full: {
        const std::uint64_t count = std::uint64_t{1} << n;
        terms.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            terms.push_back({static_cast<BladeId>(i), nonzero_uniform(rng)});
        }
        break;
    }
    case SparsityClass::KVectors: {
        if (!grade || *grade < 0 || *grade > n) {
            throw DomainError("k-vector input needs a grade in [0, " + std::to_string(n) + "]");
        }
        const std::uint64_t count = binomial(n, *grade);
        terms.reserve(count);
        for (std::uint64_t r = 0; r < count; ++r) {
            terms.push_back({comb_unrank(n, *grade, r), nonzero_uniform(rng)});
        }
        break;
    }
    case SparsityClass::Terms: {
        std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << n) - 1);
        const auto id = static_cast<BladeId>(pick(rng));
        terms.push_back({id, nonzero_uniform(rng)});
        break;
    }
    }
    return normalize(SparseMultivector(n, std::move(terms)));
}

Outermorphism gen_outermorphism(int n, int m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::vector<double>> columns(static_cast<std::size_t>(n));
    for (auto& column : columns) {
        column.resize(static_cast<std::size_t>(m));
        for (double& v : column) {
            v = dist(rng);
        }
    }
    return Outermorphism(n, m, columns);
}

namespace {

using Clock = std::chrono::steady_clock;

double checksum(const GradedOutput& y) noexcept
{
    double sum = 0.0;
    for (int k = 0; k <= y.codomain_dim(); ++k) {
        if (const auto& b = y.bucket(k)) {
            sum += (*b)[0];
        }
    }
    return sum;
}

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
};

// Times `call(rep)` for each rep, batching repeated calls on the same input
// so a sample spans at least min_sample_us. Returns per-call microseconds.
template <class Call>
SampleStats sample(int reps, const TimingOptions& options, Call&& call)
{
    volatile double sink = 0.0;
    for (int w = 0; w < options.warmup; ++w) {
        sink = sink + call(w % reps);
    }
    // Calibrate the batch size on rep 0.
    std::uint64_t batch = 1;
    for (;;) {
        const auto start = Clock::now();
        for (std::uint64_t i = 0; i < batch; ++i) {
            sink = sink + call(0);
        }
        const double us = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
        if (us >= options.min_sample_us || batch >= (std::uint64_t{1} << 20)) {
            break;
        }
        batch *= 2;
    }
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const auto start = Clock::now();
        for (std::uint64_t i = 0; i < batch; ++i) {
            sink = sink + call(r);
        }
        const double us = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
        samples.push_back(us / static_cast<double>(batch));
    }
    SampleStats out;
    for (double s : samples) {
        out.mean += s;
    }
    out.mean /= static_cast<double>(samples.size());
    if (samples.size() > 1) {
        for (double s : samples) {
            out.variance += (s - out.mean) * (s - out.mean);
        }
        out.variance /= static_cast<double>(samples.size() - 1);
    }
    return out;
}

}  // namespace

Timing time_mapping(Method method, int n, SparsityClass cls, int reps, std::uint64_t seed,
                    const TimingOptions& options)
{
    check_dim(n);
    if (reps < 1) {
        throw DomainError("reps must be at least 1");
    }
    const Outermorphism om = gen_outermorphism(n, n, derive_seed(seed, {0xA11CE, std::uint64_t(n)}));
    std::optional<CbmmTable> table;
    if (method == Method::Cbmm) {
        table.emplace(cbmm_build(om, options.cbmm_budget));
    }

    std::vector<int> grades;
    if (cls == SparsityClass::KVectors) {
        for (int k = 0; k <= n; ++k) {
            grades.push_back(k);
        }
    } else {
        grades.push_back(-1);
    }

    Timing timing;
    timing.reps = reps;
    double mean_sum = 0.0;
    double variance_sum = 0.0;
    for (int k : grades) {
        std::vector<SparseMultivector> inputs;
        std::vector<BtrTree> trees;
        for (int r = 0; r < reps; ++r) {
            const std::uint64_t s = derive_seed(
                seed, {std::uint64_t(n), std::uint64_t(cls), std::uint64_t(k + 1), std::uint64_t(r)});
            inputs.push_back(gen_input(n, cls, k >= 0 ? std::optional<int>(k) : std::nullopt, s));
            trees.push_back(build_btr(inputs.back()));
            timing.peak_stack_scalars =
                std::max(timing.peak_stack_scalars, obmm_stack_profile(trees.back(), n));
        }
        SampleStats stats;
        if (method == Method::Obmm) {
            stats = sample(reps, options, [&](int r) { return checksum(map_obmm(om, trees[r])); });
        } else {
            stats = sample(reps, options, [&](int r) { return checksum(map_cbmm(*table, inputs[r])); });
        }
        mean_sum += stats.mean;
        variance_sum += stats.variance;
    }
    const auto groups = static_cast<double>(grades.size());
    timing.mean_us = mean_sum / groups;
    timing.std_us = std::sqrt(variance_sum / groups);
    return timing;
}

FitResult fit_exponential(std::span<const FitPoint> points)
{
    if (points.size() < 2) {
        throw DomainError("exponential fit needs at least two points");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const FitPoint& p : points) {
        if (!(p.time > 0.0) || !std::isfinite(p.time)) {
            throw DomainError("exponential fit needs positive finite times");
        }
        sx += p.n;
        sy += std::log(p.time);
    }
    const auto count = static_cast<double>(points.size());
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const FitPoint& p : points) {
        sxx += (p.n - mx) * (p.n - mx);
        sxy += (p.n - mx) * (std::log(p.time) - my);
    }
    if (sxx == 0.0) {
        throw DomainError("exponential fit needs at least two distinct n");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (const FitPoint& p : points) {
        const double r = std::log(p.time) - (intercept + slope * p.n);
        ss += r * r;
    }
    return {std::exp(intercept), std::exp(slope), std::sqrt(ss / count)};
}

std::uint64_t btr_kvector_nodes(int n, int k)
{
    check_dim(n);
    if (k < 0 || k > n) {
        throw DomainError("grade outside [0, n]");
    }
    // A node with L decided top bits, j of them set, lies on some stored path
    // iff j <= k and the n - L undecided bits can supply the other k - j.
    std::uint64_t total = 0;
    for (int level = 0; level <= n; ++level) {
        for (int j = std::max(0, k - (n - level)); j <= std::min(k, level); ++j) {
            total += binomial(level, j);
        }
    }
    return total;
}

MemoryReport memory_report(int n)
{
    check_dim(n);
    MemoryReport report;
    report.n = n;
    report.cbmm_def_scalars = cbmm_scalar_count(n, n);
    report.obmm_def_scalars = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
    report.obmm_mapping_peak_scalars =
        obmm_stack_profile(build_btr(gen_input(n, SparsityClass::Full, std::nullopt, 0)), n);
    report.btr_nodes_full = (std::uint64_t{1} << (n + 1)) - 1;
    double kv = 0.0;
    for (int k = 0; k <= n; ++k) {
        kv += static_cast<double>(btr_kvector_nodes(n, k));
    }
    report.btr_nodes_kvectors = kv / (n + 1);
    report.btr_nodes_terms = static_cast<std::uint64_t>(n) + 1;
    return report;
}

void write_memory_table(std::ostream& out, std::span<const MemoryReport> reports)
{
    out << "n,cbmm_def_scalars,cbmm_def_bytes,obmm_def_scalars,obmm_mapping_peak_scalars,"
           "btr_nodes_full,btr_nodes_kvectors,btr_nodes_terms\n";
    const auto flags = out.flags();
    for (const MemoryReport& r : reports) {
        out << r.n << ',' << r.cbmm_def_scalars << ',' << 8 * r.cbmm_def_scalars << ','
            << r.obmm_def_scalars << ',' << r.obmm_mapping_peak_scalars << ',' << r.btr_nodes_full
            << ',' << std::fixed << std::setprecision(2) << r.btr_nodes_kvectors << ','
            << r.btr_nodes_terms << '\n';
        out.flags(flags);
    }
}

BenchReport bench_run(const BenchConfig& config)
{
    check_dim(config.n_min);
    check_dim(config.n_max);
    if (config.n_min > config.n_max) {
        throw DomainError("empty dimension range");
    }
    struct Cell {
        int n;
        SparsityClass cls;
        Method method;
    };
    std::vector<Cell> cells;
    for (int n = config.n_min; n <= config.n_max; ++n) {
        for (SparsityClass cls : config.classes) {
            for (Method method : config.methods) {
                cells.push_back({n, cls, method});
            }
        }
    }
    BenchReport report;
    report.rows.resize(cells.size());
    auto run_cell = [&](std::size_t i) {
        const Cell& c = cells[i];
        const Timing t = time_mapping(c.method, c.n, c.cls, config.reps, config.seed, config.timing);
        BenchRow& row = report.rows[i];
        row = {c.n, c.cls, c.method, t.mean_us, t.std_us, 0};
        if (c.method == Method::Obmm) {
            row.scalar_mem = static_cast<std::uint64_t>(c.n) * c.n + t.peak_stack_scalars;
        } else {
            row.scalar_mem = cbmm_scalar_count(c.n, c.n);
        }
    };

    if (config.parallel_cells && cells.size() > 1) {
        const unsigned workers =
            std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                            static_cast<unsigned>(cells.size())));
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < cells.size(); i = next++) {
                        run_cell(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = cells.size();
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    } else {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            run_cell(i);
        }
    }
    report.fits = fit_rows(report.rows);
    return report;
}

std::vector<FitRow> fit_rows(std::span<const BenchRow> rows)
{
    std::vector<FitRow> fits;
    std::vector<std::pair<SparsityClass, Method>> keys;
    for (const BenchRow& row : rows) {
        const std::pair key{row.cls, row.method};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(key);
        }
    }
    for (const auto& [cls, method] : keys) {
        std::vector<FitPoint> points;
        for (const BenchRow& row : rows) {
            if (row.cls == cls && row.method == method) {
                points.push_back({static_cast<double>(row.n), row.mean_us});
            }
        }
        if (points.size() >= 2) {
            fits.push_back({cls, method, fit_exponential(points)});
        }
    }
    return fits;
}

void write_csv(std::ostream& out, const BenchReport& report)
{
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << "n,class,method,mean_us,std_us,scalar_mem\n";
    out << std::setprecision(6);
    for (const BenchRow& r : report.rows) {
        out << r.n << ',' << name(r.cls) << ',' << name(r.method) << ',' << r.mean_us << ','
            << r.std_us << ',' << r.scalar_mem << '\n';
    }
    for (const FitRow& f : report.fits) {
        out << "fit," << name(f.cls) << ',' << name(f.method) << ',' << f.fit.c << ',' << f.fit.b
            << ',' << f.fit.residual << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

std::vector<BenchRow> read_csv(std::istream& in)
{
    std::vector<BenchRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.rfind("n,", 0) == 0 || line.rfind("fit,", 0) == 0 ||
            line[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 6) {
            throw ParseError("results line " + std::to_string(line_no) + ": expected 6 fields");
        }
        try {
            BenchRow row;
            row.n = std::stoi(fields[0]);
            row.cls = parse_class(fields[1]);
            row.method = parse_method(fields[2]);
            row.mean_us = std::stod(fields[3]);
            row.std_us = std::stod(fields[4]);
            row.scalar_mem = std::stoull(fields[5]);
            rows.push_back(row);
        } catch (const std::logic_error&) {
            throw ParseError("results line " + std::to_string(line_no) + ": malformed field");
        }
    }
    return rows;
}

void write_fits(std::ostream& out, std::span<const FitRow> fits)
{
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << "class,method,c,b,residual\n" << std::setprecision(6);
    for (const FitRow& f : fits) {
        out << name(f.cls) << ',' << name(f.method) << ',' << f.fit.c << ',' << f.fit.b << ','
            << f.fit.residual << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

std::pair<int, int> parse_dim_range(std::string_view text)
{
    auto to_int = [&](std::string_view s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(std::string(s), &used);
            if (used != s.size()) {
                throw std::invalid_argument("trailing");
            }
            return v;
        } catch (const std::logic_error&) {
            throw DomainError("bad dimension range `" + std::string(text) + "`");
        }
    };
    const auto dots = text.find("..");
    const int lo = to_int(dots == std::string_view::npos ? text : text.substr(0, dots));
    const int hi = dots == std::string_view::npos ? lo : to_int(text.substr(dots + 2));
    check_dim(lo);
    check_dim(hi);
    if (lo > hi) {
        throw DomainError("bad dimension range `" + std::string(text) + "`");
    }
    return {lo, hi};
}

}  // namespace obmm::bench
