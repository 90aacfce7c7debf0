// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include "obmm/bench.hpp"
#include "obmm/blade.hpp"
#include "obmm/btr.hpp"
#include "obmm/cbmm.hpp"
#include "obmm/compare.hpp"
#include "obmm/kernels.hpp"
#include "obmm/mapping.hpp"
#include "obmm/oracle.hpp"
#include "support/btr_compare.hpp"
#include "support/oracles.hpp"
#include "support/table1.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace obmm;
namespace tst = obmm::testing;

namespace {

constexpr double kOracleRel = 1e-12;
constexpr double kAxiomRel = 1e-11;
constexpr double kKernelRel = 1e-13;
constexpr double kFitRel = 0.02;
constexpr double kOracleSeconds = 60.0;
constexpr double kAxiomSeconds = 30.0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

std::string describe(const Mismatch& m)
{
    std::ostringstream s;
    s.precision(17);
    s << "blade " << m.id << ": " << m.lhs << " vs " << m.rhs;
    return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Relative error as approx_equal judges it; differences under the absolute
// floor count as zero.
double relative_error(double a, double b)
{
    const double diff = std::abs(a - b);
    return diff <= kAbsFloor ? 0.0 : diff / std::max(std::abs(a), std::abs(b));
}

SparseMultivector apply(const Outermorphism& om, const SparseMultivector& x)
{
    return graded_to_sparse(map_obmm(om, build_btr(normalize(x))));
}

Outcome oracle_equivalence()
{
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::size_t pairs = 0;
    double worst = 0.0;
    for (int n = 3; n <= 8; ++n) {
        for (int trial = 0; trial < 500; ++trial) {
            const auto cls = bench::kAllClasses[trial % 3];
            const std::uint64_t seed = bench::derive_seed(2024, {std::uint64_t(n), std::uint64_t(trial)});
            const Outermorphism om = bench::gen_outermorphism(n, n, seed);
            const std::optional<int> k =
                cls == bench::SparsityClass::KVectors ? std::optional<int>((trial / 3) % (n + 1)) : std::nullopt;
            const SparseMultivector x = bench::gen_input(n, cls, k, seed ^ 0x5eed);
            const SparseMultivector a = apply(om, x);
            const SparseMultivector b = graded_to_sparse(map_cbmm(cbmm_build(om), x));
            const SparseMultivector c = map_oracle(om, x);
            ++pairs;
            Mismatch m;
            if (!approx_equal(a, c, kOracleRel, &m)) {
                out.fail("obmm vs oracle, n=" + std::to_string(n) + " " + std::string(bench::name(cls)) +
                         " trial " + std::to_string(trial) + ", " + describe(m));
            }
            if (!approx_equal(b, c, kOracleRel, &m)) {
                out.fail("cbmm vs oracle, n=" + std::to_string(n) + " " + std::string(bench::name(cls)) +
                         " trial " + std::to_string(trial) + ", " + describe(m));
            }
            for (const Term& t : c.terms()) {
                worst = std::max({worst, relative_error(a.coef(t.id), t.coef), relative_error(b.coef(t.id), t.coef)});
            }
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= kOracleSeconds) {
        out.fail("took " + std::to_string(elapsed) + " s");
    }
    if (out.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu pairs, worst rel %.3g, %.1f s", pairs, worst, elapsed);
        out.detail = buf;
    }
    return out;
}

Outcome axiom_suite()
{
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> scalar(-2.0, 2.0);
    auto check = [&](bool ok, const char* axiom, int n, const Mismatch& m) {
        if (!ok) {
            out.fail(std::string(axiom) + ", n=" + std::to_string(n) + ", " + describe(m));
        }
    };
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            const Outermorphism om = tst::random_outermorphism(n, n, rng);
            const SparseMultivector a = tst::random_multivector(n, rng, 0.5);
            const SparseMultivector b = tst::random_multivector(n, rng, 0.5);
            const double alpha = scalar(rng);
            const SparseMultivector ta = apply(om, a);
            const SparseMultivector tb = apply(om, b);
            Mismatch m;

            check(approx_equal(apply(om, sparse_wedge(a, b)), sparse_wedge(ta, tb), kAxiomRel, &m),
                  "wedge homomorphism", n, m);
            check(approx_equal(apply(om, a + b), ta + tb, kAxiomRel, &m), "additivity", n, m);
            check(approx_equal(apply(om, alpha * a), alpha * ta, kAxiomRel, &m), "homogeneity", n, m);

            const int k = trial % (n + 1);
            const SparseMultivector graded = apply(om, grade_part(a, k));
            for (const Term& t : graded.terms()) {
                if (grade(t.id) != k) {
                    out.fail("grade preservation, n=" + std::to_string(n));
                }
            }
            check(approx_equal(apply(om, SparseMultivector::scalar(n, alpha)), SparseMultivector::scalar(n, alpha),
                               kAxiomRel, &m),
                  "scalar fixpoint", n, m);

            const BladeId top = (BladeId{1} << n) - 1;
            const double det = tst::leibniz_determinant(om.matrix(), n);
            check(approx_equal(apply(om, SparseMultivector(n, {{top, alpha}})),
                               SparseMultivector(n, {{top, alpha * det}}), kAxiomRel, &m),
                  "pseudoscalar determinant", n, m);
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= kAxiomSeconds) {
        out.fail("took " + std::to_string(elapsed) + " s");
    }
    if (out.pass) {
        out.detail = "6 axioms x 200 trials x n=1..6, " + std::to_string(elapsed).substr(0, 4) + " s";
    }
    return out;
}

constexpr const char* kGoldenTrace =
    "Initialize stacks:\n"
    "  Push (X_---, 1)\n"
    "Iteration 1:\n"
    "  Pop (X_---, 1)\n"
    "  Internal node\n"
    "  Push (X_0--, 1)\n"
    "  Push (X_1--, t2)\n"
    "Iteration 2:\n"
    "  Pop (X_1--, t2)\n"
    "  Internal node\n"
    "  Push (X_11-, t1^t2)\n"
    "Iteration 3:\n"
    "  Pop (X_11-, t1^t2)\n"
    "  Internal node\n"
    "  Push (X_111, t0^t1^t2)\n"
    "Iteration 4:\n"
    "  Pop (X_111, t0^t1^t2)\n"
    "  Leaf node; Y <- Y + (1) t0^t1^t2\n"
    "Iteration 5:\n"
    "  Pop (X_0--, 1)\n"
    "  Internal node\n"
    "  Push (X_00-, 1)\n"
    "  Push (X_01-, t1)\n"
    "Iteration 6:\n"
    "  Pop (X_01-, t1)\n"
    "  Internal node\n"
    "  Push (X_011, t0^t1)\n"
    "Iteration 7:\n"
    "  Pop (X_011, t0^t1)\n"
    "  Leaf node; Y <- Y + (-2) t0^t1\n"
    "Iteration 8:\n"
    "  Pop (X_00-, 1)\n"
    "  Internal node\n"
    "  Push (X_001, t0)\n"
    "Iteration 9:\n"
    "  Pop (X_001, t0)\n"
    "  Leaf node; Y <- Y + (2) t0\n";

Outcome golden_trace()
{
    Outcome out;
    const SparseMultivector x(3, {{1, 2.0}, {3, -2.0}, {7, 1.0}});
    ObmmTrace trace;
    const GradedOutput y = map_obmm(Outermorphism::identity(3), build_btr(x), &trace);
    if (trace.iterations() != 9) {
        out.fail(std::to_string(trace.iterations()) + " iterations");
    }
    const std::string text = trace.to_text();
    if (text != kGoldenTrace) {
        std::istringstream got(text);
        std::istringstream want(kGoldenTrace);
        std::string g;
        std::string w;
        int line = 0;
        while (true) {
            ++line;
            const bool more_g = static_cast<bool>(std::getline(got, g));
            const bool more_w = static_cast<bool>(std::getline(want, w));
            if (!more_g && !more_w) {
                break;
            }
            if (g != w || more_g != more_w) {
                out.fail("line " + std::to_string(line) + ": `" + g + "` expected `" + w + "`");
                break;
            }
        }
    }
    if (graded_to_sparse(y) != x) {
        out.fail("identity map changed the multivector");
    }
    if (out.pass) {
        out.detail = "9 iterations, 35 lines identical";
    }
    return out;
}

Outcome kernel_fidelity()
{
    Outcome out;
    std::mt19937_64 rng(606);
    double worst = 0.0;
    for (int m = 1; m <= 8; ++m) {
        for (int k = 0; k < m; ++k) {
            for (int trial = 0; trial < 100; ++trial) {
                const SparseMultivector v = tst::random_vector(m, rng);
                const SparseMultivector t = tst::random_grade(m, k, rng);
                const KVector got = vector_wedge_kvector(KVector::from_sparse(v, 1), KVector::from_sparse(t, k));
                const SparseMultivector want = sparse_wedge(v, t);
                Mismatch mm;
                if (!approx_equal(got.to_sparse(), want, kKernelRel, &mm)) {
                    out.fail("m=" + std::to_string(m) + " k=" + std::to_string(k) + ", " + describe(mm));
                }
                for (const Term& term : want.terms()) {
                    worst = std::max(worst, relative_error(got[comb_rank(term.id)], term.coef));
                }
            }
        }
    }
    // t ^ T for T of grade 1 and 2 over <f0, f1, f2>, vector on the left.
    const std::vector<KernelTriple> grade1{{0, 0, 1, +1}, {0, 1, 0, -1}, {1, 0, 2, +1},
                                           {1, 2, 0, -1}, {2, 1, 2, +1}, {2, 2, 1, -1}};
    const std::vector<KernelTriple> grade2{{0, 0, 2, +1}, {0, 1, 1, -1}, {0, 2, 0, +1}};
    const std::vector<KernelTriple> grade0{{0, 0, 0, +1}, {1, 1, 0, +1}, {2, 2, 0, +1}};
    if (kernel_table(3, 0).triples != grade0 || kernel_table(3, 1).triples != grade1 ||
        kernel_table(3, 2).triples != grade2) {
        out.fail("m=3 sign pattern differs");
    }
    if (out.pass) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "3600 pairs, worst rel %.3g, m=3 patterns match", worst);
        out.detail = buf;
    }
    return out;
}

Outcome memory_formulas()
{
    Outcome out;
    for (int n = 3; n <= 15; ++n) {
        const bench::MemoryReport r = bench::memory_report(n);
        if (r.cbmm_def_scalars != binomial(2 * n, n)) {
            out.fail("cbmm scalars at n=" + std::to_string(n));
        }
        if (r.obmm_def_scalars != std::uint64_t(n) * n) {
            out.fail("obmm scalars at n=" + std::to_string(n));
        }
        if (r.btr_nodes_full != (std::uint64_t{2} << n) - 1) {
            out.fail("full tree nodes at n=" + std::to_string(n));
        }
        if (n <= 12) {
            const auto tree = build_btr(bench::gen_input(n, bench::SparsityClass::Full, std::nullopt, 1));
            if (node_count(tree).total() != (std::size_t{2} << n) - 1) {
                out.fail("built full tree nodes at n=" + std::to_string(n));
            }
        }
    }
    const bench::MemoryReport r15 = bench::memory_report(15);
    if (r15.cbmm_def_scalars != 155117520 || 8 * r15.cbmm_def_scalars != 1240940160) {
        out.fail("n=15 cbmm figure");
    }
    if (out.pass) {
        out.detail = "n=3..15, n=15: 155117520 scalars = 1240940160 bytes";
    }
    return out;
}

Outcome benchmark_trends()
{
    Outcome out;
    bench::BenchConfig config;  // n = 3..10, all classes, both methods, reps = 20
    const bench::BenchReport report = bench::bench_run(config);
    auto b_of = [&](bench::SparsityClass cls, bench::Method m) {
        for (const bench::FitRow& f : report.fits) {
            if (f.cls == cls && f.method == m) {
                return f.fit.b;
            }
        }
        return std::nan("");
    };
    std::ostringstream detail;
    detail.precision(4);
    for (bench::Method m : bench::kAllMethods) {
        const double full = b_of(bench::SparsityClass::Full, m);
        const double kv = b_of(bench::SparsityClass::KVectors, m);
        const double terms = b_of(bench::SparsityClass::Terms, m);
        detail << bench::name(m) << " b(full)=" << full << " b(kvectors)=" << kv << " b(terms)=" << terms
               << "; ";
        if (!(terms < kv && kv < full)) {
            out.fail(std::string(bench::name(m)) + " base ordering");
        }
        if (!(full >= 2.5 && full <= 4.5)) {
            out.fail(std::string(bench::name(m)) + " b(full) outside [2.5, 4.5]");
        }
    }
    const double bo = b_of(bench::SparsityClass::Full, bench::Method::Obmm);
    const double bc = b_of(bench::SparsityClass::Full, bench::Method::Cbmm);
    const double gap = std::abs(bo - bc) / bc;
    detail << "full gap " << gap;
    if (!(gap < 0.15)) {
        out.fail("full obmm/cbmm base gap >= 0.15");
    }
    out.detail = out.pass ? detail.str() : out.detail + " (" + detail.str() + ")";
    return out;
}

Outcome curve_fit()
{
    Outcome out;
    double worst = 0.0;
    for (std::size_t col = 0; col < 6; ++col) {
        std::vector<bench::FitPoint> pts;
        for (std::size_t r = 0; r < tst::kTable1Times.size(); ++r) {
            pts.push_back({double(tst::kTable1FirstN + int(r)), tst::kTable1Times[r][col]});
        }
        const bench::FitResult f = bench::fit_exponential(pts);
        const double eb = std::abs(f.b - tst::kTable1B[col]) / tst::kTable1B[col];
        const double ec = std::abs(f.c - tst::kTable1C[col]) / tst::kTable1C[col];
        worst = std::max({worst, eb, ec});
        if (eb >= kFitRel || ec >= kFitRel) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: b=%.4f c=%.4f", tst::kTable1Columns[col], f.b, f.c);
            out.fail(buf);
        }
    }
    if (out.pass) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "6 columns, worst rel error %.3g", worst);
        out.detail = buf;
    }
    return out;
}

Outcome btr_structure()
{
    Outcome out;
    std::mt19937_64 rng(8080);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 12;
        const double density = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
        const SparseMultivector x = tst::random_multivector(n, rng, density);
        const BtrTree tree = build_btr(x);
        if (btr_to_terms(tree) != x) {
            out.fail("round trip, n=" + std::to_string(n));
        }
        if (tree.empty()) {
            continue;
        }
        struct Item {
            NodeRef node;
            BladeId path;
            int depth;
        };
        std::vector<Item> stack{{tree.root(), 0, n}};
        while (!stack.empty()) {
            const Item it = stack.back();
            stack.pop_back();
            if (tree.id_of(it.node) != it.path || tree.depth_of(it.node) != it.depth) {
                out.fail("path/id mismatch, n=" + std::to_string(n));
            }
            if (!it.node.leaf) {
                for (int which = 0; which < 2; ++which) {
                    const NodeRef c = tree.child(it.node, which);
                    if (c.index != kNoChild) {
                        stack.push_back({c, child_id(it.path, it.depth, which), it.depth - 1});
                    }
                }
            }
        }
    }
    int embedded = 0;
    while (embedded < 100) {
        const int n = std::uniform_int_distribution<int>(2, 10)(rng);
        const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
        const SparseMultivector small = tst::random_multivector(k, rng, 0.6);
        if (small.empty()) {
            continue;
        }
        ++embedded;
        const BtrTree small_tree = build_btr(small);
        const BtrTree big_tree = build_btr(SparseMultivector(n, {small.terms().begin(), small.terms().end()}));
        NodeRef at = big_tree.root();
        for (int level = n; level > k && at.index != kNoChild; --level) {
            if (big_tree.child(at, 1).index != kNoChild) {
                out.fail("embedded tree has a 1-branch above level k");
            }
            at = big_tree.child(at, 0);
        }
        if (at.index == kNoChild || !tst::same_subtree(big_tree, at, small_tree, small_tree.root())) {
            out.fail("subtree embedding, k=" + std::to_string(k) + " n=" + std::to_string(n));
        }
    }
    if (out.pass) {
        out.detail = "1000 round trips, path/id walk, 100 embeddings";
    }
    return out;
}

}  // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"oracle equivalence", oracle_equivalence},
        {"outermorphism axioms", axiom_suite},
        {"golden trace", golden_trace},
        {"kernel fidelity", kernel_fidelity},
        {"memory formulas", memory_formulas},
        {"benchmark trends", benchmark_trends},
        {"curve fit", curve_fit},
        {"btr structure", btr_structure},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [label, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, label, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed;
}
