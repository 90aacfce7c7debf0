// obmm: map multivectors through outermorphisms and run the timing/memory
// experiments.
//
//   obmm map --om T.txt --in X.txt --method obmm [--trace]
//   obmm bench --dims 3..10 --classes full,kvectors,terms --methods obmm,cbmm
//              --reps 20 --seed 42 --out results.csv [--parallel-cells]
//   obmm fit --in results.csv
//   obmm mem --dims 3..15
//   obmm gen-kernels --dim 3
//   obmm dump-btr --dim 3 --in X.txt

#include "CLI11.hpp"

#include "obmm/bench.hpp"
#include "obmm/btr.hpp"
#include "obmm/cbmm.hpp"
#include "obmm/errors.hpp"
#include "obmm/kernels.hpp"
#include "obmm/mapping.hpp"
#include "obmm/oracle.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw obmm::ParseError("cannot open `" + path + "`");
    }
    return in;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

int run_map(const std::string& om_path, const std::string& in_path, const std::string& method,
            bool trace)
{
    auto om_file = open_input(om_path);
    const obmm::Outermorphism om = obmm::read_outermorphism(om_file);
    auto mv_file = open_input(in_path);
    const obmm::SparseMultivector x = obmm::read_multivector(mv_file, om.domain_dim());

    obmm::SparseMultivector y;
    if (method == "obmm") {
        obmm::ObmmTrace log;
        y = obmm::graded_to_sparse(obmm::map_obmm(om, obmm::build_btr(x), trace ? &log : nullptr));
        if (trace) {
            std::cerr << log.to_text();
        }
    } else if (method == "cbmm") {
        y = obmm::graded_to_sparse(obmm::map_cbmm(obmm::cbmm_build(om), x));
    } else {
        y = obmm::map_oracle(om, x);
    }
    obmm::write_multivector(std::cout, y);
    return 0;
}

int run_bench(const obmm::bench::BenchConfig& config, const std::string& out_path)
{
    const obmm::bench::BenchReport report = obmm::bench::bench_run(config);
    if (out_path.empty() || out_path == "-") {
        obmm::bench::write_csv(std::cout, report);
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw obmm::ParseError("cannot write `" + out_path + "`");
        }
        obmm::bench::write_csv(out, report);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outermorphisms on sparse multivectors: online vs cached basis mapping"};
    app.require_subcommand(1);

    std::string om_path;
    std::string in_path;
    std::string method = "obmm";
    bool trace = false;
    auto* map = app.add_subcommand("map", "Map a multivector file through an outermorphism file");
    map->add_option("--om", om_path, "Outermorphism file (`dims n m` + n column lines)")->required();
    map->add_option("--in", in_path, "Multivector file (`<id> <coef>` lines)")->required();
    map->add_option("--method", method, "obmm | cbmm | oracle")
        ->check(CLI::IsMember({"obmm", "cbmm", "oracle"}));
    map->add_flag("--trace", trace, "Write the OBMM iteration log to stderr");

    obmm::bench::BenchConfig config;
    std::string dims = "3..10";
    std::string classes = "full,kvectors,terms";
    std::string methods = "obmm,cbmm";
    std::string out_path;
    auto* bench = app.add_subcommand("bench", "Time OBMM/CBMM mappings and write a CSV report");
    bench->add_option("--dims", dims, "Dimension range lo..hi")->capture_default_str();
    bench->add_option("--classes", classes, "Comma list of full,kvectors,terms")->capture_default_str();
    bench->add_option("--methods", methods, "Comma list of obmm,cbmm")->capture_default_str();
    bench->add_option("--reps", config.reps, "Timed repetitions per cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--seed", config.seed, "Input generator seed")->capture_default_str();
    bench->add_option("--warmup", config.timing.warmup, "Untimed warm-up calls")->capture_default_str();
    bench->add_option("--min-sample-us", config.timing.min_sample_us,
                      "Batch calls until one sample spans this long")
        ->capture_default_str();
    bench->add_option("--out", out_path, "CSV output path (default stdout)");
    bench->add_flag("--parallel-cells", config.parallel_cells,
                    "Run distinct (n, class, method) cells on separate threads");

    std::string fit_path;
    auto* fit = app.add_subcommand("fit", "Fit c*b^n to each (class, method) column of a CSV report");
    fit->add_option("--in", fit_path, "CSV written by `bench`")->required();

    std::string mem_dims = "3..15";
    auto* mem = app.add_subcommand("mem", "Print scalar/node storage counts per dimension");
    mem->add_option("--dims", mem_dims, "Dimension range lo..hi")->capture_default_str();

    int kernel_dim = 3;
    auto* gen = app.add_subcommand("gen-kernels", "Print the vector^k-vector kernel terms");
    gen->add_option("--dim", kernel_dim, "Vector space dimension")->required();

    int dump_dim = 3;
    std::string dump_path;
    auto* dump = app.add_subcommand("dump-btr", "Print the binary tree of a multivector file");
    dump->add_option("--dim", dump_dim, "Frame dimension")->required();
    dump->add_option("--in", dump_path, "Multivector file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*map) {
            return run_map(om_path, in_path, method, trace);
        }
        if (*bench) {
            const auto [lo, hi] = obmm::bench::parse_dim_range(dims);
            config.n_min = lo;
            config.n_max = hi;
            config.classes.clear();
            for (const auto& c : split_list(classes)) {
                config.classes.push_back(obmm::bench::parse_class(c));
            }
            config.methods.clear();
            for (const auto& m : split_list(methods)) {
                config.methods.push_back(obmm::bench::parse_method(m));
            }
            return run_bench(config, out_path);
        }
        if (*fit) {
            auto in = open_input(fit_path);
            const auto rows = obmm::bench::read_csv(in);
            obmm::bench::write_fits(std::cout, obmm::bench::fit_rows(rows));
            return 0;
        }
        if (*mem) {
            const auto [lo, hi] = obmm::bench::parse_dim_range(mem_dims);
            std::vector<obmm::bench::MemoryReport> reports;
            for (int n = lo; n <= hi; ++n) {
                reports.push_back(obmm::bench::memory_report(n));
            }
            obmm::bench::write_memory_table(std::cout, reports);
            return 0;
        }
        if (*gen) {
            obmm::write_kernel_spec(std::cout, kernel_dim);
            return 0;
        }
        if (*dump) {
            auto in = open_input(dump_path);
            obmm::dump_btr(std::cout, obmm::build_btr(obmm::read_multivector(in, dump_dim)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "obmm: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
