// Emits straight-line vector^k-vector kernels for dimensions 1..ceiling.
//
//   obmm_kernel_codegen <ceiling> <output-dir>
//
// Writes kernels_dim<m>.cpp for every m and kernels_dispatch.cpp.

#include "obmm/blade.hpp"
#include "obmm/kernels.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr const char* kBanner = "// Generated by obmm_kernel_codegen. Do not edit.\n";

std::string table_name(int m) { return "kKernelsDim" + std::to_string(m); }

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::trunc);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string dimension_source(int m)
{
    std::ostringstream src;
    src << kBanner << "#include \"generated_kernels.hpp\"\n\nnamespace obmm::detail {\n\nnamespace {\n";
    for (int k = 0; k < m; ++k) {
        const obmm::KernelTable table = obmm::kernel_table(m, k);
        src << "\n// dim " << m << ": vector ^ grade-" << k << " -> grade-" << k + 1 << "\n";
        src << "void vwk_" << m << '_' << k
            << "(const double* v, const double* t, double* out) noexcept\n{\n";
        const std::size_t per_slot = static_cast<std::size_t>(k) + 1;
        for (std::size_t i = 0; i < table.triples.size(); i += per_slot) {
            src << "    out[" << table.triples[i].out_index << "] =";
            for (std::size_t q = 0; q < per_slot; ++q) {
                const obmm::KernelTriple& t = table.triples[i + q];
                if (q == 0) {
                    src << ' ';
                } else {
                    src << (t.sign > 0 ? " + " : " - ");
                }
                src << "v[" << t.vector_index << "] * t[" << t.kvector_index << ']';
            }
            src << ";\n";
        }
        src << "}\n";
    }
    src << "\n}  // namespace\n\n";
    src << "extern const KernelFn " << table_name(m) << '[' << m << "];\n";
    src << "const KernelFn " << table_name(m) << '[' << m << "] = {";
    for (int k = 0; k < m; ++k) {
        src << (k ? ", " : "") << "vwk_" << m << '_' << k;
    }
    src << "};\n\n}  // namespace obmm::detail\n";
    return src.str();
}

std::string dispatch_source(int ceiling)
{
    std::ostringstream src;
    src << kBanner << "#include \"generated_kernels.hpp\"\n\nnamespace obmm::detail {\n\n";
    for (int m = 1; m <= ceiling; ++m) {
        src << "extern const KernelFn " << table_name(m) << '[' << m << "];\n";
    }
    src << "\nconst int kGeneratedKernelCeiling = " << ceiling << ";\n\nnamespace {\n\n";
    src << "const KernelFn* const kRows[] = {nullptr";
    for (int m = 1; m <= ceiling; ++m) {
        src << ", " << table_name(m);
    }
    src << "};\n\n}  // namespace\n\n";
    src << "KernelFn generated_kernel(int m, int k) noexcept\n{\n"
        << "    if (m < 1 || m > kGeneratedKernelCeiling || k < 0 || k >= m) {\n"
        << "        return nullptr;\n    }\n    return kRows[m][k];\n}\n\n"
        << "}  // namespace obmm::detail\n";
    return src.str();
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::cerr << "usage: " << argv[0] << " <ceiling> <output-dir>\n";
        return 2;
    }
    const int ceiling = std::atoi(argv[1]);
    if (ceiling < 0 || ceiling > obmm::kMaxDim) {
        std::cerr << "ceiling must be in [0, " << obmm::kMaxDim << "]\n";
        return 2;
    }
    const std::filesystem::path dir(argv[2]);
    try {
        std::filesystem::create_directories(dir);
        for (int m = 1; m <= ceiling; ++m) {
            write_file(dir / ("kernels_dim" + std::to_string(m) + ".cpp"), dimension_source(m));
        }
        write_file(dir / "kernels_dispatch.cpp", dispatch_source(ceiling));
    } catch (const std::exception& e) {
        std::cerr << "obmm_kernel_codegen: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
