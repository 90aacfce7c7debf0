#include "obmm/kernels.hpp"

#include "obmm/errors.hpp"

#include <bit>
#include <ostream>
#include <string>

namespace obmm {

KernelTable kernel_table(int m, int k)
{
    check_dim(m);
    if (k < 0 || k >= m) {
        throw DomainError("no vector^k-vector kernel for grade " + std::to_string(k) +
                          " in dimension " + std::to_string(m));
    }
    KernelTable table{m, k, {}};
    const std::uint64_t slots = binomial(m, k + 1);
    table.triples.reserve(slots * static_cast<std::uint64_t>(k + 1));
    BladeId subset = (BladeId{1} << (k + 1)) - 1;
    for (std::uint64_t r = 0; r < slots; ++r) {
        BladeId rest = subset;
        int position = 0;
        while (rest != 0) {
            const int j = std::countr_zero(rest);
            rest &= rest - 1;
            const BladeId without = subset & ~(BladeId{1} << j);
            table.triples.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(j),
                                     static_cast<std::uint32_t>(comb_rank(without)),
                                     (position & 1) ? -1 : +1});
            ++position;
        }
        subset = next_same_grade(subset);
    }
    return table;
}

void write_kernel_spec(std::ostream& out, int m)
{
    check_dim(m);
    for (int k = 0; k < m; ++k) {
        const KernelTable table = kernel_table(m, k);
        out << "# dim " << m << " grade " << k << " -> grade " << k + 1 << " ("
            << table.triples.size() << " terms)\n";
        for (const KernelTriple& t : table.triples) {
            out << "out[" << t.out_index << "] += " << (t.sign > 0 ? '+' : '-') << " v["
                << t.vector_index << "] * T[" << t.kvector_index << "]\n";
        }
    }
}

}  // namespace obmm
