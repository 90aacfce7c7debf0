#pragma once

#include "obmm/multivector.hpp"
#include "obmm/outermorphism.hpp"

namespace obmm {

/// T[E_i] as t_{i_0} ^ t_{i_1} ^ ... folded left to right with sparse_wedge.
SparseMultivector oracle_blade_image(const Outermorphism& om, BladeId id);

/// Reference T[X] by direct expansion over sparse multivectors. Shares no
/// code with the dense kernels; intended for small dimensions (n <= 10).
SparseMultivector map_oracle(const Outermorphism& om, const SparseMultivector& x);

}  // namespace obmm
