#pragma once

// In-library interface to the vector ^ k-vector kernels.

namespace obmm::detail {

using KernelFn = void (*)(const double* v, const double* t, double* out) noexcept;

extern const int kGeneratedKernelCeiling;

/// Kernel for (m, k), or nullptr when m exceeds the generated ceiling.
KernelFn generated_kernel(int m, int k) noexcept;

/// out[0 .. C(m, k+1)) = v ^ t for a grade-k t, no operand checks. out must
/// not alias v or t.
void wedge_into(int m, int k, const double* v, const double* t, double* out);

}  // namespace obmm::detail
