#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hyperqaoa::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

// Inner loops of the statevector simulator. Every entry has a scalar
// reference implementation; vector variants must agree with it to rounding.
struct KernelTable {
  Isa isa;

  // amp[z] *= phase[level[z]]
  void (*apply_phase)(cplx *amp, const std::uint32_t *level, const cplx *phase,
                      std::size_t dim);

  // exp(+i*beta*X) on every qubit: (a, b) -> (c*a + i*s*b, c*b + i*s*a)
  // with c = cos(beta), s = sin(beta).
  void (*apply_mixer)(cplx *amp, int num_qubits, double c, double s);

  // sum_z |amp[z]|^2
  double (*norm_squared)(const cplx *amp, std::size_t dim);

  // sum_z |amp[z]|^2 * diag[z]
  double (*diagonal_expectation)(const cplx *amp, const double *diag,
                                 std::size_t dim);

  // sum_z |amp[z]|^2 * (-1)^popcount(z & mask)
  double (*parity_expectation)(const cplx *amp, std::size_t dim,
                               std::uint64_t mask);
};

const KernelTable &scalar_kernels();

// Null when the variant was not compiled in.
const KernelTable *avx2_kernels();

bool cpu_supports(Isa isa);

// Best variant for this CPU unless overridden by set_active_isa() or the
// HYPERQAOA_ISA environment variable ("scalar" or "avx2").
const KernelTable &active();

// Throws InvalidArgument when the variant is unavailable on this build/CPU.
void set_active_isa(Isa isa);

} // namespace hyperqaoa::kernels
