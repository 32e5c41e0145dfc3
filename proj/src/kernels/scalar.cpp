#include "hyperqaoa/kernels.hpp"

#include <bit>

namespace hyperqaoa::kernels {
namespace {

void phase_scalar(cplx *amp, const std::uint32_t *level, const cplx *phase,
                  std::size_t dim) {
  for (std::size_t z = 0; z < dim; ++z) {
    const cplx p = phase[level[z]];
    const double re = amp[z].real() * p.real() - amp[z].imag() * p.imag();
    const double im = amp[z].real() * p.imag() + amp[z].imag() * p.real();
    amp[z] = {re, im};
  }
}

void mixer_scalar(cplx *amp, int num_qubits, double c, double s) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  for (int q = 0; q < num_qubits; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * stride)
      for (std::size_t i = base; i < base + stride; ++i) {
        const cplx a = amp[i];
        const cplx b = amp[i + stride];
        amp[i] = {c * a.real() - s * b.imag(), c * a.imag() + s * b.real()};
        amp[i + stride] = {c * b.real() - s * a.imag(),
                           c * b.imag() + s * a.real()};
      }
  }
}

double norm_scalar(const cplx *amp, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t z = 0; z < dim; ++z)
    sum += std::norm(amp[z]);
  return sum;
}

double diagonal_scalar(const cplx *amp, const double *diag, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t z = 0; z < dim; ++z)
    sum += std::norm(amp[z]) * diag[z];
  return sum;
}

double parity_scalar(const cplx *amp, std::size_t dim, std::uint64_t mask) {
  double sum = 0.0;
  for (std::size_t z = 0; z < dim; ++z) {
    const double p = std::norm(amp[z]);
    sum += (std::popcount(z & mask) & 1) ? -p : p;
  }
  return sum;
}

constexpr KernelTable kScalar{Isa::Scalar,  phase_scalar,    mixer_scalar,
                              norm_scalar,  diagonal_scalar, parity_scalar};

} // namespace

const KernelTable &scalar_kernels() { return kScalar; }

} // namespace hyperqaoa::kernels
