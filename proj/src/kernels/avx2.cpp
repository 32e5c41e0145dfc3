#include "hyperqaoa/kernels.hpp"

#include <bit>
#include <immintrin.h>

namespace hyperqaoa::kernels {
namespace {

// Two complex doubles per register: (re0, im0, re1, im1).

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// |amp|^2 for four consecutive states z..z+3, returned in lane order
// (z, z+2, z+1, z+3).
inline __m256d probs4(const cplx *amp) {
  const __m256d v0 = _mm256_loadu_pd(reinterpret_cast<const double *>(amp));
  const __m256d v1 = _mm256_loadu_pd(reinterpret_cast<const double *>(amp + 2));
  return _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
}

void phase_avx2(cplx *amp, const std::uint32_t *level, const cplx *phase,
                std::size_t dim) {
  std::size_t z = 0;
  for (; z + 2 <= dim; z += 2) {
    double *ptr = reinterpret_cast<double *>(amp + z);
    const __m256d p = _mm256_loadu2_m128d(
        reinterpret_cast<const double *>(phase + level[z + 1]),
        reinterpret_cast<const double *>(phase + level[z]));
    _mm256_storeu_pd(ptr, cmul(_mm256_loadu_pd(ptr), p));
  }
  for (; z < dim; ++z)
    amp[z] *= phase[level[z]];
}

void mixer_avx2(cplx *amp, int num_qubits, double c, double s) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_setr_pd(-s, s, -s, s);
  double *base_ptr = reinterpret_cast<double *>(amp);

  if (dim >= 2) {
    // qubit 0: both halves of a pair sit in one register
    for (std::size_t i = 0; i < dim; i += 2) {
      double *ptr = base_ptr + 2 * i;
      const __m256d v = _mm256_loadu_pd(ptr);
      const __m256d w = _mm256_permute_pd(_mm256_permute2f128_pd(v, v, 1), 0x5);
      _mm256_storeu_pd(ptr, _mm256_fmadd_pd(vc, v, _mm256_mul_pd(vs, w)));
    }
  }
  for (int q = 1; q < num_qubits; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t block = 0; block < dim; block += 2 * stride)
      for (std::size_t i = block; i < block + stride; i += 2) {
        double *pa = base_ptr + 2 * i;
        double *pb = base_ptr + 2 * (i + stride);
        const __m256d a = _mm256_loadu_pd(pa);
        const __m256d b = _mm256_loadu_pd(pb);
        const __m256d a_sw = _mm256_permute_pd(a, 0x5);
        const __m256d b_sw = _mm256_permute_pd(b, 0x5);
        _mm256_storeu_pd(pa, _mm256_fmadd_pd(vc, a, _mm256_mul_pd(vs, b_sw)));
        _mm256_storeu_pd(pb, _mm256_fmadd_pd(vc, b, _mm256_mul_pd(vs, a_sw)));
      }
  }
}

double norm_avx2(const cplx *amp, std::size_t dim) {
  const double *ptr = reinterpret_cast<const double *>(amp);
  const std::size_t len = 2 * dim;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(ptr + i);
    const __m256d v1 = _mm256_loadu_pd(ptr + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i)
    sum += ptr[i] * ptr[i];
  return sum;
}

double diagonal_avx2(const cplx *amp, const double *diag, std::size_t dim) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t z = 0;
  for (; z + 4 <= dim; z += 4) {
    const __m256d d = _mm256_permute4x64_pd(_mm256_loadu_pd(diag + z), 0xD8);
    acc = _mm256_fmadd_pd(probs4(amp + z), d, acc);
  }
  double sum = hsum(acc);
  for (; z < dim; ++z)
    sum += std::norm(amp[z]) * diag[z];
  return sum;
}

double parity_avx2(const cplx *amp, std::size_t dim, std::uint64_t mask) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t z = 0;
  auto flip = [mask](std::size_t idx) {
    return (std::popcount(idx & mask) & 1) ? -1.0 : 0.0;
  };
  for (; z + 4 <= dim; z += 4) {
    // lane order matches probs4: z, z+2, z+1, z+3
    const __m256d neg =
        _mm256_and_pd(_mm256_setr_pd(flip(z), flip(z + 2), flip(z + 1),
                                     flip(z + 3)),
                      sign_bit);
    acc = _mm256_add_pd(acc, _mm256_xor_pd(probs4(amp + z), neg));
  }
  double sum = hsum(acc);
  for (; z < dim; ++z) {
    const double p = std::norm(amp[z]);
    sum += (std::popcount(z & mask) & 1) ? -p : p;
  }
  return sum;
}

constexpr KernelTable kAvx2{Isa::Avx2, phase_avx2,    mixer_avx2,
                            norm_avx2, diagonal_avx2, parity_avx2};

} // namespace

const KernelTable *avx2_kernels_impl() { return &kAvx2; }

} // namespace hyperqaoa::kernels
