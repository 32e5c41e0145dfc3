#include "hyperqaoa/kernels.hpp"

#include "hyperqaoa/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hyperqaoa::kernels {

#if HYPERQAOA_HAVE_AVX2
const KernelTable *avx2_kernels_impl();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return "scalar";
  case Isa::Avx2:
    return "avx2";
  }
  return "unknown";
}

const KernelTable *avx2_kernels() {
#if HYPERQAOA_HAVE_AVX2
  return avx2_kernels_impl();
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return true;
  case Isa::Avx2:
#if HYPERQAOA_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
  }
  return false;
}

namespace {

const KernelTable *table_for(Isa isa) {
  if (!cpu_supports(isa))
    return nullptr;
  return isa == Isa::Avx2 ? avx2_kernels() : &scalar_kernels();
}

const KernelTable *initial_choice() {
  if (const char *env = std::getenv("HYPERQAOA_ISA")) {
    const std::string want(env);
    if (want == "scalar")
      return &scalar_kernels();
    if (want == "avx2")
      if (const auto *t = table_for(Isa::Avx2))
        return t;
  }
  if (const auto *t = table_for(Isa::Avx2))
    return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable *> &current() {
  static std::atomic<const KernelTable *> table{initial_choice()};
  return table;
}

} // namespace

const KernelTable &active() { return *current().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) {
  const KernelTable *t = table_for(isa);
  if (!t)
    throw InvalidArgument("kernel variant '" + std::string(isa_name(isa)) +
                          "' is not available on this build or CPU");
  current().store(t, std::memory_order_release);
}

} // namespace hyperqaoa::kernels
