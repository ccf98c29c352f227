#include <cstdlib>
#include <string_view>

#include "fuzzydet/kernels.hpp"

namespace fuzzydet::kernels {

#ifdef FUZZYDET_HAVE_AVX2
const ChainKernels& avx2_kernels_impl();
#endif

const ChainKernels* avx2_kernels() {
#ifdef FUZZYDET_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  if (supported) return &avx2_kernels_impl();
#endif
  return nullptr;
}

const ChainKernels& active() {
  static const ChainKernels& chosen = [] () -> const ChainKernels& {
    const char* forced = std::getenv("FUZZYDET_KERNELS");
    if (forced && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const ChainKernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace fuzzydet::kernels
