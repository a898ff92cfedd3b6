#include <cstdlib>
#include <string_view>

#include "ovs/kernels.hpp"

namespace ovs::kernels {

#if defined(OVS_HAVE_AVX2_KERNELS)
namespace avx2 {
const KernelTable& table() noexcept;
}
#endif

const KernelTable* avx2_table() noexcept {
#if defined(OVS_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& selected = [&]() -> const KernelTable& {
    const char* forced = std::getenv("OVS_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return selected;
}

}  // namespace ovs::kernels
