#include <cstdlib>
#include <string_view>

#include "lieps/kernels.hpp"

namespace lieps::kernels {

#if defined(LIEPS_HAVE_AVX2_KERNELS)
const Table& avx2_table();
#endif
#if defined(LIEPS_HAVE_NEON_KERNELS)
const Table& neon_table();
#endif

const Table* avx2() {
#if defined(LIEPS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Table* neon() {
#if defined(LIEPS_HAVE_NEON_KERNELS)
  // Advanced SIMD is mandatory on aarch64.
  return &neon_table();
#else
  return nullptr;
#endif
}

std::vector<const Table*> available() {
  std::vector<const Table*> out{&scalar()};
  if (const Table* t = avx2()) out.push_back(t);
  if (const Table* t = neon()) out.push_back(t);
  return out;
}

const Table& active() {
  static const Table* chosen = [] {
    const char* env = std::getenv("LIEPS_KERNELS");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return &scalar();
    if (want == "avx2") return avx2() ? avx2() : &scalar();
    if (want == "neon") return neon() ? neon() : &scalar();
    if (const Table* t = avx2()) return t;
    if (const Table* t = neon()) return t;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace lieps::kernels
