#include "sz/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define SZ_X86 1
#endif

namespace sz {

uint64_t dot_u32_scalar(const uint32_t* a, const uint32_t* b, size_t n) {
  uint64_t s = 0;
  for (size_t i = 0; i < n; ++i) s += static_cast<uint64_t>(a[i]) * b[i];
  return s;
}

#ifdef SZ_X86
__attribute__((target("avx2"))) uint64_t dot_u32_avx2(const uint32_t* a, const uint32_t* b, size_t n) {
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // even lanes, then odd lanes shifted down; 32x32 -> 64 products
    acc = _mm256_add_epi64(acc, _mm256_mul_epu32(x, y));
    acc = _mm256_add_epi64(acc, _mm256_mul_epu32(_mm256_srli_epi64(x, 32), _mm256_srli_epi64(y, 32)));
  }
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3] + dot_u32_scalar(a + i, b + i, n - i);
}

bool avx2_available() {
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return ok;
}
#else
uint64_t dot_u32_avx2(const uint32_t* a, const uint32_t* b, size_t n) { return dot_u32_scalar(a, b, n); }
bool avx2_available() { return false; }
#endif

uint64_t dot_u32(const uint32_t* a, const uint32_t* b, size_t n) {
  static const auto fn = avx2_available() ? &dot_u32_avx2 : &dot_u32_scalar;
  return fn(a, b, n);
}

}  // namespace sz
