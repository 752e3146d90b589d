#pragma once
// Integer dot product used by the determinant-valuation counter, with a
// scalar path and an AVX2 path selected at run time.

#include <cstddef>
#include <cstdint>

namespace sz {

uint64_t dot_u32_scalar(const uint32_t* a, const uint32_t* b, size_t n);
// Only valid when avx2_available().
uint64_t dot_u32_avx2(const uint32_t* a, const uint32_t* b, size_t n);
bool avx2_available();
// Dispatches once on the CPU features.
uint64_t dot_u32(const uint32_t* a, const uint32_t* b, size_t n);

}  // namespace sz
