// AArch64 only; NEON is part of the base ISA there.
#include <arm_neon.h>

#include <bit>

#include "rmtail/simd/bitset_kernels.hpp"

namespace rmtail::simd::neon {
namespace {

inline uint64x2_t load(const Word* p) { return vld1q_u64(p); }

inline std::size_t count(uint64x2_t v) {
  return static_cast<std::size_t>(vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v))));
}

}  // namespace

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) total += count(load(a + i));
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
  return total;
}

std::size_t and_popcount(const Word* a, const Word* b, std::size_t n) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) total += count(vandq_u64(load(a + i), load(b + i)));
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

void and_into(Word* dst, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vandq_u64(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void andnot_into(Word* dst, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  // vbicq_u64(x, y) computes x & ~y.
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vbicq_u64(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool any(const Word* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    if (vmaxvq_u32(vreinterpretq_u32_u64(load(a + i))) != 0) return true;
  }
  for (; i < n; ++i) {
    if (a[i]) return true;
  }
  return false;
}

}  // namespace rmtail::simd::neon
