#pragma once
// Word-array bitset kernels used by the exact independent-set search.
//
// Each kernel has a scalar reference implementation plus AVX2 (x86-64) and
// NEON (AArch64) variants. The active variant is chosen once at startup from
// CPU features; RMTAIL_FORCE_SCALAR=1 in the environment pins the scalar one.
// All variants must produce identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace rmtail::simd {

using Word = std::uint64_t;

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// Variant currently used by the dispatching entry points below.
Isa active_isa();
/// True when `isa` was compiled in and the CPU supports it.
bool isa_available(Isa isa);
/// Switch the dispatching entry points (tests only). Throws if unavailable.
void set_active_isa(Isa isa);

struct KernelTable {
  std::size_t (*popcount)(const Word* a, std::size_t n);
  std::size_t (*and_popcount)(const Word* a, const Word* b, std::size_t n);
  void (*and_into)(Word* dst, const Word* a, const Word* b, std::size_t n);
  void (*andnot_into)(Word* dst, const Word* a, const Word* b, std::size_t n);
  bool (*any)(const Word* a, std::size_t n);
};

/// Kernels of one specific variant (for equivalence testing).
const KernelTable& kernels(Isa isa);

std::size_t popcount(std::span<const Word> a);
/// popcount(a & b)
std::size_t and_popcount(std::span<const Word> a, std::span<const Word> b);
/// dst = a & b
void and_into(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
/// dst = a & ~b
void andnot_into(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
bool any(std::span<const Word> a);

namespace scalar {
std::size_t popcount(const Word* a, std::size_t n);
std::size_t and_popcount(const Word* a, const Word* b, std::size_t n);
void and_into(Word* dst, const Word* a, const Word* b, std::size_t n);
void andnot_into(Word* dst, const Word* a, const Word* b, std::size_t n);
bool any(const Word* a, std::size_t n);
}  // namespace scalar

}  // namespace rmtail::simd
