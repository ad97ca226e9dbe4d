#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "rmtail/simd/bitset_kernels.hpp"

#if defined(RMTAIL_HAVE_AVX2)
namespace rmtail::simd::avx2 {
std::size_t popcount(const Word* a, std::size_t n);
std::size_t and_popcount(const Word* a, const Word* b, std::size_t n);
void and_into(Word* dst, const Word* a, const Word* b, std::size_t n);
void andnot_into(Word* dst, const Word* a, const Word* b, std::size_t n);
bool any(const Word* a, std::size_t n);
}  // namespace rmtail::simd::avx2
#endif

#if defined(RMTAIL_HAVE_NEON)
namespace rmtail::simd::neon {
std::size_t popcount(const Word* a, std::size_t n);
std::size_t and_popcount(const Word* a, const Word* b, std::size_t n);
void and_into(Word* dst, const Word* a, const Word* b, std::size_t n);
void andnot_into(Word* dst, const Word* a, const Word* b, std::size_t n);
bool any(const Word* a, std::size_t n);
}  // namespace rmtail::simd::neon
#endif

namespace rmtail::simd {
namespace {

constexpr KernelTable kScalar{scalar::popcount, scalar::and_popcount, scalar::and_into, scalar::andnot_into,
                              scalar::any};
#if defined(RMTAIL_HAVE_AVX2)
constexpr KernelTable kAvx2{avx2::popcount, avx2::and_popcount, avx2::and_into, avx2::andnot_into, avx2::any};
#endif
#if defined(RMTAIL_HAVE_NEON)
constexpr KernelTable kNeon{neon::popcount, neon::and_popcount, neon::and_into, neon::andnot_into, neon::any};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(RMTAIL_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(RMTAIL_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect() {
  if (const char* force = std::getenv("RMTAIL_FORCE_SCALAR"); force && std::strcmp(force, "0") != 0) {
    return Isa::scalar;
  }
  if (cpu_supports(Isa::avx2)) return Isa::avx2;
  if (cpu_supports(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

struct State {
  Isa isa;
  const KernelTable* table;
};

State& state() {
  static State s = [] {
    const Isa isa = detect();
    return State{isa, &kernels(isa)};
  }();
  return s;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) { return cpu_supports(isa); }

const KernelTable& kernels(Isa isa) {
  if (!cpu_supports(isa)) throw std::runtime_error("kernel variant not available: " + std::string(to_string(isa)));
  switch (isa) {
#if defined(RMTAIL_HAVE_AVX2)
    case Isa::avx2: return kAvx2;
#endif
#if defined(RMTAIL_HAVE_NEON)
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

Isa active_isa() { return state().isa; }

void set_active_isa(Isa isa) {
  const KernelTable& table = kernels(isa);
  state() = State{isa, &table};
}

std::size_t popcount(std::span<const Word> a) { return state().table->popcount(a.data(), a.size()); }

std::size_t and_popcount(std::span<const Word> a, std::span<const Word> b) {
  return state().table->and_popcount(a.data(), b.data(), a.size());
}

void and_into(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  state().table->and_into(dst.data(), a.data(), b.data(), dst.size());
}

void andnot_into(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  state().table->andnot_into(dst.data(), a.data(), b.data(), dst.size());
}

bool any(std::span<const Word> a) { return state().table->any(a.data(), a.size()); }

}  // namespace rmtail::simd
