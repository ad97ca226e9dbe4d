#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "rmtail/simd/bitset_kernels.hpp"

using namespace rmtail::simd;

namespace {

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n, int density) {
  std::vector<Word> v(n);
  for (auto& w : v) {
    w = rng();
    for (int i = 0; i < density; ++i) w &= rng();
  }
  return v;
}

}  // namespace

TEST_CASE("every available variant agrees with the scalar reference") {
  std::mt19937_64 rng(20240611);
  const auto& ref = kernels(Isa::scalar);
  for (Isa isa : available()) {
    CAPTURE(to_string(isa));
    const auto& k = kernels(isa);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 64u, 67u}) {
      for (int density = 0; density < 4; ++density) {
        const auto a = random_words(rng, n, density);
        const auto b = random_words(rng, n, density);
        CHECK(k.popcount(a.data(), n) == ref.popcount(a.data(), n));
        CHECK(k.and_popcount(a.data(), b.data(), n) == ref.and_popcount(a.data(), b.data(), n));
        std::vector<Word> d1(n), d2(n);
        k.and_into(d1.data(), a.data(), b.data(), n);
        ref.and_into(d2.data(), a.data(), b.data(), n);
        CHECK(d1 == d2);
        k.andnot_into(d1.data(), a.data(), b.data(), n);
        ref.andnot_into(d2.data(), a.data(), b.data(), n);
        CHECK(d1 == d2);
        CHECK(k.any(a.data(), n) == ref.any(a.data(), n));
      }
    }
    // any() on a single set bit in the last word.
    std::vector<Word> sparse(9, 0);
    CHECK_FALSE(k.any(sparse.data(), sparse.size()));
    sparse.back() = Word{1} << 63;
    CHECK(k.any(sparse.data(), sparse.size()));
    CHECK(k.popcount(sparse.data(), sparse.size()) == 1);
  }
}

TEST_CASE("in-place aliasing is allowed") {
  for (Isa isa : available()) {
    const auto& k = kernels(isa);
    std::vector<Word> a{~Word{0}, 0xF0F0, 7, 9, 11};
    const std::vector<Word> b{0xFF, 0xFF, 0xFF, 0xFF, 0xFF};
    k.andnot_into(a.data(), a.data(), b.data(), a.size());
    CHECK(a == std::vector<Word>{~Word{0xFF}, 0xF000, 0, 0, 0});
  }
}

TEST_CASE("dispatch can be switched between variants") {
  const Isa original = active_isa();
  std::vector<Word> a{0b1011, 0b1};
  std::vector<Word> b{0b0011, 0b1};
  for (Isa isa : available()) {
    set_active_isa(isa);
    CHECK(active_isa() == isa);
    CHECK(and_popcount(a, b) == 3);
    CHECK(popcount(a) == 4);
  }
  set_active_isa(original);
  if (!isa_available(Isa::neon)) CHECK_THROWS(set_active_isa(Isa::neon));
}
