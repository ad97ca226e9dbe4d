#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rmtail/outer_code.hpp"

using namespace rmtail;

namespace {

// Brute-force completion over the explicit codeword list.
Completion::Status expected_completion(const std::vector<std::vector<int>>& words, const ErasedWord& w) {
  int matches = 0;
  for (const auto& c : words) {
    bool agree = true;
    for (std::size_t i = 0; i < c.size() && agree; ++i) agree = !w[i] || *w[i] == c[i];
    matches += agree;
  }
  if (matches == 0) return Completion::Status::inconsistent;
  return matches == 1 ? Completion::Status::unique : Completion::Status::ambiguous;
}

std::vector<std::vector<int>> all_words(const OuterCode& code) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(code.size()); ++i) out.push_back(code.encode(i));
  return out;
}

void exercise(const OuterCode& code, int d, std::mt19937_64& rng) {
  CAPTURE(code.describe());
  const auto dist = measured_min_distance(code);
  REQUIRE(dist);
  CHECK(*dist >= d);
  CHECK(code.size() <= outer_upper_bound(code.alphabet(), code.length(), d));
  const auto words = all_words(code);
  for (std::size_t i = 0; i < words.size(); ++i) {
    REQUIRE(code.index_of(words[i]));
    CHECK(*code.index_of(words[i]) == i);
  }
  // Up to d-1 erasures on a codeword always complete uniquely.
  for (int trial = 0; trial < 60; ++trial) {
    const auto& c = words[static_cast<std::size_t>(rng() % words.size())];
    ErasedWord w(c.begin(), c.end());
    const int erase = static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(d, code.length() + 1)));
    for (int k = 0; k < erase; ++k) w[static_cast<std::size_t>(rng() % w.size())] = std::nullopt;
    const auto r = code.complete(w);
    REQUIRE(r.status == Completion::Status::unique);
    CHECK(r.word == c);
  }
  // Arbitrary partial words agree with the brute-force oracle.
  for (int trial = 0; trial < 200; ++trial) {
    ErasedWord w(static_cast<std::size_t>(code.length()));
    for (auto& x : w) {
      if (rng() % 3) x = static_cast<int>(rng() % static_cast<std::uint64_t>(code.alphabet()));
    }
    const auto expected = expected_completion(words, w);
    const auto r = code.complete(w);
    CHECK(r.status == expected);
    if (expected == Completion::Status::unique) CHECK(code.contains(r.word));
  }
}

}  // namespace

TEST_CASE("finite fields") {
  for (int order : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32}) {
    CAPTURE(order);
    auto f = GaloisField::create(order);
    REQUIRE(f);
    for (int a = 0; a < order; ++a) {
      CHECK(f->add(a, f->neg(a)) == 0);
      CHECK(f->mul(a, 1) == a);
      if (a) CHECK(f->mul(a, f->inv(a)) == 1);
      for (int b = 0; b < order; ++b) {
        CHECK(f->add(a, b) == f->add(b, a));
        CHECK(f->mul(a, b) == f->mul(b, a));
        if (order <= 9) {
          for (int c = 0; c < order; ++c) {
            CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            CHECK(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
          }
        }
      }
    }
  }
  CHECK(GaloisField::create(256));
  for (int order : {1, 6, 10, 12, 15, 257}) CHECK_FALSE(GaloisField::create(order));
}

TEST_CASE("linear solve") {
  auto f = *GaloisField::create(5);
  Matrix g{{1, 1, 1, 1}, {0, 1, 2, 3}};
  auto s = solve_left(f, g, {2, 3, 4, 0});
  CHECK(s.status == SolveResult::Status::unique);
  CHECK(s.x == std::vector<int>{2, 1});
  CHECK(solve_left(f, g, {2, 3, 4, 1}).status == SolveResult::Status::inconsistent);
  CHECK(solve_left(f, Matrix{{1}, {2}}, {3}).status == SolveResult::Status::underdetermined);
  auto h = null_space(f, Matrix{{1, 1, 1}});
  CHECK(h.size() == 2);
}

TEST_CASE("factory examples") {
  auto rep = outer_code_factory(2, 3, 3);
  CHECK(rep->size() == 2);
  auto ham = outer_code_factory(2, 7, 3);
  CHECK(ham->size() == 16);
  CHECK(ham->family() == OuterFamily::hamming);
  CHECK(outer_known_optimal(*ham, 3));
  auto rs = outer_code_factory(5, 4, 3);
  CHECK(rs->size() == 25);
  CHECK(rs->family() == OuterFamily::reed_solomon);
  CHECK(outer_code_factory(1, 5, 3)->family() == OuterFamily::trivial);
  CHECK(outer_code_factory(3, 4, 1)->size() == 81);
  CHECK(outer_code_factory(6, 4, 2)->size() == 216);
  CHECK(outer_code_factory(2, 3, 4)->size() == 1);
}

TEST_CASE("unsupported families are refused") {
  CHECK_THROWS_AS(make_outer_code(OuterFamily::reed_solomon, 6, 4, 3), UnsupportedOuterCode);
  CHECK_THROWS_AS(make_outer_code(OuterFamily::reed_solomon, 3, 5, 3), UnsupportedOuterCode);
  CHECK_THROWS_AS(make_outer_code(OuterFamily::parity, 2, 4, 3), UnsupportedOuterCode);
  CHECK_THROWS_AS(make_outer_code(OuterFamily::hamming, 2, 5, 4), UnsupportedOuterCode);
  CHECK_THROWS_AS(make_outer_code(OuterFamily::repetition, 2, 3, 4), UnsupportedOuterCode);
  CHECK_THROWS_AS(make_outer_code(OuterFamily::full, 2, 3, 2), UnsupportedOuterCode);
  CHECK_THROWS_AS(make_outer_code(OuterFamily::search, 2, 13, 3), UnsupportedOuterCode);
  CHECK_THROWS(parse_outer_family("bch"));
  CHECK(parse_outer_family("mds") == OuterFamily::reed_solomon);
}

TEST_CASE("exact search matches known values") {
  CHECK(make_outer_code(OuterFamily::search, 2, 5, 3)->size() == 4);
  CHECK(make_outer_code(OuterFamily::search, 2, 6, 3)->size() == 8);
  CHECK(make_outer_code(OuterFamily::search, 2, 4, 3)->size() == 2);
  CHECK(make_outer_code(OuterFamily::search, 3, 3, 2)->size() == 9);
  CHECK(make_outer_code(OuterFamily::search, 2, 5, 3)->exact());
}

TEST_CASE("every family: distance, indexing and erasure completion") {
  std::mt19937_64 rng(21);
  for (auto family : {OuterFamily::trivial, OuterFamily::full, OuterFamily::repetition, OuterFamily::parity,
                      OuterFamily::reed_solomon, OuterFamily::hamming, OuterFamily::search}) {
    for (int l : {2, 3, 4, 5, 6}) {
      for (int n = 1; n <= 6; ++n) {
        for (int d = 1; d <= n; ++d) {
          if (family == OuterFamily::search && std::pow(l, n) > 64) continue;
          OuterCodePtr code;
          try {
            code = make_outer_code(family, l, n, d);
          } catch (const UnsupportedOuterCode&) {
            continue;
          }
          if (code->size() > 2000) continue;
          exercise(*code, d, rng);
        }
      }
    }
  }
}

TEST_CASE("upper bound") {
  CHECK(outer_upper_bound(2, 7, 3) == 16);
  CHECK(outer_upper_bound(5, 4, 3) == 25);
  CHECK(outer_upper_bound(2, 3, 1) == 8);
  CHECK(outer_upper_bound(2, 3, 4) == 1);
}
