#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "detail/random.hpp"
#include "rmtail/tail_ops.hpp"
#include "rmtail/tensor_codes.hpp"

using namespace rmtail;

namespace {

PartialPartition example_partition() {
  auto code = [](std::initializer_list<const char*> words) {
    std::vector<PartialPermutation> m;
    for (auto w : words) m.push_back(parse_perm(w, 4));
    return TailCode(4, m);
  };
  return PartialPartition(4, {code({"123", "21"}), code({"1", "231", "24", "2"})});
}

BigInt random_message(detail::Rng& rng, const BigInt& bound) {
  BigInt x = 0;
  for (int i = 0; i < 8; ++i) x = (x << 64) + rng();
  return x % bound;
}

}  // namespace

TEST_CASE("vector deletions") {
  const auto u = parse_perm_vector("1345,135", 5);
  CHECK(to_string(apply_vector_deletions(u, {2, 0})) == "45,135");
  CHECK(apply_vector_deletions(u, {0, 0}) == u);
  CHECK(to_string(apply_vector_deletions(parse_perm_vector("41", 4), {3})) == "1");
  CHECK_THROWS(apply_vector_deletions(u, {1}));
}

TEST_CASE("indicator map") {
  const auto r = example_partition();
  CHECK(to_string(lambda_map(parse_perm_vector("123,123,3", 4), r)) == "(0,0,?)");
  CHECK(to_string(lambda_map(parse_perm_vector("123,21,21", 4), r)) == "(0,0,0)");
  CHECK(to_string(lambda_map(parse_perm_vector("321,24,21", 4), r)) == "(?,1,0)");
}

TEST_CASE("membership") {
  const Ttpc code(example_partition(), make_outer_code(OuterFamily::repetition, 2, 2, 2));
  CHECK(code.contains(parse_perm_vector("123,21", 4)));
  CHECK(code.contains(parse_perm_vector("231,2", 4)));
  CHECK_FALSE(code.contains(parse_perm_vector("123,2", 4)));
  CHECK_FALSE(code.contains(parse_perm_vector("123,3", 4)));
  CHECK_FALSE(code.contains(parse_perm_vector("123", 4)));
}

TEST_CASE("partitions") {
  const auto a = TailCode(3, {parse_perm("12", 3)});
  CHECK_THROWS_AS(PartialPartition(3, {a, a}), std::invalid_argument);

  const auto cor = correcting_partition(5, 2);
  CHECK(cor.class_count() == 2);
  CHECK(cor.verify(ErrorModel::deletion, 2, Capability::correct));
  CHECK(cor.min_class_size() == base_size(5, 2));

  for (auto [q, t] : {std::pair{4, 1}, std::pair{5, 2}, std::pair{6, 2}}) {
    const auto det = detecting_partition(q, t);
    CHECK(det.class_count() == t + 1);
    CHECK(det.verify(ErrorModel::deletion, t, Capability::detect));
    std::size_t total = 0;
    for (const auto& c : det.classes()) total += c.size();
    CHECK(total == universe_size(q));
    CHECK(det.min_class_size() == det[t].size());
    CHECK(det[t].size() == base_size(q, t));
  }
}

TEST_CASE("census: size bound against full enumeration") {
  const int q = 4;
  const auto r = correcting_partition(q, 2);
  const auto universe = enumerate_universe(q);
  for (auto family : {OuterFamily::full, OuterFamily::parity, OuterFamily::trivial}) {
    const Ttpc code(r, make_outer_code(family, 2, 2, 1));
    std::uint64_t members = 0;
    for (const auto& x : universe) {
      for (const auto& y : universe) members += code.contains({x, y});
    }
    const BigInt a = r.min_class_size();
    CHECK(BigInt(members) >= a * a * code.outer().size());
    BigInt exact = 0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(code.outer().size()); ++i) {
      const auto w = code.outer().encode(i);
      exact += BigInt(r[w[0]].size()) * r[w[1]].size();
    }
    CHECK(BigInt(members) == exact);
  }
}

TEST_CASE("encode and decode round trip without noise") {
  const auto code = correcting_ttpc(6, 2, 7, 1);
  CHECK(code.outer().size() == 16);
  const auto zero = code.encode(0);
  const auto first_word = code.outer().encode(0);
  for (int i = 0; i < 7; ++i) CHECK(zero[static_cast<std::size_t>(i)] == code.partition()[first_word[static_cast<std::size_t>(i)]].members()[0]);
  CHECK_THROWS_AS(code.encode(code.message_space()), std::out_of_range);

  detail::Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_message(rng, code.message_space());
    const auto c = code.encode(m);
    REQUIRE(code.contains(c));
    CHECK(code.message_of(c) == m);
    const auto r = code.decode(c, 1);
    REQUIRE(r.codeword);
    CHECK(*r.codeword == c);
  }
}

TEST_CASE("single-coordinate deletions are corrected") {
  const auto code = correcting_ttpc(6, 2, 4, 1);
  CHECK(code.outer().distance() >= 3);
  detail::Rng rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = code.encode(random_message(rng, code.message_space()));
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k <= 2; ++k) {
        std::vector<int> pattern(4, 0);
        pattern[static_cast<std::size_t>(i)] = k;
        const auto r = code.decode(apply_vector_deletions(c, pattern), 1);
        REQUIRE(r.codeword);
        CHECK(*r.codeword == c);
        CHECK(r.erasures == (k > 0));
      }
    }
  }
}

TEST_CASE("beyond the design: failure, never a wrong codeword") {
  const auto code = correcting_ttpc(6, 2, 7, 1);
  detail::Rng rng(15);
  int failures = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = code.encode(random_message(rng, code.message_space()));
    std::vector<int> pattern(7, 0);
    for (int hit : detail::sample_without_replacement(rng, 7, 2)) pattern[static_cast<std::size_t>(hit)] = 1 + static_cast<int>(rng() % 2);
    const auto r = code.decode(apply_vector_deletions(c, pattern), 1);
    if (r.codeword) {
      CHECK(*r.codeword == c);
    } else {
      ++failures;
    }
  }
  CHECK(failures == 2000);
  // Words in no ball fail cleanly.
  auto noisy = code.encode(0);
  noisy[0] = parse_perm("561", 6);
  CHECK(code.decode(noisy, 1).status == TtpcDecodeResult::Status::outside_balls);
  // A short word whose surviving prefix contradicts the filled label.
  noisy[0] = parse_perm("65", 6);
  CHECK(code.decode(noisy, 1).status == TtpcDecodeResult::Status::inner_mismatch);
}

TEST_CASE("decode preconditions") {
  const auto code = correcting_ttpc(5, 2, 3, 1);
  CHECK_THROWS(code.decode(code.encode(0), 2));
  const auto det = detecting_ttpc(4, 1, 4, 1);
  CHECK_THROWS(det.decode(det.encode(0), 0));
}

TEST_CASE("detecting tensor code flags every single-coordinate deletion") {
  const auto code = detecting_ttpc(4, 1, 4, 1);
  CHECK(code.outer().distance() == 2);
  detail::Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = code.encode(random_message(rng, code.message_space()));
    CHECK(code.detect(c));
    for (int i = 0; i < 4; ++i) {
      std::vector<int> pattern(4, 0);
      pattern[static_cast<std::size_t>(i)] = 1;
      const auto r = apply_vector_deletions(c, pattern);
      if (r == c) continue;  // saturated length-1 coordinate
      CHECK_FALSE(code.detect(r));
    }
  }
}

TEST_CASE("size bounds") {
  const auto b = ttpc_size_bounds(6, 2, 7, 1);
  CHECK(b.cor_inner == 366);
  CHECK(b.cor_outer_size == 16);
  CHECK(b.cor_formula == boost::multiprecision::pow(BigInt(366), 7) * 16);
  CHECK(b.cor_formula_constructive);

  const auto d = ttpc_size_bounds(4, 1, 3, 1);
  CHECK(d.cor_outer_size == 1);
  CHECK(d.cor_formula == BigInt(28) * 28 * 28);

  const auto z = ttpc_size_bounds(5, 2, 3, 0);
  CHECK(z.cor_formula == boost::multiprecision::pow(BigInt(65 * 2), 3));
  CHECK_FALSE(z.cor_formula_constructive);
  CHECK(z.cor_constructive == boost::multiprecision::pow(BigInt(60 * 2), 3));
  CHECK(z.det_bound == boost::multiprecision::pow(BigInt(60 * 3), 3));
}
