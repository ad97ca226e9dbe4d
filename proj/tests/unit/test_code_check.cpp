#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rmtail/code_check.hpp"

using namespace rmtail;
using enum ErrorModel;

namespace {

TailCode code_of(int q, std::initializer_list<const char*> words) {
  std::vector<PartialPermutation> m;
  for (auto w : words) m.push_back(parse_perm(w, q));
  return TailCode(q, m);
}

// Largest subset passing the predicate, by exhaustive subset enumeration.
std::size_t brute_force_max(const BallTable& table, Capability cap) {
  const auto n = static_cast<int>(table.universe());
  std::size_t best = 0;
  std::vector<int> code;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    code.clear();
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) code.push_back(v);
    if (cap == Capability::detect ? table.detecting(code) : table.correcting(code)) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("TailCode basics") {
  auto c = code_of(4, {"23", "43", "23"});
  CHECK(c.size() == 2);
  CHECK(c.contains(parse_perm("43", 4)));
  CHECK_FALSE(c.contains(parse_perm("3", 4)));
  CHECK(c.index_of(parse_perm("43", 4)) == 1u);
  CHECK_THROWS_AS(TailCode(4, {parse_perm("12", 3)}), PermError);
}

TEST_CASE("detecting predicate examples") {
  auto c = code_of(3, {"12", "32"});
  CHECK(is_detecting(c, deletion, 1).ok);
  CHECK(is_detecting(c, deletion, 5).ok);
  auto r = is_detecting(c, indel, 2);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.witness);
  std::set<std::string> pair{to_string(r.witness->first), to_string(r.witness->second)};
  CHECK(pair == std::set<std::string>{"12", "32"});
}

TEST_CASE("correcting predicate examples") {
  auto c = code_of(4, {"23", "43"});
  CHECK(is_correcting(c, insertion, 1).ok);
  auto r = is_correcting(c, deletion, 1);
  REQUIRE_FALSE(r.ok);
  CHECK(to_string(*r.witness->common) == "3");
  auto single = code_of(5, {"2413"});
  for (auto model : {deletion, insertion, indel}) {
    CHECK(is_correcting(single, model, 3).ok);
    CHECK(is_detecting(single, model, 3).ok);
  }
}

TEST_CASE("separating fixtures") {
  for (const auto& f : separating_fixtures()) {
    CAPTURE(f.name);
    CAPTURE(f.detail);
    CHECK(f.passed);
  }
  auto pair = find_del_not_indel_pair(3, 1);
  REQUIRE(pair);
  CHECK(is_correcting(*pair, deletion, 1).ok);
  CHECK_FALSE(is_correcting(*pair, indel, 1).ok);
}

TEST_CASE("pairwise reformulation: predicates agree with the conflict graph") {
  std::mt19937_64 rng(99);
  for (int q = 2; q <= 4; ++q) {
    const auto universe = enumerate_universe(q);
    for (auto model : {deletion, insertion, indel}) {
      for (int t = 1; t <= 2; ++t) {
        for (auto cap : {Capability::detect, Capability::correct}) {
          const Graph g = build_conflict_graph(q, model, t, cap);
          // Every pair.
          for (std::size_t i = 0; i < universe.size(); ++i) {
            for (std::size_t j = i + 1; j < universe.size(); ++j) {
              TailCode pair(q, {universe[i], universe[j]});
              const bool ok = check_capability(pair, {model, t, cap}).ok;
              const auto& adj = g.adjacency[i];
              const bool edge = std::binary_search(adj.begin(), adj.end(), static_cast<int>(j));
              CHECK(ok == !edge);
            }
          }
          // Random larger subsets.
          for (int trial = 0; trial < 40; ++trial) {
            std::vector<int> idx;
            std::vector<PartialPermutation> members;
            for (std::size_t v = 0; v < universe.size(); ++v) {
              if (rng() % 4 == 0) {
                idx.push_back(static_cast<int>(v));
                members.push_back(universe[v]);
              }
            }
            const bool ok = check_capability(TailCode(q, members), {model, t, cap}).ok;
            CHECK(ok == is_independent(g, idx));
          }
        }
      }
    }
  }
}

TEST_CASE("monotonicity and correct => detect") {
  std::mt19937_64 rng(5);
  const int q = 4;
  const auto universe = enumerate_universe(q);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PartialPermutation> members;
    for (const auto& p : universe)
      if (rng() % 6 == 0) members.push_back(p);
    const TailCode code(q, members);
    for (auto model : {deletion, insertion, indel}) {
      for (int t = 1; t <= 2; ++t) {
        const bool det = is_detecting(code, model, t).ok;
        const bool cor = is_correcting(code, model, t).ok;
        if (model != indel && cor) CHECK(det);
        if (!code.empty()) {
          std::vector<PartialPermutation> sub(members.begin() + 1, members.end());
          const TailCode smaller(q, sub);
          if (det) CHECK(is_detecting(smaller, model, t).ok);
          if (cor) CHECK(is_correcting(smaller, model, t).ok);
        }
      }
    }
  }
}

TEST_CASE("indexed predicates agree with the direct ones") {
  std::mt19937_64 rng(12);
  const int q = 4;
  const auto universe = enumerate_universe(q);
  for (auto model : {deletion, insertion, indel}) {
    for (int t = 0; t <= 3; ++t) {
      const BallTable table(q, model, t);
      for (int trial = 0; trial < 60; ++trial) {
        std::vector<int> idx;
        std::vector<PartialPermutation> members;
        for (std::size_t v = 0; v < universe.size(); ++v) {
          if (rng() % 8 == 0) {
            idx.push_back(static_cast<int>(v));
            members.push_back(universe[v]);
          }
        }
        const TailCode code(q, members);
        CHECK(table.detecting(idx) == is_detecting(code, model, t).ok);
        CHECK(table.correcting(idx) == is_correcting(code, model, t).ok);
      }
    }
  }
}

TEST_CASE("oracle examples") {
  auto det = max_code_oracle(3, 1, deletion, Capability::detect);
  CHECK(det.exact);
  CHECK(det.size == 9);
  CHECK(is_detecting(det.witness, deletion, 1).ok);
  CHECK(max_code_oracle(4, 1, deletion, Capability::correct).size == 28);
  CHECK(max_code_oracle(2, 1, deletion, Capability::detect).size == 2);
  auto cor = max_code_oracle(4, 2, indel, Capability::correct);
  CHECK(cor.exact);
  CHECK(is_correcting(cor.witness, indel, 2).ok);
}

TEST_CASE("oracle agrees with exhaustive subset search at q=3") {
  for (auto model : {deletion, insertion, indel}) {
    for (int t = 1; t <= 2; ++t) {
      const BallTable table(3, model, t);
      for (auto cap : {Capability::detect, Capability::correct}) {
        CAPTURE(to_string(model));
        CAPTURE(t);
        CHECK(max_code_oracle(3, t, model, cap).size == brute_force_max(table, cap));
      }
    }
  }
}

TEST_CASE("size chain between error models") {
  for (int q = 2; q <= 4; ++q) {
    for (int t = 1; t <= 2 && t < q; ++t) {
      auto size = [&](ErrorModel m, int r, Capability c) { return max_code_oracle(q, r, m, c).size; };
      const auto del_det = size(deletion, t, Capability::detect);
      CHECK(size(indel, t, Capability::detect) <= del_det);
      CHECK(size(insertion, t, Capability::detect) == del_det);
      CHECK(size(insertion, t, Capability::correct) == del_det);
      const auto del_cor = size(deletion, t, Capability::correct);
      CHECK(del_cor <= size(insertion, t, Capability::correct));
      const auto indel_cor = size(indel, t, Capability::correct);
      CHECK(size(deletion, 2 * t, Capability::correct) <= indel_cor);
      CHECK(indel_cor <= del_cor);
    }
  }
}

TEST_CASE("equivalence suite finds no violations") {
  for (int q = 2; q <= 4; ++q) {
    for (int t = 1; t <= 2 && t < q; ++t) {
      const auto report = equivalence_suite(q, t, 400, 17 + q * 10 + t);
      for (const auto& tally : report.implications) {
        CAPTURE(tally.name);
        CHECK(tally.violations == 0);
        CHECK(tally.checked > 0);
      }
      CHECK(report.passed());
    }
  }
  CHECK_THROWS(equivalence_suite(7, 1, 1, 0));
}
