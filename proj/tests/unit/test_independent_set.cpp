#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "rmtail/independent_set.hpp"
#include "rmtail/simd/bitset_kernels.hpp"

using namespace rmtail;

namespace {

int brute_force_mis(const Graph& g) {
  const int n = g.size();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (!(mask & (1u << v))) continue;
      for (int u : g.adjacency[static_cast<std::size_t>(v)]) {
        if (mask & (1u << u)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) best = size;
  }
  return best;
}

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  Graph g(n);
  std::bernoulli_distribution edge(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (edge(rng)) g.add_edge(u, v);
    }
  }
  g.finalize();
  return g;
}

}  // namespace

TEST_CASE("classic graphs") {
  Graph empty(7);
  empty.finalize();
  CHECK(max_independent_set(empty).vertices.size() == 7);

  Graph k5(5);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v);
  k5.finalize();
  CHECK(max_independent_set(k5).vertices.size() == 1);

  Graph c5(5);
  for (int v = 0; v < 5; ++v) c5.add_edge(v, (v + 1) % 5);
  c5.finalize();
  CHECK(max_independent_set(c5).vertices.size() == 2);

  // Petersen graph: independence number 4.
  Graph petersen(10);
  for (int v = 0; v < 5; ++v) {
    petersen.add_edge(v, (v + 1) % 5);
    petersen.add_edge(v, v + 5);
    petersen.add_edge(v + 5, (v + 2) % 5 + 5);
  }
  petersen.finalize();
  auto r = max_independent_set(petersen);
  CHECK(r.vertices.size() == 4);
  CHECK(r.exact);
  CHECK(is_independent(petersen, r.vertices));
}

TEST_CASE("matches brute force on random graphs under every kernel variant") {
  const auto original = simd::active_isa();
  for (auto isa : {simd::Isa::scalar, simd::Isa::avx2, simd::Isa::neon}) {
    if (!simd::isa_available(isa)) continue;
    simd::set_active_isa(isa);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
      const int n = 1 + trial % 16;
      const double p = 0.1 + 0.8 * ((trial * 37) % 100) / 100.0;
      const Graph g = random_graph(rng, n, p);
      const auto r = max_independent_set(g);
      CHECK(r.exact);
      CHECK(is_independent(g, r.vertices));
      CHECK(static_cast<int>(r.vertices.size()) == brute_force_mis(g));
    }
  }
  simd::set_active_isa(original);
}

TEST_CASE("larger graphs spanning several bitset words") {
  std::mt19937_64 rng(11);
  const Graph g = random_graph(rng, 150, 0.3);
  const auto r = max_independent_set(g);
  CHECK(r.exact);
  CHECK(is_independent(g, r.vertices));
  CHECK(r.vertices.size() >= greedy_independent_set(g).size());
}

TEST_CASE("budget exhaustion is reported, witness stays valid") {
  std::mt19937_64 rng(3);
  const Graph g = random_graph(rng, 90, 0.15);
  const auto r = max_independent_set(g, 5);
  CHECK_FALSE(r.exact);
  CHECK(is_independent(g, r.vertices));
  CHECK(r.vertices.size() >= 1);
}

TEST_CASE("components") {
  Graph g(6);
  g.add_edge(0, 3);
  g.add_edge(3, 5);
  g.add_edge(1, 4);
  g.finalize();
  const auto comps = connected_components(g);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<int>{0, 3, 5});
  CHECK(comps[1] == std::vector<int>{1, 4});
  CHECK(comps[2] == std::vector<int>{2});
  CHECK(g.edge_count() == 3);
  CHECK(max_independent_set(g).vertices.size() == 4);
}
