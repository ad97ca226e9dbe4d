#include "rmtail/independent_set.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

#include "rmtail/simd/bitset_kernels.hpp"

namespace rmtail {

void Graph::add_edge(int u, int v) {
  if (u == v) return;
  adjacency[static_cast<std::size_t>(u)].push_back(v);
  adjacency[static_cast<std::size_t>(v)].push_back(u);
}

void Graph::finalize() {
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency) total += list.size();
  return total / 2;
}

bool is_independent(const Graph& graph, const std::vector<int>& vertices) {
  std::vector<char> in(static_cast<std::size_t>(graph.size()), 0);
  for (int v : vertices) in[static_cast<std::size_t>(v)] = 1;
  for (int v : vertices) {
    for (int u : graph.adjacency[static_cast<std::size_t>(v)]) {
      if (in[static_cast<std::size_t>(u)]) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> connected_components(const Graph& graph) {
  const auto n = static_cast<std::size_t>(graph.size());
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> comp{static_cast<int>(start)};
    seen[start] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int u : graph.adjacency[static_cast<std::size_t>(comp[head])]) {
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<int> greedy_independent_set(const Graph& graph) {
  const auto n = static_cast<std::size_t>(graph.size());
  std::vector<int> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = static_cast<int>(graph.adjacency[v].size());
  std::vector<char> removed(n, 0);
  // (degree, vertex) min-heap with lazy invalidation.
  using Entry = std::pair<int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t v = 0; v < n; ++v) heap.emplace(degree[v], static_cast<int>(v));
  std::vector<int> chosen;
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    const auto vi = static_cast<std::size_t>(v);
    if (removed[vi] || d != degree[vi]) continue;
    chosen.push_back(v);
    removed[vi] = 1;
    for (int u : graph.adjacency[vi]) {
      const auto ui = static_cast<std::size_t>(u);
      if (removed[ui]) continue;
      removed[ui] = 1;
      for (int w : graph.adjacency[ui]) {
        const auto wi = static_cast<std::size_t>(w);
        if (!removed[wi]) heap.emplace(--degree[wi], w);
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

using simd::Word;

// Maximum clique in the complement of one component (bitset branch and bound).
class CliqueSearch {
 public:
  CliqueSearch(const Graph& graph, const std::vector<int>& component, std::uint64_t budget)
      : budget_(budget) {
    const auto n = component.size();
    words_ = (n + 63) / 64;

    // Order: ascending conflict degree (= descending complement degree), ties by index.
    order_ = component;
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return graph.adjacency[static_cast<std::size_t>(a)].size() < graph.adjacency[static_cast<std::size_t>(b)].size();
    });
    std::vector<int> local(static_cast<std::size_t>(graph.size()), -1);
    for (std::size_t i = 0; i < n; ++i) local[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);

    // Complement neighbourhoods: everything except self and conflicting vertices.
    compat_.assign(n * words_, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Word* row = &compat_[i * words_];
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) row[j / 64] |= Word{1} << (j % 64);
      }
      for (int u : graph.adjacency[static_cast<std::size_t>(order_[i])]) {
        const int lu = local[static_cast<std::size_t>(u)];
        if (lu >= 0) row[static_cast<std::size_t>(lu) / 64] &= ~(Word{1} << (static_cast<std::size_t>(lu) % 64));
      }
    }

    // Seed the incumbent with a greedy solution restricted to this component.
    Graph sub(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (int u : graph.adjacency[static_cast<std::size_t>(order_[i])]) {
        const int lu = local[static_cast<std::size_t>(u)];
        if (lu > static_cast<int>(i)) sub.add_edge(static_cast<int>(i), lu);
      }
    }
    sub.finalize();
    best_ = greedy_independent_set(sub);
  }

  void run() {
    const std::size_t n = order_.size();
    std::vector<Word> all(words_, 0);
    for (std::size_t j = 0; j < n; ++j) all[j / 64] |= Word{1} << (j % 64);
    std::vector<int> current;
    expand(current, all);
  }

  std::vector<int> solution() const {
    std::vector<int> out;
    out.reserve(best_.size());
    for (int v : best_) out.push_back(order_[static_cast<std::size_t>(v)]);
    std::sort(out.begin(), out.end());
    return out;
  }
  bool exact() const { return !exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::span<const Word> row(int v) const { return {&compat_[static_cast<std::size_t>(v) * words_], words_}; }

  static int lowest(std::span<const Word> set) {
    for (std::size_t w = 0; w < set.size(); ++w) {
      if (set[w]) return static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(set[w])));
    }
    return -1;
  }
  static void clear(std::span<Word> set, int v) {
    set[static_cast<std::size_t>(v) / 64] &= ~(Word{1} << (static_cast<std::size_t>(v) % 64));
  }

  void expand(std::vector<int>& current, std::vector<Word> candidates) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    // Greedy sequential colouring of the candidates.
    std::vector<int> vertex;
    std::vector<int> color;
    std::vector<Word> uncolored = candidates;
    std::vector<Word> pool(words_);
    for (int k = 1; simd::any(uncolored); ++k) {
      pool = uncolored;
      for (int v = lowest(pool); v >= 0; v = lowest(pool)) {
        clear(pool, v);
        clear(uncolored, v);
        simd::andnot_into(pool, pool, row(v));
        vertex.push_back(v);
        color.push_back(k);
      }
    }

    std::vector<Word> next(words_);
    for (std::size_t i = vertex.size(); i-- > 0;) {
      if (current.size() + static_cast<std::size_t>(color[i]) <= best_.size()) return;
      const int v = vertex[i];
      current.push_back(v);
      simd::and_into(next, candidates, row(v));
      if (!simd::any(next)) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
        if (exhausted_) return;
      }
      current.pop_back();
      clear(candidates, v);
    }
  }

  std::uint64_t budget_;
  std::size_t words_ = 0;
  std::vector<int> order_;
  std::vector<Word> compat_;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

IndependentSet max_independent_set(const Graph& graph, std::uint64_t node_budget) {
  IndependentSet out;
  for (const auto& comp : connected_components(graph)) {
    if (comp.size() == 1) {
      out.vertices.push_back(comp.front());
      continue;
    }
    const std::uint64_t remaining = node_budget > out.nodes ? node_budget - out.nodes : 0;
    CliqueSearch search(graph, comp, remaining);
    search.run();
    out.nodes += search.nodes();
    out.exact = out.exact && search.exact();
    auto part = search.solution();
    out.vertices.insert(out.vertices.end(), part.begin(), part.end());
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

}  // namespace rmtail
