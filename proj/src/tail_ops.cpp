#include "rmtail/tail_ops.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace rmtail {
namespace {

void sort_unique(std::vector<PartialPermutation>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_radius(int t) {
  if (t < 0) throw std::invalid_argument("radius must be non-negative");
}

std::vector<Symbol> unused_symbols(const PartialPermutation& pi) {
  std::vector<Symbol> out;
  const std::uint32_t used = pi.symbol_mask();
  for (int s = 0; s < pi.alphabet_size(); ++s) {
    if (!(used & (1u << s))) out.push_back(static_cast<Symbol>(s));
  }
  return out;
}

// Arrangements of length t drawn from `pool` (sorted), in lexicographic order.
void for_each_arrangement(const std::vector<Symbol>& pool, int t, auto&& visit) {
  std::array<Symbol, kMaxAlphabet> buf{};
  std::vector<bool> taken(pool.size(), false);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == t) {
      visit(std::span<const Symbol>(buf.data(), static_cast<std::size_t>(t)));
      return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      taken[i] = true;
      buf[static_cast<std::size_t>(depth)] = pool[i];
      self(self, depth + 1);
      taken[i] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::string_view to_string(ErrorModel model) {
  switch (model) {
    case ErrorModel::deletion: return "del";
    case ErrorModel::insertion: return "ins";
    case ErrorModel::indel: return "indel";
  }
  return "?";
}

ErrorModel parse_error_model(std::string_view text) {
  if (text == "del" || text == "deletion") return ErrorModel::deletion;
  if (text == "ins" || text == "insertion") return ErrorModel::insertion;
  if (text == "indel") return ErrorModel::indel;
  throw std::invalid_argument("unknown error model '" + std::string(text) + "'");
}

PartialPermutation delete_tail(const PartialPermutation& pi, int j) {
  check_radius(j);
  const int k = std::min(j, pi.size() - 1);
  return k == 0 ? pi : pi.suffix_from(k);
}

std::vector<PartialPermutation> deletion_ball(const PartialPermutation& pi, int t) {
  check_radius(t);
  std::vector<PartialPermutation> out;
  const int reach = std::min(t, pi.size() - 1);
  out.reserve(static_cast<std::size_t>(reach) + 1);
  for (int k = 0; k <= reach; ++k) out.push_back(pi.suffix_from(k));
  sort_unique(out);
  return out;
}

std::uint64_t sphere_size(int q, int length, int t) {
  if (length < 1 || length > q) throw std::invalid_argument("length outside [1, q]");
  check_radius(t);
  if (t > q - length) return 0;
  return binomial(q - length, t) * factorial(t);
}

std::vector<PartialPermutation> insertion_sphere(const PartialPermutation& pi, int t) {
  check_radius(t);
  std::vector<PartialPermutation> out;
  if (t > pi.alphabet_size() - pi.size()) return out;
  out.reserve(sphere_size(pi.alphabet_size(), pi.size(), t));
  for_each_arrangement(unused_symbols(pi), t, [&](std::span<const Symbol> w) { out.push_back(pi.prepend(w)); });
  return out;
}

PartialPermutation sphere_element(const PartialPermutation& pi, int t, std::uint64_t index) {
  check_radius(t);
  const int free_count = pi.alphabet_size() - pi.size();
  if (t > free_count || index >= sphere_size(pi.alphabet_size(), pi.size(), t)) {
    throw std::out_of_range("sphere index " + std::to_string(index) + " out of range");
  }
  // Unrank a length-t arrangement of the unused symbols.
  std::uint32_t pool = ((1u << pi.alphabet_size()) - 1) & ~pi.symbol_mask();
  std::array<Symbol, kMaxAlphabet> prefix{};
  for (int i = 0; i < t; ++i) {
    const std::uint64_t block = falling_factorial(free_count - i - 1, t - i - 1);
    auto digit = static_cast<int>(index / block);
    index %= block;
    std::uint32_t f = pool;
    while (digit-- > 0) f &= f - 1;
    const auto s = static_cast<Symbol>(std::countr_zero(f));
    prefix[static_cast<std::size_t>(i)] = s;
    pool &= ~(1u << s);
  }
  return pi.prepend(std::span<const Symbol>(prefix.data(), static_cast<std::size_t>(t)));
}

std::uint64_t sphere_index(const PartialPermutation& word, int t) {
  if (t < 0 || t >= word.size()) throw std::invalid_argument("prefix length must be in [0, |word|)");
  const int q = word.alphabet_size();
  const int free_count = q - (word.size() - t);
  std::uint32_t pool = (1u << q) - 1;
  for (int i = t; i < word.size(); ++i) pool &= ~(1u << word[i]);
  std::uint64_t index = 0;
  for (int i = 0; i < t; ++i) {
    const Symbol s = word[i];
    const auto smaller = static_cast<std::uint64_t>(std::popcount(pool & ((1u << s) - 1)));
    index += smaller * falling_factorial(free_count - i - 1, t - i - 1);
    pool &= ~(1u << s);
  }
  return index;
}

std::vector<PartialPermutation> insertion_ball(const PartialPermutation& pi, int t) {
  check_radius(t);
  std::vector<PartialPermutation> out;
  for (int r = 0; r <= t; ++r) {
    auto shell = insertion_sphere(pi, r);
    if (shell.empty()) break;
    out.insert(out.end(), shell.begin(), shell.end());
  }
  sort_unique(out);
  return out;
}

namespace {

// Breadth-first layers of the indel graph around pi, up to depth t.
std::vector<std::vector<PartialPermutation>> indel_layers(const PartialPermutation& pi, int t) {
  check_radius(t);
  std::unordered_set<PartialPermutation, PermHash> seen{pi};
  std::vector<std::vector<PartialPermutation>> layers{{pi}};
  for (int depth = 1; depth <= t; ++depth) {
    std::vector<PartialPermutation> next;
    for (const auto& w : layers.back()) {
      if (w.size() > 1) {
        auto d = w.suffix_from(1);
        if (seen.insert(d).second) next.push_back(d);
      }
      if (w.size() < w.alphabet_size()) {
        const std::uint32_t used = w.symbol_mask();
        for (int s = 0; s < w.alphabet_size(); ++s) {
          if (used & (1u << s)) continue;
          const Symbol sym = static_cast<Symbol>(s);
          auto ins = w.prepend(std::span<const Symbol>(&sym, 1));
          if (seen.insert(ins).second) next.push_back(ins);
        }
      }
    }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  return layers;
}

}  // namespace

std::vector<PartialPermutation> indel_ball(const PartialPermutation& pi, int t) {
  std::vector<PartialPermutation> out;
  for (auto& layer : indel_layers(pi, t)) out.insert(out.end(), layer.begin(), layer.end());
  sort_unique(out);
  return out;
}

std::vector<PartialPermutation> indel_shell(const PartialPermutation& pi, int radius) {
  auto layers = indel_layers(pi, radius);
  if (static_cast<int>(layers.size()) <= radius) return {};
  auto out = std::move(layers[static_cast<std::size_t>(radius)]);
  sort_unique(out);
  return out;
}

std::vector<PartialPermutation> ball(const PartialPermutation& pi, ErrorModel model, int t) {
  switch (model) {
    case ErrorModel::deletion: return deletion_ball(pi, t);
    case ErrorModel::insertion: return insertion_ball(pi, t);
    case ErrorModel::indel: return indel_ball(pi, t);
  }
  throw std::invalid_argument("unknown error model");
}

}  // namespace rmtail
