#include "rmtail/perm.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <string>

namespace rmtail {
namespace {

void check_alphabet(int q) {
  if (q < 1 || q > kMaxAlphabet) {
    throw PermError("alphabet size must be in [1, " + std::to_string(kMaxAlphabet) + "], got " +
                    std::to_string(q));
  }
}

void check_formula_alphabet(int q) {
  if (q < 0 || q > kMaxFormulaAlphabet) {
    throw PermError("alphabet size out of range for exact counting: " + std::to_string(q));
  }
}

template <typename T>
void validate_symbols(std::span<const T> symbols, int q) {
  check_alphabet(q);
  if (symbols.empty()) throw PermError("partial permutation must be non-empty");
  if (static_cast<int>(symbols.size()) > q) throw PermError("partial permutation longer than alphabet");
  std::uint32_t seen = 0;
  for (T raw : symbols) {
    const int s = static_cast<int>(raw);
    if (s < 0 || s >= q) {
      throw PermError("symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(q));
    }
    if (seen & (1u << s)) throw PermError("duplicate symbol " + std::to_string(s));
    seen |= 1u << s;
  }
}

}  // namespace

PartialPermutation::PartialPermutation(std::span<const int> symbols, int q) {
  validate_symbols(symbols, q);
  size_ = static_cast<std::uint8_t>(symbols.size());
  std::transform(symbols.begin(), symbols.end(), symbols_.begin(),
                 [](int s) { return static_cast<Symbol>(s); });
  finish(q);
}

PartialPermutation::PartialPermutation(std::span<const Symbol> symbols, int q) {
  validate_symbols(symbols, q);
  size_ = static_cast<std::uint8_t>(symbols.size());
  std::copy(symbols.begin(), symbols.end(), symbols_.begin());
  finish(q);
}

void PartialPermutation::finish(int q) {
  q_ = static_cast<std::uint8_t>(q);
  key_ = 0;
  for (int i = 0; i < size_; ++i) key_ = (key_ << 4) | (symbols_[static_cast<std::size_t>(i)] + 1u);
}

bool PartialPermutation::contains(Symbol s) const {
  return std::find(symbols_.begin(), symbols_.begin() + size_, s) != symbols_.begin() + size_;
}

std::uint32_t PartialPermutation::symbol_mask() const {
  std::uint32_t mask = 0;
  for (int i = 0; i < size_; ++i) mask |= 1u << symbols_[static_cast<std::size_t>(i)];
  return mask;
}

PartialPermutation PartialPermutation::suffix_from(int count) const {
  PartialPermutation out;
  out.size_ = static_cast<std::uint8_t>(size_ - count);
  std::copy(symbols_.begin() + count, symbols_.begin() + size_, out.symbols_.begin());
  out.finish(q_);
  return out;
}

PartialPermutation PartialPermutation::prepend(std::span<const Symbol> prefix) const {
  PartialPermutation out;
  out.size_ = static_cast<std::uint8_t>(size_ + prefix.size());
  auto it = std::copy(prefix.begin(), prefix.end(), out.symbols_.begin());
  std::copy(symbols_.begin(), symbols_.begin() + size_, it);
  out.finish(q_);
  return out;
}

std::strong_ordering operator<=>(const PartialPermutation& a, const PartialPermutation& b) {
  auto sa = a.symbols();
  auto sb = b.symbols();
  auto cmp = std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
  if (cmp != 0) return cmp;
  return a.q_ <=> b.q_;
}

PartialPermutation make_perm(std::span<const int> symbols, int q) { return PartialPermutation(symbols, q); }

std::uint64_t falling_factorial(int q, int m) {
  check_formula_alphabet(q);
  if (m < 0 || m > q) return 0;
  std::uint64_t out = 1;
  for (int i = 0; i < m; ++i) out *= static_cast<std::uint64_t>(q - i);
  return out;
}

std::uint64_t factorial(int n) { return falling_factorial(n, n); }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

std::uint64_t universe_size(int q) {
  check_formula_alphabet(q);
  if (q < 1) throw PermError("alphabet size must be positive");
  // q!/i! for i = 0..q-1 equals the falling factorial of length q - i.
  std::uint64_t total = 0;
  for (int i = 0; i < q; ++i) total += falling_factorial(q, q - i);
  return total;
}

std::vector<PartialPermutation> enumerate_stratum(int q, int m) {
  check_alphabet(q);
  if (m < 1 || m > q) {
    throw PermError("stratum length " + std::to_string(m) + " outside [1, " + std::to_string(q) + "]");
  }
  std::vector<PartialPermutation> out;
  out.reserve(falling_factorial(q, m));

  std::array<Symbol, kMaxAlphabet> cur{};
  for (int i = 0; i < m; ++i) cur[static_cast<std::size_t>(i)] = static_cast<Symbol>(i);
  const auto all = static_cast<std::uint32_t>((1u << q) - 1);
  for (;;) {
    out.emplace_back(std::span<const Symbol>(cur.data(), static_cast<std::size_t>(m)), q);
    // Rightmost position that can take a larger symbol not used to its left.
    int pos = m - 1;
    std::uint32_t left = 0;
    for (int i = 0; i < m - 1; ++i) left |= 1u << cur[static_cast<std::size_t>(i)];
    for (;; --pos) {
      const std::uint32_t higher = all & ~left & ~((2u << cur[static_cast<std::size_t>(pos)]) - 1);
      if (higher) {
        cur[static_cast<std::size_t>(pos)] = static_cast<Symbol>(std::countr_zero(higher));
        break;
      }
      if (pos == 0) return out;
      left &= ~(1u << cur[static_cast<std::size_t>(pos - 1)]);
    }
    std::uint32_t used = left | (1u << cur[static_cast<std::size_t>(pos)]);
    for (int i = pos + 1; i < m; ++i) {
      const std::uint32_t free = all & ~used;
      cur[static_cast<std::size_t>(i)] = static_cast<Symbol>(std::countr_zero(free));
      used |= 1u << cur[static_cast<std::size_t>(i)];
    }
  }
}

std::vector<PartialPermutation> enumerate_universe(int q) {
  check_alphabet(q);
  std::vector<PartialPermutation> out;
  out.reserve(universe_size(q));
  for (int m = 1; m <= q; ++m) {
    auto stratum = enumerate_stratum(q, m);
    out.insert(out.end(), stratum.begin(), stratum.end());
  }
  return out;
}

std::uint64_t lex_rank(const PartialPermutation& p) {
  const int q = p.alphabet_size();
  const int m = p.size();
  std::uint64_t rank = 0;
  std::uint32_t used = 0;
  for (int i = 0; i < m; ++i) {
    const Symbol s = p[i];
    // Unused symbols smaller than s.
    const auto smaller = static_cast<std::uint64_t>(std::popcount(((1u << s) - 1) & ~used));
    rank += smaller * falling_factorial(q - i - 1, m - i - 1);
    used |= 1u << s;
  }
  return rank;
}

PartialPermutation lex_unrank(int q, int m, std::uint64_t rank) {
  check_alphabet(q);
  if (m < 1 || m > q) throw PermError("stratum length out of range");
  if (rank >= falling_factorial(q, m)) {
    throw PermError("rank " + std::to_string(rank) + " out of range for stratum of size " +
                    std::to_string(falling_factorial(q, m)));
  }
  std::array<Symbol, kMaxAlphabet> out{};
  std::uint32_t free = (1u << q) - 1;
  for (int i = 0; i < m; ++i) {
    const std::uint64_t block = falling_factorial(q - i - 1, m - i - 1);
    auto digit = static_cast<int>(rank / block);
    rank %= block;
    std::uint32_t f = free;
    while (digit-- > 0) f &= f - 1;
    const auto s = static_cast<Symbol>(std::countr_zero(f));
    out[static_cast<std::size_t>(i)] = s;
    free &= ~(1u << s);
  }
  return PartialPermutation(std::span<const Symbol>(out.data(), static_cast<std::size_t>(m)), q);
}

std::uint64_t universe_rank(const PartialPermutation& p) {
  std::uint64_t offset = 0;
  for (int m = 1; m < p.size(); ++m) offset += falling_factorial(p.alphabet_size(), m);
  return offset + lex_rank(p);
}

PartialPermutation universe_unrank(int q, std::uint64_t index) {
  check_alphabet(q);
  for (int m = 1; m <= q; ++m) {
    const std::uint64_t count = falling_factorial(q, m);
    if (index < count) return lex_unrank(q, m, index);
    index -= count;
  }
  throw PermError("universe index out of range");
}

std::string to_string(const PartialPermutation& p) {
  std::string out;
  const bool dotted = p.alphabet_size() > 9;
  for (int i = 0; i < p.size(); ++i) {
    if (dotted && i > 0) out += '.';
    out += std::to_string(p[i] + 1);
  }
  return out;
}

PartialPermutation parse_perm(std::string_view text, int q) {
  check_alphabet(q);
  std::vector<int> symbols;
  auto bad = [&] { return PermError("cannot parse partial permutation '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  if (q <= 9 && text.find('.') == std::string_view::npos) {
    for (char c : text) {
      if (c < '1' || c > '9') throw bad();
      symbols.push_back(c - '1');
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t dot = std::min(text.find('.', start), text.size());
      const std::string_view part = text.substr(start, dot - start);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value < 1) throw bad();
      symbols.push_back(value - 1);
      start = dot + 1;
    }
  }
  return PartialPermutation(std::span<const int>(symbols), q);
}

}  // namespace rmtail
