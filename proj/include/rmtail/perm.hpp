#pragma once
// Partial permutations over the alphabet [q] = {0, ..., q-1}.
//
// A partial permutation is a sequence of distinct symbols of length 1..q.
// The leftmost symbol is the weakest rank (the "left tail"); every error
// model in this library acts on that end.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmtail {

using Symbol = std::uint8_t;

/// Largest alphabet a PartialPermutation can carry (nibble-packed key).
inline constexpr int kMaxAlphabet = 15;
/// Largest q accepted by the closed-form counting functions (exact in uint64).
inline constexpr int kMaxFormulaAlphabet = 20;

class PermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PartialPermutation {
 public:
  /// Validating constructor. Throws PermError on an empty list, a duplicate
  /// symbol, a symbol >= q, or q outside [1, kMaxAlphabet].
  PartialPermutation(std::span<const int> symbols, int q);
  PartialPermutation(std::span<const Symbol> symbols, int q);
  PartialPermutation(std::initializer_list<int> symbols, int q)
      : PartialPermutation(std::span<const int>(symbols.begin(), symbols.size()), q) {}

  int alphabet_size() const { return q_; }
  int size() const { return size_; }
  Symbol operator[](int i) const { return symbols_[static_cast<std::size_t>(i)]; }
  std::span<const Symbol> symbols() const { return {symbols_.data(), static_cast<std::size_t>(size_)}; }
  Symbol last() const { return symbols_[static_cast<std::size_t>(size_ - 1)]; }

  bool contains(Symbol s) const;
  /// Bit s set iff symbol s occurs.
  std::uint32_t symbol_mask() const;

  /// Injective 64-bit key (symbols + 1 in 4-bit nibbles). Does not encode q.
  std::uint64_t key() const { return key_; }

  /// Drop the first `count` symbols; caller guarantees count < size().
  PartialPermutation suffix_from(int count) const;
  /// Prepend `prefix` (must be disjoint from this permutation).
  PartialPermutation prepend(std::span<const Symbol> prefix) const;

  friend bool operator==(const PartialPermutation& a, const PartialPermutation& b) {
    return a.q_ == b.q_ && a.size_ == b.size_ && a.key_ == b.key_;
  }
  /// Lexicographic on the symbol sequence (a proper prefix sorts first).
  friend std::strong_ordering operator<=>(const PartialPermutation& a, const PartialPermutation& b);

 private:
  PartialPermutation() = default;
  void finish(int q);

  std::array<Symbol, kMaxAlphabet> symbols_{};
  std::uint8_t size_ = 0;
  std::uint8_t q_ = 0;
  std::uint64_t key_ = 0;
};

/// Throwing factory with the same checks as the constructor.
PartialPermutation make_perm(std::span<const int> symbols, int q);

struct PermHash {
  std::size_t operator()(const PartialPermutation& p) const noexcept {
    return static_cast<std::size_t>(p.key() * 0x9E3779B97F4A7C15ull);
  }
};

/// q! / (q-m)!, the size of the stratum S_m^q. Zero when m > q.
std::uint64_t falling_factorial(int q, int m);
std::uint64_t factorial(int n);
std::uint64_t binomial(int n, int k);

/// Exact |S_all^q| = sum_{i=0}^{q-1} q!/i!.
std::uint64_t universe_size(int q);

/// All partial permutations of length m, strictly increasing lexicographically.
std::vector<PartialPermutation> enumerate_stratum(int q, int m);
/// Strata 1..q concatenated (ordered by length, then lexicographically).
std::vector<PartialPermutation> enumerate_universe(int q);

/// Rank of p within its stratum under lexicographic order.
std::uint64_t lex_rank(const PartialPermutation& p);
PartialPermutation lex_unrank(int q, int m, std::uint64_t rank);

/// Rank of p in enumerate_universe(q) order.
std::uint64_t universe_rank(const PartialPermutation& p);
PartialPermutation universe_unrank(int q, std::uint64_t index);

// Canonical text form: 1-based symbols, plain digits when q <= 9, otherwise
// decimal numbers joined by '.'.
std::string to_string(const PartialPermutation& p);
PartialPermutation parse_perm(std::string_view text, int q);

}  // namespace rmtail
