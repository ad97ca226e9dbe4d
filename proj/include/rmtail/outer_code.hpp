#pragma once
// Outer block codes over Z_l (or GF(l) when l is a prime power) used as the
// label layer of tensor codes. All of them support erasure completion.

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rmtail/galois_field.hpp"
#include "rmtail/independent_set.hpp"

namespace rmtail {

using BigInt = boost::multiprecision::cpp_int;

class UnsupportedOuterCode : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OuterFamily { trivial, full, repetition, parity, reed_solomon, hamming, search };

std::string_view to_string(OuterFamily family);
/// Accepts the to_string names plus "rep", "mds", "rs".
OuterFamily parse_outer_family(std::string_view text);

/// Distance reported by a single-codeword code.
inline constexpr int kInfiniteDistance = 1 << 20;

/// A word with some positions erased (nullopt).
using ErasedWord = std::vector<std::optional<int>>;

struct Completion {
  enum class Status { unique, ambiguous, inconsistent } status = Status::inconsistent;
  std::vector<int> word;  // set when unique
};

class OuterCode {
 public:
  virtual ~OuterCode() = default;

  int alphabet() const { return alphabet_; }
  int length() const { return length_; }
  /// Guaranteed minimum distance.
  int distance() const { return distance_; }
  virtual OuterFamily family() const = 0;
  virtual BigInt size() const = 0;
  /// False when a budget-limited search could not prove maximality.
  virtual bool exact() const { return true; }

  /// The index-th codeword, 0 <= index < size().
  virtual std::vector<int> encode(const BigInt& index) const = 0;
  virtual std::optional<BigInt> index_of(std::span<const int> word) const = 0;
  bool contains(std::span<const int> word) const { return index_of(word).has_value(); }
  /// Fill erasures: unique if exactly one codeword agrees with the known positions.
  virtual Completion complete(const ErasedWord& word) const = 0;

  std::string describe() const;

 protected:
  OuterCode(int alphabet, int length, int distance) : alphabet_(alphabet), length_(length), distance_(distance) {}
  void check_word(std::span<const int> word) const;

 private:
  int alphabet_;
  int length_;
  int distance_;
};

using OuterCodePtr = std::shared_ptr<const OuterCode>;

/// A specific family. Throws UnsupportedOuterCode when that family cannot
/// reach distance d for these parameters.
OuterCodePtr make_outer_code(OuterFamily family, int alphabet, int length, int distance,
                             std::uint64_t node_budget = 1'000'000);

/// The largest code among the supported families with distance >= d.
OuterCodePtr outer_code_factory(int alphabet, int length, int distance);

/// min(Singleton, sphere-packing) upper bound on A_l(n, d).
BigInt outer_upper_bound(int alphabet, int length, int distance);

/// True when the code provably attains A_l(n, d).
bool outer_known_optimal(const OuterCode& code, int distance);

/// Minimum pairwise distance by exhaustive comparison; nullopt if the code
/// has more than max_codewords words. Single-word codes give kInfiniteDistance.
std::optional<int> measured_min_distance(const OuterCode& code, std::uint64_t max_codewords = 5000);

int hamming_distance(std::span<const int> a, std::span<const int> b);

}  // namespace rmtail
