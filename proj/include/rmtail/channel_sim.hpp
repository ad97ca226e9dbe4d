#pragma once
// Composite-symbol sequencing channel: a partial permutation becomes a
// probability vector over [q], N reads are drawn from it, and the observed
// strict ranking of read counts is the channel output.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rmtail/perm.hpp"
#include "rmtail/tensor_codes.hpp"

namespace rmtail {

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a decimal string such as "0.01" or "1/3".
Rational parse_rational(std::string_view text);
double to_double(const Rational& r);

struct WeightRule {
  enum class Kind { rank_proportional, geometric } kind = Kind::rank_proportional;
  Rational ratio = 2;  // geometric: weight of rank k is ratio^k

  /// Normalized weights for ranks 1..m (weakest first).
  std::vector<Rational> weights(int m) const;
};

struct ErrorMass {
  enum class Kind { designated, uniform_unused } kind = Kind::uniform_unused;
  Rational eps = 0;
  Symbol symbol = 0;  // designated symbol, 0-based
};

struct CompositeDesign {
  PartialPermutation perm;
  int reads = 10;
  ErrorMass error;
  WeightRule rule;
};

/// Probability of each symbol 0..q-1. Throws std::invalid_argument when eps is
/// outside [0,1), the designated symbol is used by perm, or eps > 0 with no
/// unused symbol to receive it.
std::vector<Rational> design_distribution(const PartialPermutation& perm, const ErrorMass& error,
                                          const WeightRule& rule = {});
std::vector<Rational> design_distribution(const CompositeDesign& design);

/// Strict ranking of the symbols with nonzero count, weakest first; `tie`
/// when two nonzero counts coincide (ranking is then empty).
struct Outcome {
  std::vector<Symbol> ranking;
  bool tie = false;

  static Outcome classify(const std::vector<int>& counts);
  /// The ranking as a partial permutation (nullopt for ties).
  std::optional<PartialPermutation> as_perm(int q) const;
  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

/// "A < C" for q <= 4 (letters A, C, G, T), otherwise 1-based numbers.
std::string to_string(const Outcome& o, int q);
/// Inverse of to_string; also accepts "tie".
Outcome parse_outcome(std::string_view text, int q);
/// Symbol names as used by to_string.
std::string symbol_name(Symbol s, int q);
/// Accepts letters ACGT when q <= 4, otherwise the usual perm text form.
PartialPermutation parse_design_perm(std::string_view text, int q);

using ExactDistribution = std::map<Outcome, Rational>;
using FloatDistribution = std::map<Outcome, double>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of count vectors enumerated for N reads over `support` symbols.
std::uint64_t composition_count(int reads, int support);

/// Exact rational distribution by enumerating all count vectors over the support.
ExactDistribution exact_outcomes(const std::vector<Rational>& probs, int reads,
                                 std::uint64_t budget = 2'000'000);
ExactDistribution exact_outcomes(const CompositeDesign& design, std::uint64_t budget = 2'000'000);

/// Same enumeration in floating point (log-pmf, compensated sums).
FloatDistribution float_outcomes(const std::vector<double>& probs, int reads, std::uint64_t budget = 50'000'000);

/// Raw count comparison between two symbols: P(#a < #b), P(#a = #b), P(#a > #b).
struct CountComparison {
  Rational less;
  Rational equal;
  Rational greater;
};
CountComparison count_order_probability(const std::vector<Rational>& probs, int reads, Symbol a, Symbol b);

struct ReadSample {
  std::vector<int> counts;
  Outcome outcome;
};

/// Categorical sampler over a fixed probability vector by inverse CDF.
class ReadSampler {
 public:
  explicit ReadSampler(const std::vector<double>& probs);
  ReadSample sample(int reads, std::mt19937_64& rng) const;

 private:
  std::vector<double> cdf_;
};

/// One seeded draw of `design.reads` reads.
ReadSample sample_reads(const CompositeDesign& design, std::uint64_t seed);

struct McResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<Outcome, std::uint64_t> counts;
};
McResult monte_carlo_outcomes(const CompositeDesign& design, std::uint64_t trials, std::uint64_t seed);

/// How an observed ranking relates to the sent permutation.
enum class CoordinateEvent { exact, tail_deletion, tail_insertion, other, tie };
std::string_view to_string(CoordinateEvent e);
CoordinateEvent classify_event(const PartialPermutation& sent, const Outcome& observed);

struct Proportion {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double rate() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
  /// 95% Wilson score interval.
  std::pair<double, double> wilson() const;
};

struct EndToEndConfig {
  int reads = 20;
  bool noiseless = false;  // every coordinate is read back exactly
  ErrorMass error;  // skipped for full-length coordinates, which have no unused symbol
  WeightRule rule;
  int e = 1;        // outer erasure budget passed to the decoder
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
};

struct EndToEndReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Proportion success;           // decoded to the sent codeword
  Proportion silent_error;      // decoded to a different codeword
  Proportion in_model;          // every coordinate exact or a <= t tail deletion, at most e deleted
  Proportion in_model_success;  // success rate restricted to in-model trials
  std::map<CoordinateEvent, std::uint64_t> events;  // per coordinate
};

/// Encode random messages, pass each coordinate through the channel, decode.
EndToEndReport end_to_end_trial(const Ttpc& code, const EndToEndConfig& config);

}  // namespace rmtail
