#pragma once
// Detecting/correcting predicates, conflict graphs, the exact maximum-code
// oracle, and randomized checks of the relations between error models.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rmtail/independent_set.hpp"
#include "rmtail/perm.hpp"
#include "rmtail/tail_ops.hpp"

namespace rmtail {

enum class Capability { detect, correct };

std::string_view to_string(Capability capability);
Capability parse_capability(std::string_view text);

struct Claim {
  ErrorModel model = ErrorModel::deletion;
  int t = 0;
  Capability capability = Capability::detect;
};

/// A finite set of partial permutations over one alphabet, kept sorted.
class TailCode {
 public:
  TailCode() = default;
  /// Throws PermError if a member's alphabet differs from q. Duplicates are dropped.
  TailCode(int q, std::vector<PartialPermutation> members, std::optional<Claim> claim = std::nullopt);

  int q() const { return q_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<PartialPermutation>& members() const { return members_; }
  bool contains(const PartialPermutation& p) const;
  const std::optional<Claim>& claim() const { return claim_; }
  void set_claim(std::optional<Claim> claim) { claim_ = claim; }

  /// Position of p in members(), if present.
  std::optional<std::size_t> index_of(const PartialPermutation& p) const;

  friend bool operator==(const TailCode& a, const TailCode& b) {
    return a.q_ == b.q_ && a.members_ == b.members_;
  }

 private:
  int q_ = 1;
  std::vector<PartialPermutation> members_;
  std::unordered_set<std::uint64_t> keys_;
  std::optional<Claim> claim_;
};

/// A failing pair. For detection, `second` lies in the ball of `first`;
/// for correction, `common` lies in both balls.
struct Violation {
  PartialPermutation first;
  PartialPermutation second;
  std::optional<PartialPermutation> common;
};

struct CheckResult {
  bool ok = true;
  std::optional<Violation> witness;
  explicit operator bool() const { return ok; }
};

/// No codeword lies in the ball of another codeword.
CheckResult is_detecting(const TailCode& code, ErrorModel model, int t);
/// Balls of distinct codewords are pairwise disjoint.
CheckResult is_correcting(const TailCode& code, ErrorModel model, int t);
CheckResult check_capability(const TailCode& code, const Claim& claim);

/// Conflict graph over the whole universe enumerate_universe(q): an edge
/// joins two words that cannot both belong to a code with the given property.
Graph build_conflict_graph(int q, ErrorModel model, int t, Capability capability);

struct OracleResult {
  std::uint64_t size = 0;
  TailCode witness;
  bool exact = true;
  std::uint64_t nodes = 0;
};

/// Largest code over S_all^q with the given capability (exact up to the node budget).
OracleResult max_code_oracle(int q, int t, ErrorModel model, Capability capability,
                             std::uint64_t node_budget = kDefaultNodeBudget);

/// Balls of every universe word, as sorted universe indices. Lets the
/// randomized suites test thousands of codes without rebuilding balls.
class BallTable {
 public:
  BallTable(int q, ErrorModel model, int t);
  int q() const { return q_; }
  std::size_t universe() const { return balls_.size(); }
  const std::vector<int>& ball(int vertex) const { return balls_[static_cast<std::size_t>(vertex)]; }

  /// Predicates over a code given as universe indices.
  bool detecting(const std::vector<int>& code) const;
  bool correcting(const std::vector<int>& code) const;

 private:
  int q_;
  std::vector<std::vector<int>> balls_;
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::vector<int> owner_;
  mutable std::uint32_t epoch_ = 0;
};

struct ImplicationTally {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t hypothesis_held = 0;
  std::uint64_t violations = 0;
};

struct FixtureCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct EquivalenceReport {
  int q = 0;
  int t = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<ImplicationTally> implications;
  std::vector<FixtureCheck> fixtures;
  bool passed() const;
};

/// Samples `trials` random codes (plus greedy repairs that force each
/// hypothesis) and checks:
///   t-del-detect <=> t-ins-detect;  t-ins-detect => t-ins-correct;
///   t-del-correct => t-ins-correct;  2t-del-correct => t-indel-correct;
///   correct => detect (del, ins).
/// Also evaluates the fixed separating examples. Requires 2 <= q <= 6.
EquivalenceReport equivalence_suite(int q, int t, std::uint64_t trials, std::uint64_t seed);

/// The fixed separating examples on their own (alphabet sizes 3 and 4).
std::vector<FixtureCheck> separating_fixtures();

/// The seven worked ball examples (tail deletion, deletion ball, insertion
/// spheres, insertion balls, indel shell), compared in display form.
std::vector<FixtureCheck> ball_fixtures();

/// Smallest pair code over q (lexicographic search) that is
/// (2t-1)-deletion-correcting but not t-indel-correcting.
std::optional<TailCode> find_del_not_indel_pair(int q, int t);

}  // namespace rmtail
