#pragma once
// Tensor codes over vectors of partial permutations: an inner partial
// partition labels each coordinate, and the label vector must be a codeword
// of an outer block code.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rmtail/code_check.hpp"
#include "rmtail/constructions.hpp"
#include "rmtail/outer_code.hpp"

namespace rmtail {

using PermVector = std::vector<PartialPermutation>;

/// Coordinate text forms joined by commas, e.g. "1345,135".
std::string to_string(const PermVector& v);
PermVector parse_perm_vector(std::string_view text, int q);

/// Entrywise delete_tail with pattern[i] deletions at coordinate i.
PermVector apply_vector_deletions(const PermVector& u, const std::vector<int>& pattern);

enum class PartitionKind { generic, correcting_family, detecting_family };

/// Pairwise-disjoint classes A_0..A_{l-1} over one alphabet.
class PartialPartition {
 public:
  /// Throws std::invalid_argument if two classes share a word or alphabets differ.
  PartialPartition(int q, std::vector<TailCode> classes, PartitionKind kind = PartitionKind::generic, int t = 0);

  int q() const { return q_; }
  int t() const { return t_; }
  PartitionKind kind() const { return kind_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  const TailCode& operator[](int label) const { return classes_[static_cast<std::size_t>(label)]; }
  const std::vector<TailCode>& classes() const { return classes_; }
  /// Size of the smallest class.
  std::size_t min_class_size() const;

  std::optional<int> label_of(const PartialPermutation& p) const;

  /// Every class passes the predicate for (model, t, capability).
  bool verify(ErrorModel model, int t, Capability capability) const;

 private:
  int q_;
  int t_;
  PartitionKind kind_;
  std::vector<TailCode> classes_;
  std::unordered_map<std::uint64_t, int> label_;
};

/// Classes j = 1..t! of the sphere-selection codes over the base code (no augmentation).
PartialPartition correcting_partition(int q, int t);
/// Classes C_j = union of strata of lengths q-j-i(t+1), j = 0..t.
PartialPartition detecting_partition(int q, int t);

/// Per-coordinate labels, nullopt where the entry lies in no class.
using IndicatorVector = std::vector<std::optional<int>>;

IndicatorVector lambda_map(const PermVector& c, const PartialPartition& r);
std::string to_string(const IndicatorVector& v);

struct TtpcDecodeResult {
  enum class Status { ok, too_many_erasures, outside_balls, outer_ambiguous, outer_inconsistent, inner_mismatch };
  Status status = Status::ok;
  std::optional<PermVector> codeword;
  std::vector<int> deletions;  // inferred per coordinate
  int erasures = 0;
};

std::string_view to_string(TtpcDecodeResult::Status status);

/// The tensor code TTPC(R, C): all c with lambda_map(c) in C.
class Ttpc {
 public:
  Ttpc(PartialPartition partition, OuterCodePtr outer);

  const PartialPartition& partition() const { return partition_; }
  const OuterCode& outer() const { return *outer_; }
  int length() const { return outer_->length(); }

  bool contains(const PermVector& c) const;

  /// min_class_size^n * |outer|, the size of the message space.
  BigInt message_space() const;
  /// Message = outer_index * A^n + sum_i r_i A^i, where coordinate i holds
  /// the r_i-th member of its class. Throws std::out_of_range when too large.
  PermVector encode(const BigInt& message) const;
  /// Inverse of encode for words in its image.
  std::optional<BigInt> message_of(const PermVector& c) const;

  /// Erasure decoder for the correcting family: coordinates with inferred
  /// deletions lose their label, the outer code fills at most e of them.
  TtpcDecodeResult decode(const PermVector& received, int e) const;

  /// Accept iff the received vector is a codeword.
  bool detect(const PermVector& received) const { return contains(received); }

 private:
  PartialPartition partition_;
  OuterCodePtr outer_;
  std::vector<std::optional<LengthSlot>> table_;
};

/// Correcting tensor code: t! classes, outer code with distance >= 2e+1.
Ttpc correcting_ttpc(int q, int t, int n, int e);
/// Detecting tensor code: t+1 classes, outer code with distance >= e+1.
Ttpc detecting_ttpc(int q, int t, int n, int e);

/// Smallest outer distance for which the detecting tensor code catches every (t,e) pattern.
inline int detecting_outer_distance(int e) { return e + 1; }

struct TtpcBounds {
  int q = 0, t = 0, n = 0, e = 0;

  std::uint64_t cor_inner = 0;  // DEL_cor(q, t)
  std::uint64_t base = 0;       // class size of the t! family and of C_t
  std::string cor_outer;        // descriptor of the outer code over t! symbols, distance 2e+1
  BigInt cor_outer_size;
  bool cor_outer_optimal = false;
  BigInt cor_formula;           // DEL_cor^n * |outer|
  BigInt cor_constructive;      // base^n * |outer|
  bool cor_formula_constructive = false;  // base == DEL_cor, i.e. q = 0 mod (t+1)

  std::string det_outer;        // over t+1 symbols, distance e
  BigInt det_outer_size;
  bool det_outer_optimal = false;
  BigInt det_bound;             // base^n * |outer over t+1 symbols, distance e|
  std::string det_outer_label_t;  // over t symbols, distance e
  BigInt det_bound_label_t;       // base^n * |outer over t symbols, distance e|
  std::string det_outer_sound;  // over t+1 symbols, distance e+1
  BigInt det_bound_sound;       // base^n * |that|
};

TtpcBounds ttpc_size_bounds(int q, int t, int n, int e);

}  // namespace rmtail
