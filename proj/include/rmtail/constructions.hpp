#pragma once
// Explicit tail-deletion codes: the optimal detecting code, the base code,
// the family of t! disjoint correcting codes, the optimal correcting code,
// their closed-form sizes, and a length-interval decoder.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmtail/code_check.hpp"
#include "rmtail/perm.hpp"

namespace rmtail {

/// Thrown for out-of-range construction parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a received word lies in no codeword's deletion ball.
class UncorrectableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DetCodeSpec {
  int q = 0;
  int t = 0;
  std::vector<int> lengths;  // q, q-(t+1), ..., descending, all >= 1
};

struct CorCodeSpec {
  int q = 0;
  int t = 0;
  int j = 1;                      // 1-based sphere index, 1..t!
  bool augment_singletons = false;
  std::vector<int> base_lengths;  // q-t, q-t-(t+1), ..., descending

  /// base lengths shifted by t, plus 1 when augmented; descending.
  std::vector<int> codeword_lengths() const;
};

DetCodeSpec det_code_spec(int q, int t);
/// `optimal` requests S_1^q augmentation; it only applies when j = 1 and
/// q mod (t+1) != 0.
CorCodeSpec cor_code_spec(int q, int t, int j, bool optimal = true);

TailCode build_det_code(int q, int t);
TailCode build_base_code(int q, int t);
TailCode build_cor_code(int q, int t, int j, bool optimal = true);

/// Exact sizes from the closed forms; valid up to q = kMaxFormulaAlphabet.
std::uint64_t det_size(int q, int t);
std::uint64_t base_size(int q, int t);
std::uint64_t cor_size(int q, int t);

/// Which codeword stratum a received length falls in.
struct LengthSlot {
  int codeword_length = 0;
  int deletions = 0;
};

/// Decoder for build_cor_code(q, t, j, optimal). Received lengths map to
/// disjoint intervals [L - t, L], one per codeword length L.
class CorDecoder {
 public:
  CorDecoder(int q, int t, int j, bool optimal = true);

  const CorCodeSpec& spec() const { return spec_; }
  /// Slot for each received length 1..q (index 0 unused).
  const std::vector<std::optional<LengthSlot>>& length_table() const { return table_; }

  struct Result {
    std::optional<PartialPermutation> codeword;  // empty when uncorrectable
    int deletions = 0;
  };

  Result try_decode(const PartialPermutation& received) const;
  /// Throws UncorrectableError when received is in no codeword's ball.
  PartialPermutation decode(const PartialPermutation& received) const;

 private:
  CorCodeSpec spec_;
  std::vector<std::optional<LengthSlot>> table_;
};

PartialPermutation decode_del(const PartialPermutation& received, int q, int t, int j, bool optimal = true);

struct DetectOutcome {
  bool accepted = false;
  std::optional<PartialPermutation> codeword;
};

/// Accepts exactly the words that are codewords.
DetectOutcome detect_del(const PartialPermutation& received, const TailCode& code);

}  // namespace rmtail
