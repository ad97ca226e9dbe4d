#include "rmtail/constructions.hpp"

#include <string>

#include "rmtail/tail_ops.hpp"

namespace rmtail {

namespace {

void require_formula_range(int q, int t) {
  if (q < 2 || q > kMaxFormulaAlphabet || t < 1 || t >= q) {
    throw ParameterError("need 1 <= t < q <= " + std::to_string(kMaxFormulaAlphabet) + ", got q=" +
                         std::to_string(q) + " t=" + std::to_string(t));
  }
}

void require_build_range(int q, int t) {
  require_formula_range(q, t);
  if (q > kMaxAlphabet) throw ParameterError("q=" + std::to_string(q) + " exceeds the alphabet limit");
}

std::vector<int> strata(int top, int step) {
  std::vector<int> out;
  for (int len = top; len >= 1; len -= step) out.push_back(len);
  return out;
}

TailCode union_of_strata(int q, const std::vector<int>& lengths) {
  std::vector<PartialPermutation> members;
  for (int len : lengths) {
    auto s = enumerate_stratum(q, len);
    members.insert(members.end(), s.begin(), s.end());
  }
  return TailCode(q, std::move(members));
}

std::uint64_t strata_size(int q, const std::vector<int>& lengths) {
  std::uint64_t total = 0;
  for (int len : lengths) total += falling_factorial(q, len);
  return total;
}

}  // namespace

std::vector<int> CorCodeSpec::codeword_lengths() const {
  std::vector<int> out;
  for (int len : base_lengths) out.push_back(len + t);
  if (augment_singletons) out.push_back(1);
  return out;
}

DetCodeSpec det_code_spec(int q, int t) {
  require_formula_range(q, t);
  return {q, t, strata(q, t + 1)};
}

CorCodeSpec cor_code_spec(int q, int t, int j, bool optimal) {
  require_formula_range(q, t);
  if (j < 1 || static_cast<std::uint64_t>(j) > factorial(t)) {
    throw ParameterError("sphere index j=" + std::to_string(j) + " outside 1.." + std::to_string(factorial(t)));
  }
  CorCodeSpec spec;
  spec.q = q;
  spec.t = t;
  spec.j = j;
  spec.augment_singletons = optimal && j == 1 && q % (t + 1) != 0;
  spec.base_lengths = strata(q - t, t + 1);
  return spec;
}

TailCode build_det_code(int q, int t) {
  require_build_range(q, t);
  auto code = union_of_strata(q, det_code_spec(q, t).lengths);
  code.set_claim(Claim{ErrorModel::deletion, t, Capability::detect});
  return code;
}

TailCode build_base_code(int q, int t) {
  require_build_range(q, t);
  return union_of_strata(q, strata(q - t, t + 1));
}

TailCode build_cor_code(int q, int t, int j, bool optimal) {
  require_build_range(q, t);
  const auto spec = cor_code_spec(q, t, j, optimal);
  const auto index = static_cast<std::uint64_t>(j - 1);
  std::vector<PartialPermutation> members;
  for (int len : spec.base_lengths) {
    for (const auto& x : enumerate_stratum(q, len)) members.push_back(sphere_element(x, t, index));
  }
  if (spec.augment_singletons) {
    auto singles = enumerate_stratum(q, 1);
    members.insert(members.end(), singles.begin(), singles.end());
  }
  return TailCode(q, std::move(members), Claim{ErrorModel::deletion, t, Capability::correct});
}

std::uint64_t det_size(int q, int t) { return strata_size(q, det_code_spec(q, t).lengths); }

std::uint64_t base_size(int q, int t) {
  require_formula_range(q, t);
  return strata_size(q, strata(q - t, t + 1));
}

std::uint64_t cor_size(int q, int t) {
  const auto base = base_size(q, t);
  return q % (t + 1) == 0 ? base : base + static_cast<std::uint64_t>(q);
}

CorDecoder::CorDecoder(int q, int t, int j, bool optimal)
    : spec_(cor_code_spec(q, t, j, optimal)), table_(static_cast<std::size_t>(q) + 1) {
  if (q > kMaxAlphabet) throw ParameterError("q=" + std::to_string(q) + " exceeds the alphabet limit");
  for (int len : spec_.codeword_lengths()) {
    const int reach = len == 1 ? 0 : t;
    for (int k = 0; k <= reach; ++k) table_[static_cast<std::size_t>(len - k)] = LengthSlot{len, k};
  }
}

CorDecoder::Result CorDecoder::try_decode(const PartialPermutation& received) const {
  if (received.alphabet_size() != spec_.q) {
    throw PermError("received word alphabet " + std::to_string(received.alphabet_size()) + " != q=" +
                    std::to_string(spec_.q));
  }
  const auto& slot = table_[static_cast<std::size_t>(received.size())];
  if (!slot) return {};
  if (slot->codeword_length == 1) return {received, 0};

  const auto x = received.suffix_from(received.size() - (slot->codeword_length - spec_.t));
  auto candidate = sphere_element(x, spec_.t, static_cast<std::uint64_t>(spec_.j - 1));
  if (delete_tail(candidate, slot->deletions) != received) return {};
  return {candidate, slot->deletions};
}

PartialPermutation CorDecoder::decode(const PartialPermutation& received) const {
  auto r = try_decode(received);
  if (!r.codeword) throw UncorrectableError("uncorrectable: " + to_string(received));
  return *r.codeword;
}

PartialPermutation decode_del(const PartialPermutation& received, int q, int t, int j, bool optimal) {
  return CorDecoder(q, t, j, optimal).decode(received);
}

DetectOutcome detect_del(const PartialPermutation& received, const TailCode& code) {
  if (code.contains(received)) return {true, received};
  return {};
}

}  // namespace rmtail
