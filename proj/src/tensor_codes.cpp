#include "rmtail/tensor_codes.hpp"

#include <stdexcept>

#include "rmtail/tail_ops.hpp"

namespace rmtail {

namespace {

BigInt big_pow(const BigInt& base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int label_alphabet(int t) {
  if (t < 1 || t > 12) throw ParameterError("t=" + std::to_string(t) + " outside 1..12 for tensor codes");
  return static_cast<int>(factorial(t));
}

}  // namespace

std::string to_string(const PermVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += to_string(v[i]);
  }
  return out;
}

PermVector parse_perm_vector(std::string_view text, int q) {
  PermVector out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_perm(text.substr(start, comma - start), q));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

PermVector apply_vector_deletions(const PermVector& u, const std::vector<int>& pattern) {
  if (pattern.size() != u.size()) throw std::invalid_argument("deletion pattern length differs from vector length");
  PermVector out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(delete_tail(u[i], pattern[i]));
  return out;
}

PartialPartition::PartialPartition(int q, std::vector<TailCode> classes, PartitionKind kind, int t)
    : q_(q), t_(t), kind_(kind), classes_(std::move(classes)) {
  for (std::size_t j = 0; j < classes_.size(); ++j) {
    if (classes_[j].q() != q && !classes_[j].empty()) throw std::invalid_argument("partition class over a different alphabet");
    for (const auto& p : classes_[j].members()) {
      auto [it, fresh] = label_.emplace(p.key(), static_cast<int>(j));
      if (!fresh) {
        throw std::invalid_argument("classes " + std::to_string(it->second) + " and " + std::to_string(j) +
                                    " share " + to_string(p));
      }
    }
  }
}

std::size_t PartialPartition::min_class_size() const {
  if (classes_.empty()) return 0;
  std::size_t m = classes_.front().size();
  for (const auto& c : classes_) m = std::min(m, c.size());
  return m;
}

std::optional<int> PartialPartition::label_of(const PartialPermutation& p) const {
  if (p.alphabet_size() != q_) return std::nullopt;
  auto it = label_.find(p.key());
  if (it == label_.end()) return std::nullopt;
  return it->second;
}

bool PartialPartition::verify(ErrorModel model, int t, Capability capability) const {
  for (const auto& c : classes_) {
    if (!check_capability(c, {model, t, capability}).ok) return false;
  }
  return true;
}

PartialPartition correcting_partition(int q, int t) {
  const int classes = label_alphabet(t);
  std::vector<TailCode> out;
  for (int j = 1; j <= classes; ++j) out.push_back(build_cor_code(q, t, j, false));
  return PartialPartition(q, std::move(out), PartitionKind::correcting_family, t);
}

PartialPartition detecting_partition(int q, int t) {
  if (q < 2 || q > kMaxAlphabet || t < 1 || t >= q) throw ParameterError("need 1 <= t < q <= 15");
  std::vector<TailCode> out;
  for (int j = 0; j <= t; ++j) {
    std::vector<PartialPermutation> members;
    for (int len = q - j; len >= 1; len -= t + 1) {
      auto s = enumerate_stratum(q, len);
      members.insert(members.end(), s.begin(), s.end());
    }
    out.emplace_back(q, std::move(members), Claim{ErrorModel::deletion, t, Capability::detect});
  }
  return PartialPartition(q, std::move(out), PartitionKind::detecting_family, t);
}

IndicatorVector lambda_map(const PermVector& c, const PartialPartition& r) {
  IndicatorVector out;
  out.reserve(c.size());
  for (const auto& p : c) out.push_back(r.label_of(p));
  return out;
}

std::string to_string(const IndicatorVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i] ? std::to_string(*v[i]) : "?";
  }
  return out + ")";
}

std::string_view to_string(TtpcDecodeResult::Status status) {
  using S = TtpcDecodeResult::Status;
  switch (status) {
    case S::ok: return "ok";
    case S::too_many_erasures: return "too_many_erasures";
    case S::outside_balls: return "outside_balls";
    case S::outer_ambiguous: return "outer_ambiguous";
    case S::outer_inconsistent: return "outer_inconsistent";
    case S::inner_mismatch: return "inner_mismatch";
  }
  return "?";
}

Ttpc::Ttpc(PartialPartition partition, OuterCodePtr outer) : partition_(std::move(partition)), outer_(std::move(outer)) {
  if (!outer_) throw std::invalid_argument("missing outer code");
  if (outer_->alphabet() != partition_.class_count()) {
    throw std::invalid_argument("outer alphabet " + std::to_string(outer_->alphabet()) + " != class count " +
                                std::to_string(partition_.class_count()));
  }
  if (partition_.kind() == PartitionKind::correcting_family) {
    table_ = CorDecoder(partition_.q(), partition_.t(), 1, false).length_table();
  }
}

bool Ttpc::contains(const PermVector& c) const {
  if (static_cast<int>(c.size()) != length()) return false;
  std::vector<int> labels;
  for (const auto& l : lambda_map(c, partition_)) {
    if (!l) return false;
    labels.push_back(*l);
  }
  return outer_->contains(labels);
}

BigInt Ttpc::message_space() const {
  return big_pow(BigInt(partition_.min_class_size()), length()) * outer_->size();
}

PermVector Ttpc::encode(const BigInt& message) const {
  if (message < 0 || message >= message_space()) throw std::out_of_range("message outside the message space");
  const BigInt a = partition_.min_class_size();
  const BigInt inner = big_pow(a, length());
  const auto labels = outer_->encode(message / inner);
  BigInt rest = message % inner;
  PermVector out;
  for (int i = 0; i < length(); ++i) {
    const auto rank = static_cast<std::size_t>(rest % a);
    rest /= a;
    out.push_back(partition_[labels[static_cast<std::size_t>(i)]].members()[rank]);
  }
  return out;
}

std::optional<BigInt> Ttpc::message_of(const PermVector& c) const {
  if (static_cast<int>(c.size()) != length()) return std::nullopt;
  const BigInt a = partition_.min_class_size();
  std::vector<int> labels;
  BigInt ranks = 0;
  BigInt scale = 1;
  for (const auto& p : c) {
    auto label = partition_.label_of(p);
    if (!label) return std::nullopt;
    labels.push_back(*label);
    const auto rank = *partition_[*label].index_of(p);
    if (rank >= a) return std::nullopt;
    ranks += scale * rank;
    scale *= a;
  }
  auto index = outer_->index_of(labels);
  if (!index) return std::nullopt;
  return *index * scale + ranks;
}

TtpcDecodeResult Ttpc::decode(const PermVector& received, int e) const {
  if (partition_.kind() != PartitionKind::correcting_family) {
    throw std::invalid_argument("decoding needs the correcting partition family");
  }
  if (e < 0 || outer_->distance() < 2 * e + 1) {
    throw std::invalid_argument("outer distance " + std::to_string(outer_->distance()) + " below 2e+1 for e=" +
                                std::to_string(e));
  }
  if (static_cast<int>(received.size()) != length()) throw std::invalid_argument("received vector has wrong length");

  using S = TtpcDecodeResult::Status;
  const int t = partition_.t();
  TtpcDecodeResult out;
  ErasedWord labels(received.size());
  std::vector<PartialPermutation> base;
  for (std::size_t i = 0; i < received.size(); ++i) {
    const auto& r = received[i];
    if (r.alphabet_size() != partition_.q()) throw PermError("coordinate over a different alphabet");
    const auto& slot = table_[static_cast<std::size_t>(r.size())];
    if (!slot) {
      out.status = S::outside_balls;
      return out;
    }
    out.deletions.push_back(slot->deletions);
    base.push_back(r.suffix_from(r.size() - (slot->codeword_length - t)));
    if (slot->deletions == 0) {
      const auto j = sphere_index(r, t);
      if (j >= static_cast<std::uint64_t>(partition_.class_count())) {
        out.status = S::outside_balls;
        return out;
      }
      labels[i] = static_cast<int>(j);
    } else {
      ++out.erasures;
    }
  }
  if (out.erasures > e) {
    out.status = S::too_many_erasures;
    return out;
  }
  const auto filled = outer_->complete(labels);
  if (filled.status == Completion::Status::ambiguous) {
    out.status = S::outer_ambiguous;
    return out;
  }
  if (filled.status == Completion::Status::inconsistent) {
    out.status = S::outer_inconsistent;
    return out;
  }
  PermVector c;
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (labels[i]) {
      c.push_back(received[i]);
      continue;
    }
    auto word = sphere_element(base[i], t, static_cast<std::uint64_t>(filled.word[i]));
    if (delete_tail(word, out.deletions[i]) != received[i]) {
      out.status = S::inner_mismatch;
      return out;
    }
    c.push_back(word);
  }
  out.codeword = std::move(c);
  return out;
}

Ttpc correcting_ttpc(int q, int t, int n, int e) {
  return Ttpc(correcting_partition(q, t), outer_code_factory(label_alphabet(t), n, 2 * e + 1));
}

Ttpc detecting_ttpc(int q, int t, int n, int e) {
  return Ttpc(detecting_partition(q, t), outer_code_factory(t + 1, n, detecting_outer_distance(e)));
}

TtpcBounds ttpc_size_bounds(int q, int t, int n, int e) {
  if (n < 1 || e < 0) throw ParameterError("need n >= 1 and e >= 0");
  TtpcBounds b;
  b.q = q;
  b.t = t;
  b.n = n;
  b.e = e;
  b.cor_inner = cor_size(q, t);
  b.base = base_size(q, t);
  const BigInt base_n = big_pow(BigInt(b.base), n);

  const auto cor = outer_code_factory(label_alphabet(t), n, 2 * e + 1);
  b.cor_outer = cor->describe();
  b.cor_outer_size = cor->size();
  b.cor_outer_optimal = outer_known_optimal(*cor, 2 * e + 1);
  b.cor_formula = big_pow(BigInt(b.cor_inner), n) * b.cor_outer_size;
  b.cor_constructive = base_n * b.cor_outer_size;
  b.cor_formula_constructive = b.base == b.cor_inner;

  const auto det = outer_code_factory(t + 1, n, e);
  b.det_outer = det->describe();
  b.det_outer_size = det->size();
  b.det_outer_optimal = outer_known_optimal(*det, e);
  b.det_bound = base_n * b.det_outer_size;

  const auto det_t = outer_code_factory(t, n, e);
  b.det_outer_label_t = det_t->describe();
  b.det_bound_label_t = base_n * det_t->size();

  const auto sound = outer_code_factory(t + 1, n, detecting_outer_distance(e));
  b.det_outer_sound = sound->describe();
  b.det_bound_sound = base_n * sound->size();
  return b;
}

}  // namespace rmtail
