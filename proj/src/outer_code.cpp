#include "rmtail/outer_code.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rmtail {

namespace {

BigInt big_pow(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Base-l digits of index, most significant first.
std::vector<int> to_digits(BigInt index, int base, int count) {
  std::vector<int> out(static_cast<std::size_t>(count), 0);
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % base);
    index /= base;
  }
  return out;
}

BigInt from_digits(std::span<const int> d, int base) {
  BigInt v = 0;
  for (int x : d) v = v * base + x;
  return v;
}

std::size_t erasure_count(const ErasedWord& w) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), std::nullopt));
}

class TrivialCode final : public OuterCode {
 public:
  TrivialCode(int l, int n) : OuterCode(l, n, kInfiniteDistance) {}
  OuterFamily family() const override { return OuterFamily::trivial; }
  BigInt size() const override { return 1; }
  std::vector<int> encode(const BigInt& index) const override {
    if (index != 0) throw std::out_of_range("outer index out of range");
    return std::vector<int>(static_cast<std::size_t>(length()), 0);
  }
  std::optional<BigInt> index_of(std::span<const int> word) const override {
    check_word(word);
    if (std::all_of(word.begin(), word.end(), [](int x) { return x == 0; })) return BigInt(0);
    return std::nullopt;
  }
  Completion complete(const ErasedWord& word) const override {
    for (const auto& x : word) {
      if (x && *x != 0) return {};
    }
    return {Completion::Status::unique, encode(0)};
  }
};

class FullCode final : public OuterCode {
 public:
  FullCode(int l, int n) : OuterCode(l, n, 1) {}
  OuterFamily family() const override { return OuterFamily::full; }
  BigInt size() const override { return big_pow(alphabet(), length()); }
  std::vector<int> encode(const BigInt& index) const override {
    if (index < 0 || index >= size()) throw std::out_of_range("outer index out of range");
    return to_digits(index, alphabet(), length());
  }
  std::optional<BigInt> index_of(std::span<const int> word) const override {
    check_word(word);
    return from_digits(word, alphabet());
  }
  Completion complete(const ErasedWord& word) const override {
    if (erasure_count(word) > 0) return {Completion::Status::ambiguous, {}};
    std::vector<int> w;
    for (const auto& x : word) w.push_back(*x);
    return {Completion::Status::unique, w};
  }
};

class RepetitionCode final : public OuterCode {
 public:
  RepetitionCode(int l, int n) : OuterCode(l, n, n) {}
  OuterFamily family() const override { return OuterFamily::repetition; }
  BigInt size() const override { return alphabet(); }
  std::vector<int> encode(const BigInt& index) const override {
    if (index < 0 || index >= alphabet()) throw std::out_of_range("outer index out of range");
    return std::vector<int>(static_cast<std::size_t>(length()), static_cast<int>(index));
  }
  std::optional<BigInt> index_of(std::span<const int> word) const override {
    check_word(word);
    if (std::all_of(word.begin(), word.end(), [&](int x) { return x == word[0]; })) return BigInt(word[0]);
    return std::nullopt;
  }
  Completion complete(const ErasedWord& word) const override {
    std::optional<int> value;
    for (const auto& x : word) {
      if (!x) continue;
      if (value && *value != *x) return {};
      value = x;
    }
    if (!value) return {alphabet() == 1 ? Completion::Status::unique : Completion::Status::ambiguous,
                        alphabet() == 1 ? encode(0) : std::vector<int>{}};
    return {Completion::Status::unique, encode(*value)};
  }
};

// Last symbol makes the sum vanish modulo l.
class ParityCode final : public OuterCode {
 public:
  ParityCode(int l, int n) : OuterCode(l, n, 2) {}
  OuterFamily family() const override { return OuterFamily::parity; }
  BigInt size() const override { return big_pow(alphabet(), length() - 1); }
  std::vector<int> encode(const BigInt& index) const override {
    if (index < 0 || index >= size()) throw std::out_of_range("outer index out of range");
    auto w = to_digits(index, alphabet(), length() - 1);
    int sum = 0;
    for (int x : w) sum = (sum + x) % alphabet();
    w.push_back((alphabet() - sum) % alphabet());
    return w;
  }
  std::optional<BigInt> index_of(std::span<const int> word) const override {
    check_word(word);
    int sum = 0;
    for (int x : word) sum = (sum + x) % alphabet();
    if (sum != 0) return std::nullopt;
    return from_digits(word.first(word.size() - 1), alphabet());
  }
  Completion complete(const ErasedWord& word) const override {
    const auto erased = erasure_count(word);
    if (erased > 1) return {Completion::Status::ambiguous, {}};
    int sum = 0;
    std::size_t hole = word.size();
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i]) {
        sum = (sum + *word[i]) % alphabet();
      } else {
        hole = i;
      }
    }
    std::vector<int> w;
    for (const auto& x : word) w.push_back(x.value_or(0));
    if (hole < word.size()) {
      w[hole] = (alphabet() - sum) % alphabet();
    } else if (sum != 0) {
      return {};
    }
    return {Completion::Status::unique, w};
  }
};

// Codewords m * G over GF(l); message digits are the index in base l.
class LinearCode final : public OuterCode {
 public:
  LinearCode(OuterFamily family, GaloisField field, Matrix generator, int distance)
      : OuterCode(field.order(), static_cast<int>(generator[0].size()), distance),
        family_(family),
        field_(std::move(field)),
        g_(std::move(generator)) {}

  OuterFamily family() const override { return family_; }
  BigInt size() const override { return big_pow(alphabet(), dimension()); }
  int dimension() const { return static_cast<int>(g_.size()); }

  std::vector<int> encode(const BigInt& index) const override {
    if (index < 0 || index >= size()) throw std::out_of_range("outer index out of range");
    const auto m = to_digits(index, alphabet(), dimension());
    std::vector<int> w(static_cast<std::size_t>(length()), 0);
    for (std::size_t r = 0; r < g_.size(); ++r) {
      if (!m[r]) continue;
      for (std::size_t c = 0; c < w.size(); ++c) w[c] = field_.add(w[c], field_.mul(m[r], g_[r][c]));
    }
    return w;
  }
  std::optional<BigInt> index_of(std::span<const int> word) const override {
    check_word(word);
    auto s = solve_left(field_, g_, std::vector<int>(word.begin(), word.end()));
    if (s.status != SolveResult::Status::unique) return std::nullopt;
    return from_digits(s.x, alphabet());
  }
  Completion complete(const ErasedWord& word) const override {
    Matrix sub(g_.size());
    std::vector<int> y;
    for (std::size_t c = 0; c < word.size(); ++c) {
      if (!word[c]) continue;
      for (std::size_t r = 0; r < g_.size(); ++r) sub[r].push_back(g_[r][c]);
      y.push_back(*word[c]);
    }
    auto s = solve_left(field_, sub, y);
    switch (s.status) {
      case SolveResult::Status::inconsistent:
        return {};
      case SolveResult::Status::underdetermined:
        return {Completion::Status::ambiguous, {}};
      case SolveResult::Status::unique:
        break;
    }
    return {Completion::Status::unique, encode(from_digits(s.x, alphabet()))};
  }

 private:
  OuterFamily family_;
  GaloisField field_;
  Matrix g_;
};

class ExplicitCode final : public OuterCode {
 public:
  ExplicitCode(int l, int n, int d, std::vector<std::vector<int>> words, bool exact)
      : OuterCode(l, n, d), words_(std::move(words)), exact_(exact) {
    std::sort(words_.begin(), words_.end());
    for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
  }
  OuterFamily family() const override { return OuterFamily::search; }
  BigInt size() const override { return words_.size(); }
  bool exact() const override { return exact_; }
  std::vector<int> encode(const BigInt& index) const override {
    if (index < 0 || index >= size()) throw std::out_of_range("outer index out of range");
    return words_[static_cast<std::size_t>(index)];
  }
  std::optional<BigInt> index_of(std::span<const int> word) const override {
    check_word(word);
    auto it = index_.find(std::vector<int>(word.begin(), word.end()));
    if (it == index_.end()) return std::nullopt;
    return BigInt(it->second);
  }
  Completion complete(const ErasedWord& word) const override {
    const std::vector<int>* match = nullptr;
    for (const auto& w : words_) {
      bool agree = true;
      for (std::size_t i = 0; i < w.size() && agree; ++i) agree = !word[i] || *word[i] == w[i];
      if (!agree) continue;
      if (match) return {Completion::Status::ambiguous, {}};
      match = &w;
    }
    if (!match) return {};
    return {Completion::Status::unique, *match};
  }

 private:
  std::vector<std::vector<int>> words_;
  std::map<std::vector<int>, std::size_t> index_;
  bool exact_;
};

GaloisField require_field(int l, std::string_view family) {
  auto f = GaloisField::create(l);
  if (!f) throw UnsupportedOuterCode(std::string(family) + ": alphabet " + std::to_string(l) + " is not a supported prime power");
  return *f;
}

OuterCodePtr make_reed_solomon(int l, int n, int d) {
  auto field = require_field(l, "reed_solomon");
  if (n > l) throw UnsupportedOuterCode("reed_solomon: length exceeds the field size");
  if (d > n) throw UnsupportedOuterCode("reed_solomon: distance exceeds length");
  const int k = n - std::max(d, 1) + 1;
  Matrix g(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(n)));
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < n; ++c) g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = field.pow(c, r);
  }
  return std::make_shared<LinearCode>(OuterFamily::reed_solomon, std::move(field), std::move(g), n - k + 1);
}

OuterCodePtr make_hamming(int l, int n, int d) {
  auto field = require_field(l, "hamming");
  if (d > 3) throw UnsupportedOuterCode("hamming: distance above 3");
  int r = 1;
  long long columns = 1;
  while (columns < n) {
    ++r;
    columns = columns * l + 1;
  }
  if (n - r < 1) throw UnsupportedOuterCode("hamming: length too short for a nontrivial code");

  // Unit vectors first, then every other vector whose first nonzero entry is 1.
  std::vector<std::vector<int>> cols;
  for (int i = 0; i < r; ++i) {
    std::vector<int> v(static_cast<std::size_t>(r), 0);
    v[static_cast<std::size_t>(i)] = 1;
    cols.push_back(v);
  }
  const BigInt total = big_pow(l, r);
  for (BigInt x = 1; x < total && static_cast<int>(cols.size()) < n; ++x) {
    auto v = to_digits(x, l, r);
    auto first = std::find_if(v.begin(), v.end(), [](int e) { return e != 0; });
    if (*first != 1 || std::count(v.begin(), v.end(), 0) == r - 1) continue;
    cols.push_back(v);
  }
  Matrix h(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(n)));
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < r; ++i) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
  }
  auto g = null_space(field, h);
  return std::make_shared<LinearCode>(OuterFamily::hamming, std::move(field), std::move(g), 3);
}

OuterCodePtr make_search(int l, int n, int d, std::uint64_t budget) {
  const BigInt space = big_pow(l, n);
  if (space > 4096) throw UnsupportedOuterCode("search: space of " + space.str() + " words is too large");
  const int count = static_cast<int>(space);
  std::vector<std::vector<int>> words;
  for (int v = 0; v < count; ++v) words.push_back(to_digits(v, l, n));
  Graph g(count);
  for (int a = 0; a < count; ++a) {
    for (int b = a + 1; b < count; ++b) {
      if (hamming_distance(words[static_cast<std::size_t>(a)], words[static_cast<std::size_t>(b)]) < d) g.add_edge(a, b);
    }
  }
  g.finalize();
  auto mis = max_independent_set(g, budget);
  std::vector<std::vector<int>> chosen;
  for (int v : mis.vertices) chosen.push_back(words[static_cast<std::size_t>(v)]);
  return std::make_shared<ExplicitCode>(l, n, std::max(d, 1), std::move(chosen), mis.exact);
}

}  // namespace

std::string_view to_string(OuterFamily family) {
  switch (family) {
    case OuterFamily::trivial: return "trivial";
    case OuterFamily::full: return "full";
    case OuterFamily::repetition: return "repetition";
    case OuterFamily::parity: return "parity";
    case OuterFamily::reed_solomon: return "reed_solomon";
    case OuterFamily::hamming: return "hamming";
    case OuterFamily::search: return "search";
  }
  return "?";
}

OuterFamily parse_outer_family(std::string_view text) {
  for (auto f : {OuterFamily::trivial, OuterFamily::full, OuterFamily::repetition, OuterFamily::parity,
                 OuterFamily::reed_solomon, OuterFamily::hamming, OuterFamily::search}) {
    if (text == to_string(f)) return f;
  }
  if (text == "rep") return OuterFamily::repetition;
  if (text == "mds" || text == "rs") return OuterFamily::reed_solomon;
  throw std::invalid_argument("unknown outer code family: " + std::string(text));
}

void OuterCode::check_word(std::span<const int> word) const {
  if (static_cast<int>(word.size()) != length_) throw std::invalid_argument("outer word has wrong length");
  for (int x : word) {
    if (x < 0 || x >= alphabet_) throw std::invalid_argument("outer symbol out of range");
  }
}

std::string OuterCode::describe() const {
  std::ostringstream os;
  os << to_string(family()) << "(l=" << alphabet() << ",n=" << length() << ",d=";
  if (distance() >= kInfiniteDistance) {
    os << "inf";
  } else {
    os << distance();
  }
  os << ",size=" << size() << (exact() ? "" : ",inexact") << ")";
  return os.str();
}

int hamming_distance(std::span<const int> a, std::span<const int> b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

OuterCodePtr make_outer_code(OuterFamily family, int alphabet, int length, int distance, std::uint64_t node_budget) {
  if (alphabet < 1 || length < 1) throw UnsupportedOuterCode("outer code needs alphabet >= 1 and length >= 1");
  const int d = std::max(distance, 1);
  switch (family) {
    case OuterFamily::trivial:
      return std::make_shared<TrivialCode>(alphabet, length);
    case OuterFamily::full:
      if (d > 1 && alphabet > 1) throw UnsupportedOuterCode("full: distance above 1");
      return std::make_shared<FullCode>(alphabet, length);
    case OuterFamily::repetition:
      if (d > length) throw UnsupportedOuterCode("repetition: distance exceeds length");
      return std::make_shared<RepetitionCode>(alphabet, length);
    case OuterFamily::parity:
      if (length < 2 || d > 2) throw UnsupportedOuterCode("parity: needs length >= 2 and distance <= 2");
      return std::make_shared<ParityCode>(alphabet, length);
    case OuterFamily::reed_solomon:
      return make_reed_solomon(alphabet, length, d);
    case OuterFamily::hamming:
      return make_hamming(alphabet, length, d);
    case OuterFamily::search:
      return make_search(alphabet, length, d, node_budget);
  }
  throw UnsupportedOuterCode("unknown family");
}

OuterCodePtr outer_code_factory(int alphabet, int length, int distance) {
  if (alphabet < 1 || length < 1) throw UnsupportedOuterCode("outer code needs alphabet >= 1 and length >= 1");
  if (alphabet == 1 || distance > length) return make_outer_code(OuterFamily::trivial, alphabet, length, distance);
  if (distance <= 1) return make_outer_code(OuterFamily::full, alphabet, length, distance);

  OuterCodePtr best;
  for (auto f : {OuterFamily::reed_solomon, OuterFamily::hamming, OuterFamily::parity, OuterFamily::repetition}) {
    try {
      auto c = make_outer_code(f, alphabet, length, distance);
      if (!best || c->size() > best->size()) best = std::move(c);
    } catch (const UnsupportedOuterCode&) {
    }
  }
  if (best->size() < outer_upper_bound(alphabet, length, distance) && big_pow(alphabet, length) <= 64) {
    auto c = make_outer_code(OuterFamily::search, alphabet, length, distance);
    if (c->size() > best->size()) best = std::move(c);
  }
  return best;
}

BigInt outer_upper_bound(int alphabet, int length, int distance) {
  if (distance <= 1) return big_pow(alphabet, length);
  if (distance > length) return 1;
  const BigInt singleton = big_pow(alphabet, length - distance + 1);
  BigInt volume = 0;
  BigInt choose = 1;
  for (int i = 0; i <= (distance - 1) / 2; ++i) {
    if (i > 0) choose = choose * (length - i + 1) / i;
    volume += choose * big_pow(alphabet - 1, i);
  }
  const BigInt packing = big_pow(alphabet, length) / volume;
  return std::min(singleton, packing);
}

bool outer_known_optimal(const OuterCode& code, int distance) {
  if (code.family() == OuterFamily::search) return code.exact();
  return code.size() == outer_upper_bound(code.alphabet(), code.length(), distance);
}

std::optional<int> measured_min_distance(const OuterCode& code, std::uint64_t max_codewords) {
  if (code.size() > max_codewords) return std::nullopt;
  const auto count = static_cast<std::uint64_t>(code.size());
  std::vector<std::vector<int>> words;
  for (std::uint64_t i = 0; i < count; ++i) words.push_back(code.encode(i));
  int best = kInfiniteDistance;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) best = std::min(best, hamming_distance(words[a], words[b]));
  }
  return best;
}

}  // namespace rmtail
