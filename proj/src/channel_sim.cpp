#include "rmtail/channel_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "detail/random.hpp"
#include "rmtail/tail_ops.hpp"

namespace rmtail {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::string_view kNucleotides = "ACGT";

Rational rational_pow(const Rational& base, int exp) {
  Rational r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Visits every count vector of `reads` over `slots` entries.
template <typename Visit>
void for_each_composition(int reads, int slots, Visit&& visit) {
  std::vector<int> counts(static_cast<std::size_t>(slots), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == slots - 1) {
      counts[static_cast<std::size_t>(pos)] = left;
      visit(counts);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, left - c);
    }
  };
  if (slots > 0) rec(rec, 0, reads);
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

BigInt uniform_big(detail::Rng& rng, const BigInt& bound) {
  const auto bits = msb(bound) + 1;
  for (;;) {
    BigInt x = 0;
    for (std::size_t got = 0; got < bits; got += 64) x = (x << 64) | BigInt(rng());
    x &= (BigInt(1) << bits) - 1;
    if (x < bound) return x;
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return Rational(parse_rational(text.substr(0, slash))) / parse_rational(text.substr(slash + 1));
  }
  if (text.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++i;
  }
  cpp_int num = 0;
  cpp_int den = 1;
  bool dot = false;
  bool digits = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !dot) {
      dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (dot) den *= 10;
      digits = true;
    } else {
      throw std::invalid_argument("not a decimal number: " + std::string(text));
    }
  }
  if (!digits) throw std::invalid_argument("not a decimal number: " + std::string(text));
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

std::vector<Rational> WeightRule::weights(int m) const {
  std::vector<Rational> w(static_cast<std::size_t>(m));
  Rational total = 0;
  for (int k = 1; k <= m; ++k) {
    w[static_cast<std::size_t>(k - 1)] = kind == Kind::rank_proportional ? Rational(k) : rational_pow(ratio, k);
    total += w[static_cast<std::size_t>(k - 1)];
  }
  for (auto& x : w) x /= total;
  return w;
}

std::vector<Rational> design_distribution(const PartialPermutation& perm, const ErrorMass& error, const WeightRule& rule) {
  if (error.eps < 0 || error.eps >= 1) throw std::invalid_argument("eps must lie in [0, 1)");
  if (rule.kind == WeightRule::Kind::geometric && rule.ratio <= 0) throw std::invalid_argument("geometric ratio must be positive");
  const int q = perm.alphabet_size();
  std::vector<Rational> p(static_cast<std::size_t>(q), Rational(0));
  const auto w = rule.weights(perm.size());
  for (int k = 0; k < perm.size(); ++k) p[perm[k]] = w[static_cast<std::size_t>(k)] * (1 - error.eps);
  if (error.eps == 0) return p;

  if (error.kind == ErrorMass::Kind::designated) {
    if (error.symbol >= q) throw std::invalid_argument("error symbol outside the alphabet");
    if (perm.contains(error.symbol)) throw std::invalid_argument("error symbol is part of the permutation");
    p[error.symbol] = error.eps;
  } else {
    const int unused = q - perm.size();
    if (unused == 0) throw std::invalid_argument("no unused symbol to receive the error mass");
    for (int s = 0; s < q; ++s) {
      if (!perm.contains(static_cast<Symbol>(s))) p[static_cast<std::size_t>(s)] = error.eps / unused;
    }
  }
  return p;
}

std::vector<Rational> design_distribution(const CompositeDesign& design) {
  return design_distribution(design.perm, design.error, design.rule);
}

Outcome Outcome::classify(const std::vector<int>& counts) {
  std::vector<std::pair<int, Symbol>> seen;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] > 0) seen.emplace_back(counts[s], static_cast<Symbol>(s));
  }
  std::sort(seen.begin(), seen.end());
  Outcome o;
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i].first == seen[i - 1].first) {
      o.tie = true;
      return o;
    }
  }
  for (const auto& [c, s] : seen) o.ranking.push_back(s);
  return o;
}

std::optional<PartialPermutation> Outcome::as_perm(int q) const {
  if (tie || ranking.empty()) return std::nullopt;
  return PartialPermutation(std::span<const Symbol>(ranking), q);
}

std::string symbol_name(Symbol s, int q) {
  if (q <= 4) return std::string(1, kNucleotides[s]);
  return std::to_string(s + 1);
}

std::string to_string(const Outcome& o, int q) {
  if (o.tie) return "tie";
  std::string out;
  for (std::size_t i = 0; i < o.ranking.size(); ++i) {
    if (i) out += " < ";
    out += symbol_name(o.ranking[i], q);
  }
  return out;
}

Outcome parse_outcome(std::string_view text, int q) {
  Outcome o;
  if (text == "tie") {
    o.tie = true;
    return o;
  }
  std::size_t start = 0;
  for (;;) {
    const auto sep = text.find('<', start);
    auto token = text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    bool found = false;
    for (int s = 0; s < q && !found; ++s) {
      if (token == symbol_name(static_cast<Symbol>(s), q)) {
        o.ranking.push_back(static_cast<Symbol>(s));
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unknown symbol in outcome: " + std::string(token));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return o;
}

PartialPermutation parse_design_perm(std::string_view text, int q) {
  if (q <= 4 && !text.empty() && kNucleotides.find(text[0]) != std::string_view::npos) {
    std::vector<int> symbols;
    for (char c : text) {
      const auto pos = kNucleotides.find(c);
      if (pos == std::string_view::npos) throw PermError("unknown nucleotide in " + std::string(text));
      symbols.push_back(static_cast<int>(pos));
    }
    return make_perm(symbols, q);
  }
  return parse_perm(text, q);
}

std::uint64_t composition_count(int reads, int support) {
  if (support <= 0) return 0;
  // C(reads + support - 1, support - 1), saturating.
  long double c = 1;
  for (int i = 1; i < support; ++i) c = c * (reads + i) / i;
  return c > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(std::llround(c));
}

ExactDistribution exact_outcomes(const std::vector<Rational>& probs, int reads, std::uint64_t budget) {
  if (reads < 1) throw std::invalid_argument("need at least one read");
  std::vector<std::size_t> support;
  for (std::size_t s = 0; s < probs.size(); ++s) {
    if (probs[s] < 0) throw std::invalid_argument("negative probability");
    if (probs[s] > 0) support.push_back(s);
  }
  const auto work = composition_count(reads, static_cast<int>(support.size()));
  if (work > budget) {
    throw BudgetExceeded(std::to_string(work) + " count vectors exceed the budget of " + std::to_string(budget));
  }
  std::vector<std::vector<Rational>> powers(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    powers[i].push_back(1);
    for (int k = 1; k <= reads; ++k) powers[i].push_back(powers[i].back() * probs[support[i]]);
  }
  std::vector<cpp_int> fact{1};
  for (int k = 1; k <= reads; ++k) fact.push_back(fact.back() * k);

  ExactDistribution out;
  std::vector<int> full(probs.size(), 0);
  for_each_composition(reads, static_cast<int>(support.size()), [&](const std::vector<int>& counts) {
    cpp_int denom = 1;
    Rational pmf = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      denom *= fact[static_cast<std::size_t>(counts[i])];
      pmf *= powers[i][static_cast<std::size_t>(counts[i])];
      full[support[i]] = counts[i];
    }
    pmf *= Rational(fact.back(), denom);
    out[Outcome::classify(full)] += pmf;
  });
  return out;
}

ExactDistribution exact_outcomes(const CompositeDesign& design, std::uint64_t budget) {
  return exact_outcomes(design_distribution(design), design.reads, budget);
}

FloatDistribution float_outcomes(const std::vector<double>& probs, int reads, std::uint64_t budget) {
  if (reads < 1) throw std::invalid_argument("need at least one read");
  std::vector<std::size_t> support;
  for (std::size_t s = 0; s < probs.size(); ++s) {
    if (probs[s] > 0) support.push_back(s);
  }
  const auto work = composition_count(reads, static_cast<int>(support.size()));
  if (work > budget) throw BudgetExceeded(std::to_string(work) + " count vectors exceed the budget");
  std::vector<double> logp;
  for (auto s : support) logp.push_back(std::log(probs[s]));
  const double log_n = std::lgamma(reads + 1.0);

  std::map<Outcome, CompensatedSum> acc;
  std::vector<int> full(probs.size(), 0);
  for_each_composition(reads, static_cast<int>(support.size()), [&](const std::vector<int>& counts) {
    double lp = log_n;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      lp += counts[i] * logp[i] - std::lgamma(counts[i] + 1.0);
      full[support[i]] = counts[i];
    }
    acc[Outcome::classify(full)].add(std::exp(lp));
  });
  FloatDistribution out;
  for (const auto& [o, s] : acc) out[o] = s.value();
  return out;
}

CountComparison count_order_probability(const std::vector<Rational>& probs, int reads, Symbol a, Symbol b) {
  if (a >= probs.size() || b >= probs.size() || a == b) throw std::invalid_argument("need two distinct symbols");
  const Rational pa = probs[a];
  const Rational pb = probs[b];
  const Rational rest = 1 - pa - pb;
  std::vector<cpp_int> fact{1};
  for (int k = 1; k <= reads; ++k) fact.push_back(fact.back() * k);
  CountComparison out;
  for (int na = 0; na <= reads; ++na) {
    for (int nb = 0; na + nb <= reads; ++nb) {
      const int nr = reads - na - nb;
      if (nr > 0 && rest == 0) continue;
      Rational pmf(fact.back(), fact[static_cast<std::size_t>(na)] * fact[static_cast<std::size_t>(nb)] * fact[static_cast<std::size_t>(nr)]);
      pmf *= rational_pow(pa, na) * rational_pow(pb, nb) * rational_pow(rest, nr);
      (na < nb ? out.less : na == nb ? out.equal : out.greater) += pmf;
    }
  }
  return out;
}

ReadSampler::ReadSampler(const std::vector<double>& probs) {
  double total = 0;
  for (double p : probs) {
    total += p;
    cdf_.push_back(total);
  }
  for (auto& c : cdf_) c /= total;
}

ReadSample ReadSampler::sample(int reads, std::mt19937_64& rng) const {
  ReadSample out;
  out.counts.assign(cdf_.size(), 0);
  for (int r = 0; r < reads; ++r) {
    const double u = detail::uniform_unit(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    ++out.counts[static_cast<std::size_t>(it - cdf_.begin())];
  }
  out.outcome = Outcome::classify(out.counts);
  return out;
}

ReadSample sample_reads(const CompositeDesign& design, std::uint64_t seed) {
  std::vector<double> probs;
  for (const auto& p : design_distribution(design)) probs.push_back(to_double(p));
  detail::Rng rng(seed);
  return ReadSampler(probs).sample(design.reads, rng);
}

McResult monte_carlo_outcomes(const CompositeDesign& design, std::uint64_t trials, std::uint64_t seed) {
  std::vector<double> probs;
  for (const auto& p : design_distribution(design)) probs.push_back(to_double(p));
  const ReadSampler sampler(probs);
  detail::Rng rng(seed);
  McResult out;
  out.trials = trials;
  out.seed = seed;
  for (std::uint64_t i = 0; i < trials; ++i) ++out.counts[sampler.sample(design.reads, rng).outcome];
  return out;
}

std::string_view to_string(CoordinateEvent e) {
  switch (e) {
    case CoordinateEvent::exact: return "exact";
    case CoordinateEvent::tail_deletion: return "tail_deletion";
    case CoordinateEvent::tail_insertion: return "tail_insertion";
    case CoordinateEvent::other: return "other";
    case CoordinateEvent::tie: return "tie";
  }
  return "?";
}

CoordinateEvent classify_event(const PartialPermutation& sent, const Outcome& observed) {
  if (observed.tie) return CoordinateEvent::tie;
  const auto r = observed.as_perm(sent.alphabet_size());
  if (!r) return CoordinateEvent::other;
  if (*r == sent) return CoordinateEvent::exact;
  auto is_proper_suffix = [](const PartialPermutation& shorter, const PartialPermutation& longer) {
    return shorter.size() < longer.size() && longer.suffix_from(longer.size() - shorter.size()) == shorter;
  };
  if (is_proper_suffix(*r, sent)) return CoordinateEvent::tail_deletion;
  if (is_proper_suffix(sent, *r)) return CoordinateEvent::tail_insertion;
  return CoordinateEvent::other;
}

std::pair<double, double> Proportion::wilson() const {
  if (total == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(total);
  const double p = rate();
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
  return {hits == 0 ? 0.0 : std::max(0.0, centre - half), hits == total ? 1.0 : std::min(1.0, centre + half)};
}

EndToEndReport end_to_end_trial(const Ttpc& code, const EndToEndConfig& config) {
  const int q = code.partition().q();
  const int t = code.partition().t();
  detail::Rng rng(config.seed);
  std::unordered_map<std::uint64_t, ReadSampler> samplers;
  auto sampler_for = [&](const PartialPermutation& p) -> const ReadSampler& {
    auto it = samplers.find(p.key());
    if (it != samplers.end()) return it->second;
    ErrorMass error = config.error;
    if (p.size() == q) error.eps = 0;
    std::vector<double> probs;
    for (const auto& x : design_distribution(p, error, config.rule)) probs.push_back(to_double(x));
    return samplers.emplace(p.key(), ReadSampler(probs)).first->second;
  };

  EndToEndReport report;
  report.trials = config.trials;
  report.seed = config.seed;
  const BigInt space = code.message_space();
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    const auto sent = code.encode(uniform_big(rng, space));
    PermVector received;
    bool in_model = true;
    bool readable = true;
    int deleted = 0;
    for (const auto& c : sent) {
      const auto outcome = config.noiseless ? Outcome{{c.symbols().begin(), c.symbols().end()}, false}
                                            : sampler_for(c).sample(config.reads, rng).outcome;
      const auto event = classify_event(c, outcome);
      ++report.events[event];
      if (event == CoordinateEvent::tail_deletion) {
        ++deleted;
        if (c.size() - outcome.ranking.size() > static_cast<std::size_t>(t)) in_model = false;
      } else if (event != CoordinateEvent::exact) {
        in_model = false;
      }
      if (auto r = outcome.as_perm(q)) {
        received.push_back(*r);
      } else {
        readable = false;
      }
    }
    in_model = in_model && deleted <= config.e;

    bool ok = false;
    bool wrong = false;
    if (readable) {
      const auto r = code.decode(received, config.e);
      if (r.codeword) {
        ok = *r.codeword == sent;
        wrong = !ok;
      }
    }
    ++report.success.total;
    ++report.silent_error.total;
    ++report.in_model.total;
    report.success.hits += ok;
    report.silent_error.hits += wrong;
    report.in_model.hits += in_model;
    if (in_model) {
      ++report.in_model_success.total;
      report.in_model_success.hits += ok;
    }
  }
  return report;
}

}  // namespace rmtail
