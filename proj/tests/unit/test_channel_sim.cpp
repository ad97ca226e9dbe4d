#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmtail/channel_sim.hpp"

using namespace rmtail;

namespace {

CompositeDesign table_design() {
  return {parse_design_perm("AC", 4), 10, {ErrorMass::Kind::designated, parse_rational("0.01"), 3}, {}};
}

double binom_pmf(int n, int k, double p) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * std::pow(p, k) *
         std::pow(1 - p, n - k);
}

double prob(const ExactDistribution& d, std::string_view label, int q) {
  auto it = d.find(parse_outcome(label, q));
  return it == d.end() ? 0.0 : to_double(it->second);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("0.01") == Rational(1, 100));
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("2") == 2);
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("."));
}

TEST_CASE("design distribution") {
  const auto p = design_distribution(table_design());
  CHECK(p == std::vector<Rational>{Rational(33, 100), Rational(66, 100), 0, Rational(1, 100)});
  const auto clean = design_distribution(parse_design_perm("AC", 4), {});
  CHECK(clean[0] == Rational(1, 3));
  CHECK(clean[1] == Rational(2, 3));
  const auto point = design_distribution(parse_perm("3", 4), {});
  CHECK(point[2] == 1);

  ErrorMass collide{ErrorMass::Kind::designated, Rational(1, 100), 0};
  CHECK_THROWS_AS(design_distribution(parse_design_perm("AC", 4), collide), std::invalid_argument);
  ErrorMass spread{ErrorMass::Kind::uniform_unused, Rational(1, 10), 0};
  CHECK_THROWS_AS(design_distribution(parse_perm("1234", 4), spread), std::invalid_argument);
  const auto u = design_distribution(parse_perm("12", 4), spread);
  CHECK(u[2] == Rational(1, 20));
  CHECK(u[3] == Rational(1, 20));
  CHECK_THROWS(design_distribution(parse_perm("12", 4), {ErrorMass::Kind::uniform_unused, 1, 0}));

  WeightRule geo{WeightRule::Kind::geometric, 2};
  const auto g = design_distribution(parse_perm("312", 3), {}, geo);
  CHECK(g[2] == Rational(2, 14));
  CHECK(g[0] == Rational(4, 14));
  CHECK(g[1] == Rational(8, 14));
}

TEST_CASE("outcome classification and labels") {
  CHECK(Outcome::classify({3, 7, 0, 0}).ranking == std::vector<Symbol>{0, 1});
  CHECK(Outcome::classify({5, 5, 0, 0}).tie);
  CHECK(Outcome::classify({0, 10, 0, 0}).ranking == std::vector<Symbol>{1});
  CHECK(to_string(Outcome::classify({2, 7, 0, 1}), 4) == "T < A < C");
  CHECK(to_string(Outcome::classify({2, 7, 0, 1, 0}), 5) == "4 < 1 < 2");
  CHECK(parse_outcome("T < C < A", 4) == Outcome::classify({7, 2, 0, 1}));
  CHECK(to_string(parse_design_perm("GA", 4)) == "31");
}

TEST_CASE("AC composite outcome table") {
  const auto d = exact_outcomes(table_design());
  CHECK(std::abs(prob(d, "A < C", 4) - 0.695949) < 1e-6);
  CHECK(std::abs(prob(d, "C < A", 4) - 0.069227) < 1e-6);
  CHECK(std::abs(prob(d, "T < A < C", 4) - 0.066184) < 1e-6);
  CHECK(std::abs(prob(d, "C", 4) - 0.015683) < 1e-6);
  CHECK(std::abs(prob(d, "T < C < A", 4) - 0.013427) < 1e-6);

  Rational total = 0;
  Rational strict = 0;
  for (const auto& [o, p] : d) {
    total += p;
    if (!o.tie) strict += p;
  }
  CHECK(total == 1);
  CHECK(d.at(Outcome{{}, true}) == 1 - strict);

  // Independent closed forms: all reads C, and no T with 1 <= #A <= 4.
  CHECK(std::abs(prob(d, "C", 4) - std::pow(0.66, 10)) < 1e-12);
  double a_lt_c = 0;
  for (int k = 1; k <= 4; ++k) a_lt_c += binom_pmf(10, k, 1.0 / 3);
  CHECK(std::abs(prob(d, "A < C", 4) - std::pow(0.99, 10) * a_lt_c) < 1e-12);
}

TEST_CASE("raw count comparison for the two-symbol design") {
  const auto p = design_distribution(parse_design_perm("AC", 4), {});
  const auto c = count_order_probability(p, 10, 0, 1);
  CHECK(c.less + c.equal + c.greater == 1);
  CHECK(std::abs(to_double(c.less) - 0.787) < 5e-4);
  CHECK(std::abs(to_double(c.equal + c.greater) - 0.213) < 5e-4);
  double oracle = 0;
  for (int k = 0; k <= 4; ++k) oracle += binom_pmf(10, k, 1.0 / 3);
  CHECK(std::abs(to_double(c.less) - oracle) < 1e-12);
}

TEST_CASE("floating route agrees with exact enumeration") {
  for (const char* perm : {"AC", "TAC", "GCAT", "C"}) {
    CompositeDesign d{parse_design_perm(perm, 4), 12, {ErrorMass::Kind::uniform_unused, parse_rational("0.02"), 0}, {}};
    if (d.perm.size() == 4) d.error.eps = 0;
    const auto exact = exact_outcomes(d);
    std::vector<double> probs;
    for (const auto& x : design_distribution(d)) probs.push_back(to_double(x));
    const auto approx = float_outcomes(probs, d.reads);
    CHECK(exact.size() == approx.size());
    for (const auto& [o, p] : exact) CHECK(std::abs(to_double(p) - approx.at(o)) < 1e-12);
  }
}

TEST_CASE("modal outcome is the sent ranking for many reads") {
  CompositeDesign d{parse_perm("312", 3), 200, {}, {}};
  const auto dist = exact_outcomes(d);
  const auto mode = std::max_element(dist.begin(), dist.end(), [](auto& a, auto& b) { return a.second < b.second; });
  CHECK(mode->first.ranking == std::vector<Symbol>{2, 0, 1});
}

TEST_CASE("budget") {
  CHECK(composition_count(10, 3) == 66);
  CompositeDesign d{parse_perm("1234", 4), 400, {}, {}};
  CHECK_THROWS_AS(exact_outcomes(d, 1000), BudgetExceeded);
}

TEST_CASE("single read") {
  CompositeDesign d = table_design();
  d.reads = 1;
  const auto dist = exact_outcomes(d);
  CHECK(dist.at(parse_outcome("A", 4)) == Rational(33, 100));
  CHECK(dist.at(parse_outcome("T", 4)) == Rational(1, 100));
}

TEST_CASE("seeded sampling matches the frozen trace") {
  const ReadSampler sampler({0.33, 0.66, 0.0, 0.01});
  std::mt19937_64 rng(20240917);
  const std::vector<std::string> trace{"A < C", "A < C", "A < C", "A < C", "A < C", "T < A < C",
                                       "C",     "A < C", "A < C", "A < C", "A < C", "A < C"};
  for (const auto& expected : trace) CHECK(to_string(sampler.sample(10, rng).outcome, 4) == expected);
  std::mt19937_64 again(7);
  CHECK(sampler.sample(10, again).counts == std::vector<int>{4, 6, 0, 0});
  const auto a = sample_reads(table_design(), 99);
  const auto b = sample_reads(table_design(), 99);
  CHECK(a.counts == b.counts);
}

TEST_CASE("Monte Carlo frequencies fall within 3 sigma of the exact values") {
  const auto design = table_design();
  const auto exact = exact_outcomes(design);
  const std::uint64_t n = 1'000'000;
  const auto mc = monte_carlo_outcomes(design, n, 2024);
  for (const auto& [o, p] : exact) {
    const double pe = to_double(p);
    const auto it = mc.counts.find(o);
    const double freq = it == mc.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
    const double sigma = std::sqrt(pe * (1 - pe) / static_cast<double>(n));
    CAPTURE(to_string(o, 4));
    CHECK(std::abs(freq - pe) <= 3 * sigma + 1e-12);
  }
}

TEST_CASE("coordinate events") {
  const auto sent = parse_perm("2413", 4);
  CHECK(classify_event(sent, Outcome{{1, 3, 0, 2}, false}) == CoordinateEvent::exact);
  CHECK(classify_event(sent, Outcome{{0, 2}, false}) == CoordinateEvent::tail_deletion);
  CHECK(classify_event(parse_perm("13", 4), Outcome{{3, 0, 2}, false}) == CoordinateEvent::tail_insertion);
  CHECK(classify_event(sent, Outcome{{3, 1, 0, 2}, false}) == CoordinateEvent::other);
  CHECK(classify_event(sent, Outcome{{}, true}) == CoordinateEvent::tie);
}

TEST_CASE("end to end through a tensor code") {
  const auto code = correcting_ttpc(6, 2, 7, 1);
  EndToEndConfig clean;
  clean.noiseless = true;
  clean.trials = 200;
  const auto r0 = end_to_end_trial(code, clean);
  CHECK(r0.success.hits == 200);
  CHECK(r0.in_model.hits == 200);

  EndToEndConfig noisy;
  noisy.reads = 1000;
  noisy.rule = {WeightRule::Kind::geometric, 3};
  noisy.trials = 2000;
  noisy.seed = 5;
  const auto r = end_to_end_trial(code, noisy);
  CHECK(r.in_model_success.total > 100);
  CHECK(r.in_model_success.hits == r.in_model_success.total);
  CHECK(r.success.hits >= r.in_model.hits);
  CHECK(r.silent_error.hits <= r.in_model.total - r.in_model.hits);
  CHECK(r.events.count(CoordinateEvent::tail_deletion));
  const auto [lo, hi] = r.success.wilson();
  CHECK(lo <= r.success.rate());
  CHECK(r.success.rate() <= hi);
}
