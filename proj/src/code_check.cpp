#include "rmtail/code_check.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "detail/random.hpp"

namespace rmtail {

std::string_view to_string(Capability capability) {
  return capability == Capability::detect ? "detect" : "correct";
}

Capability parse_capability(std::string_view text) {
  if (text == "detect" || text == "det") return Capability::detect;
  if (text == "correct" || text == "cor") return Capability::correct;
  throw std::invalid_argument("unknown capability '" + std::string(text) + "'");
}

TailCode::TailCode(int q, std::vector<PartialPermutation> members, std::optional<Claim> claim)
    : q_(q), members_(std::move(members)), claim_(claim) {
  for (const auto& m : members_) {
    if (m.alphabet_size() != q) throw PermError("code member " + to_string(m) + " has a different alphabet size");
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  keys_.reserve(members_.size());
  for (const auto& m : members_) keys_.insert(m.key());
}

bool TailCode::contains(const PartialPermutation& p) const {
  return p.alphabet_size() == q_ && keys_.count(p.key()) != 0;
}

std::optional<std::size_t> TailCode::index_of(const PartialPermutation& p) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), p);
  if (it == members_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

CheckResult is_detecting(const TailCode& code, ErrorModel model, int t) {
  for (const auto& x : code.members()) {
    for (const auto& y : ball(x, model, t)) {
      if (y != x && code.contains(y)) return {false, Violation{x, y, std::nullopt}};
    }
  }
  return {};
}

CheckResult is_correcting(const TailCode& code, ErrorModel model, int t) {
  std::unordered_map<std::uint64_t, std::size_t> owner;
  const auto& members = code.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const auto& z : ball(members[i], model, t)) {
      auto [it, inserted] = owner.emplace(z.key(), i);
      if (!inserted && it->second != i) return {false, Violation{members[it->second], members[i], z}};
    }
  }
  return {};
}

CheckResult check_capability(const TailCode& code, const Claim& claim) {
  return claim.capability == Capability::detect ? is_detecting(code, claim.model, claim.t)
                                                 : is_correcting(code, claim.model, claim.t);
}

BallTable::BallTable(int q, ErrorModel model, int t) : q_(q) {
  const auto universe = enumerate_universe(q);
  balls_.reserve(universe.size());
  for (const auto& x : universe) {
    std::vector<int> b;
    for (const auto& y : rmtail::ball(x, model, t)) b.push_back(static_cast<int>(universe_rank(y)));
    std::sort(b.begin(), b.end());
    balls_.push_back(std::move(b));
  }
  stamp_.assign(balls_.size(), 0);
  owner_.assign(balls_.size(), -1);
}

bool BallTable::detecting(const std::vector<int>& code) const {
  ++epoch_;
  for (int v : code) stamp_[static_cast<std::size_t>(v)] = epoch_;
  for (int v : code) {
    for (int u : balls_[static_cast<std::size_t>(v)]) {
      if (u != v && stamp_[static_cast<std::size_t>(u)] == epoch_) return false;
    }
  }
  return true;
}

bool BallTable::correcting(const std::vector<int>& code) const {
  ++epoch_;
  for (int v : code) {
    for (int z : balls_[static_cast<std::size_t>(v)]) {
      const auto zi = static_cast<std::size_t>(z);
      if (stamp_[zi] == epoch_ && owner_[zi] != v) return false;
      stamp_[zi] = epoch_;
      owner_[zi] = v;
    }
  }
  return true;
}

Graph build_conflict_graph(int q, ErrorModel model, int t, Capability capability) {
  const BallTable table(q, model, t);
  const auto n = static_cast<int>(table.universe());
  Graph graph(n);
  if (capability == Capability::detect) {
    for (int x = 0; x < n; ++x) {
      for (int y : table.ball(x)) graph.add_edge(x, y);
    }
  } else {
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      for (int z : table.ball(x)) holders[static_cast<std::size_t>(z)].push_back(x);
    }
    for (const auto& list : holders) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) graph.add_edge(list[i], list[j]);
      }
    }
  }
  graph.finalize();
  return graph;
}

OracleResult max_code_oracle(int q, int t, ErrorModel model, Capability capability, std::uint64_t node_budget) {
  if (t < 0) throw std::invalid_argument("radius must be non-negative");
  const Graph graph = build_conflict_graph(q, model, t, capability);
  const IndependentSet mis = max_independent_set(graph, node_budget);
  std::vector<PartialPermutation> members;
  members.reserve(mis.vertices.size());
  for (int v : mis.vertices) members.push_back(universe_unrank(q, static_cast<std::uint64_t>(v)));
  OracleResult out;
  out.size = mis.vertices.size();
  out.witness = TailCode(q, std::move(members), Claim{model, t, capability});
  out.exact = mis.exact;
  out.nodes = mis.nodes;
  return out;
}

bool EquivalenceReport::passed() const {
  for (const auto& tally : implications) {
    if (tally.violations) return false;
  }
  for (const auto& f : fixtures) {
    if (!f.passed) return false;
  }
  return true;
}

namespace {

std::vector<int> greedy_repair(const Graph& conflicts, std::vector<int> code, detail::Rng& rng,
                               std::vector<char>& scratch) {
  detail::shuffle(code, rng);
  std::vector<int> kept;
  for (int v : code) {
    bool clash = false;
    for (int u : conflicts.adjacency[static_cast<std::size_t>(v)]) {
      if (scratch[static_cast<std::size_t>(u)]) {
        clash = true;
        break;
      }
    }
    if (!clash) {
      kept.push_back(v);
      scratch[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (int v : kept) scratch[static_cast<std::size_t>(v)] = 0;
  return kept;
}

TailCode fixture(int q, std::initializer_list<const char*> words) {
  std::vector<PartialPermutation> members;
  for (const char* w : words) members.push_back(parse_perm(w, q));
  return TailCode(q, std::move(members));
}

std::string describe(const CheckResult& r) {
  if (r.ok || !r.witness) return r.ok ? "holds" : "fails";
  std::string s = "fails: " + to_string(r.witness->first) + ", " + to_string(r.witness->second);
  if (r.witness->common) s += " share " + to_string(*r.witness->common);
  return s;
}

}  // namespace

std::vector<FixtureCheck> separating_fixtures() {
  std::vector<FixtureCheck> out;
  using enum ErrorModel;

  {
    const auto code = fixture(3, {"12", "32"});
    const bool del1 = is_detecting(code, deletion, 1).ok;
    const bool del2 = is_detecting(code, deletion, 2).ok;
    const bool ins2 = is_detecting(code, insertion, 2).ok;
    const auto indel2 = is_detecting(code, indel, 2);
    const auto b = indel_ball(parse_perm("32", 3), 2);
    const bool reaches = std::binary_search(b.begin(), b.end(), parse_perm("12", 3));
    out.push_back({"{12,32} q=3: t-del-detecting (t=1,2), ins-detecting, not 2-indel-detecting",
                   del1 && del2 && ins2 && !indel2.ok && reaches, "indel t=2 " + describe(indel2)});
  }
  {
    const auto code = fixture(4, {"23", "43"});
    bool ins = true;
    for (int t = 1; t <= 3; ++t) ins = ins && is_correcting(code, insertion, t).ok;
    const auto del = is_correcting(code, deletion, 1);
    const bool common3 = !del.ok && del.witness && del.witness->common == parse_perm("3", 4);
    out.push_back({"{23,43} q=4: t-ins-correcting (t=1..3), not 1-del-correcting (common 3)", ins && common3,
                   "del t=1 " + describe(del)});
  }
  {
    const auto code = fixture(4, {"321", "241"});
    const bool indel1 = is_correcting(code, indel, 1).ok;
    const auto del2 = is_correcting(code, deletion, 2);
    const bool common1 = !del2.ok && del2.witness && del2.witness->common == parse_perm("1", 4);
    // The radius-1 deletion balls {321,21} and {241,41} are disjoint.
    const bool del1 = is_correcting(code, deletion, 1).ok;
    out.push_back({"{321,241} q=4: 1-indel-correcting, not 2-del-correcting (common 1)",
                   indel1 && common1 && del1, "del t=2 " + describe(del2)});
  }
  {
    const auto pair = find_del_not_indel_pair(3, 1);
    std::string detail = "none found";
    if (pair) detail = to_string(pair->members()[0]) + ", " + to_string(pair->members()[1]);
    out.push_back({"exists a 1-del-correcting code over q=3 that is not 1-indel-correcting", pair.has_value(),
                   detail});
  }
  return out;
}

std::optional<TailCode> find_del_not_indel_pair(int q, int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const auto universe = enumerate_universe(q);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = i + 1; j < universe.size(); ++j) {
      TailCode code(q, {universe[i], universe[j]});
      if (is_correcting(code, ErrorModel::deletion, 2 * t - 1).ok && !is_correcting(code, ErrorModel::indel, t).ok) {
        return code;
      }
    }
  }
  return std::nullopt;
}

EquivalenceReport equivalence_suite(int q, int t, std::uint64_t trials, std::uint64_t seed) {
  if (q < 2 || q > 6) throw std::invalid_argument("equivalence suite supports 2 <= q <= 6");
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  using enum ErrorModel;

  const BallTable del_t(q, deletion, t);
  const BallTable del_2t(q, deletion, 2 * t);
  const BallTable ins_t(q, insertion, t);
  const BallTable indel_t(q, indel, t);
  const Graph del_det_graph = build_conflict_graph(q, deletion, t, Capability::detect);
  const Graph ins_det_graph = build_conflict_graph(q, insertion, t, Capability::detect);
  const Graph del_cor_graph = build_conflict_graph(q, deletion, t, Capability::correct);
  const Graph del2_cor_graph = build_conflict_graph(q, deletion, 2 * t, Capability::correct);
  const int n = static_cast<int>(del_t.universe());

  EquivalenceReport report;
  report.q = q;
  report.t = t;
  report.trials = trials;
  report.seed = seed;
  report.implications = {
      {"t-del-detect <=> t-ins-detect"},     {"t-ins-detect => t-ins-correct"},
      {"t-del-correct => t-ins-correct"},    {"2t-del-correct => t-indel-correct"},
      {"t-del-correct => t-del-detect"},     {"t-ins-correct => t-ins-detect"},
      {"greedy repair yields hypothesis"},
  };
  auto& iff = report.implications[0];
  auto& ins_det_cor = report.implications[1];
  auto& del_cor_ins = report.implications[2];
  auto& del2_indel = report.implications[3];
  auto& del_cor_det = report.implications[4];
  auto& ins_cor_det = report.implications[5];
  auto& repair = report.implications[6];

  auto tally = [](ImplicationTally& tl, bool hypothesis, bool conclusion) {
    ++tl.checked;
    if (!hypothesis) return;
    ++tl.hypothesis_held;
    if (!conclusion) ++tl.violations;
  };

  detail::Rng rng(seed);
  std::vector<char> scratch(static_cast<std::size_t>(n), 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const bool small = detail::uniform_below(rng, 2) == 0;
    const int max_k = small ? std::min(n, 8) : n;
    const int k = 2 + static_cast<int>(detail::uniform_below(rng, static_cast<std::uint64_t>(max_k - 1)));
    const auto raw = detail::sample_without_replacement(rng, n, std::min(k, n));

    const std::vector<std::vector<int>> codes = {
        raw,
        greedy_repair(del_det_graph, raw, rng, scratch),
        greedy_repair(ins_det_graph, raw, rng, scratch),
        greedy_repair(del_cor_graph, raw, rng, scratch),
        greedy_repair(del2_cor_graph, raw, rng, scratch),
    };
    for (std::size_t c = 0; c < codes.size(); ++c) {
      const auto& code = codes[c];
      const bool dd = del_t.detecting(code);
      const bool id = ins_t.detecting(code);
      const bool dc = del_t.correcting(code);
      const bool ic = ins_t.correcting(code);
      const bool dc2 = del_2t.correcting(code);
      const bool xc = indel_t.correcting(code);
      tally(iff, true, dd == id);
      tally(ins_det_cor, id, ic);
      tally(del_cor_ins, dc, ic);
      tally(del2_indel, dc2, xc);
      tally(del_cor_det, dc, dd);
      tally(ins_cor_det, ic, id);
      if (c == 1) tally(repair, true, dd);
      if (c == 2) tally(repair, true, id);
      if (c == 3) tally(repair, true, dc);
      if (c == 4) tally(repair, true, dc2);
    }
  }
  report.fixtures = separating_fixtures();
  return report;
}

namespace {

std::string joined(const std::vector<PartialPermutation>& words) {
  std::vector<std::string> t;
  for (const auto& w : words) t.push_back(to_string(w));
  std::sort(t.begin(), t.end());
  std::string out;
  for (const auto& s : t) out += (out.empty() ? "" : ",") + s;
  return out;
}

FixtureCheck expect_set(std::string name, const std::vector<PartialPermutation>& got, std::vector<std::string> want) {
  std::sort(want.begin(), want.end());
  std::string w;
  for (const auto& s : want) w += (w.empty() ? "" : ",") + s;
  const auto g = joined(got);
  return {std::move(name), g == w, "got {" + g + "}"};
}

}  // namespace

std::vector<FixtureCheck> ball_fixtures() {
  std::vector<FixtureCheck> out;
  {
    const auto a = to_string(delete_tail(parse_perm("2341", 4), 2));
    const auto b = to_string(delete_tail(parse_perm("41", 4), 2));
    out.push_back({"2341 minus 2 tail symbols is 41; 41 minus 2 is 1", a == "41" && b == "1", a + ", " + b});
  }
  out.push_back(expect_set("B_del^2(3245), q=6", deletion_ball(parse_perm("3245", 6), 2), {"3245", "245", "45"}));
  {
    const auto s = insertion_sphere(parse_perm("41", 4), 2);
    const bool order = s.size() == 2 && to_string(s[0]) == "2341" && to_string(s[1]) == "3241";
    out.push_back({"S_ins^2(41), q=4, lexicographic", order, "got {" + joined(s) + "}"});
  }
  out.push_back(expect_set("S_ins^2(1), q=4", insertion_sphere(parse_perm("1", 4), 2),
                           {"231", "241", "321", "341", "421", "431"}));
  out.push_back(expect_set("B_ins^1(3245), q=6", insertion_ball(parse_perm("3245", 6), 1), {"3245", "13245", "63245"}));
  out.push_back(expect_set("B_ins^2(341), q=4", insertion_ball(parse_perm("341", 4), 2), {"341", "2341"}));
  {
    const auto p = parse_perm("3245", 6);
    auto check = expect_set("indel shell of 3245 at radius 1, q=6", indel_shell(p, 1), {"245", "13245", "63245"});
    const auto b4 = indel_ball(p, 4);
    const bool far = std::binary_search(b4.begin(), b4.end(), parse_perm("2345", 6)) &&
                     std::binary_search(b4.begin(), b4.end(), parse_perm("3645", 6));
    check.passed = check.passed && far;
    check.name += "; 2345 and 3645 within radius 4";
    out.push_back(check);
  }
  return out;
}

}  // namespace rmtail
