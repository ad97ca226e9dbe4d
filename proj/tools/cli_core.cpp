#include "cli_core.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "detail/random.hpp"
#include "rmtail/channel_sim.hpp"
#include "rmtail/constructions.hpp"
#include "rmtail/outer_code.hpp"
#include "rmtail/simd/bitset_kernels.hpp"
#include "rmtail/tail_ops.hpp"
#include "rmtail/tensor_codes.hpp"

namespace rmtail::cli {

namespace {

json header(const std::string& command) { return {{"format_version", kFormatVersion}, {"command", command}}; }

std::vector<std::string> texts(const std::vector<PartialPermutation>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(to_string(w));
  return out;
}

json witness_json(const std::optional<Violation>& v) {
  if (!v) return nullptr;
  json w{{"first", to_string(v->first)}, {"second", to_string(v->second)}};
  if (v->common) w["common"] = to_string(*v->common);
  return w;
}

void emit(Output io, const json& doc, const std::function<void(std::ostream&)>& human) {
  if (io.as_json) {
    io.out << doc.dump(2) << "\n";
  } else {
    human(io.out);
  }
}

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw CertificateError(std::string("missing field: ") + key);
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw CertificateError(std::string("bad field: ") + key);
  }
}

std::string format_probability(double p) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << p;
  return os.str();
}

Symbol parse_symbol(const std::string& text, int q) {
  if (q <= 4 && text.size() == 1 && std::string_view("ACGT").find(text[0]) != std::string_view::npos) {
    return static_cast<Symbol>(std::string_view("ACGT").find(text[0]));
  }
  const int v = std::stoi(text);
  if (v < 1 || v > q) throw std::invalid_argument("symbol " + text + " outside 1.." + std::to_string(q));
  return static_cast<Symbol>(v - 1);
}

}  // namespace

std::string content_hash(const std::vector<std::string>& members) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  bool first = true;
  for (const auto& m : members) {
    if (!first) {
      h ^= static_cast<unsigned char>('\n');
      h *= 0x100000001b3ull;
    }
    first = false;
    for (unsigned char c : m) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

json CodeCertificate::to_json() const {
  json params{{"q", q}, {"t", t}, {"model", to_string(model)}, {"capability", to_string(capability)}};
  if (j) params["j"] = *j;
  if (optimal) params["optimal"] = *optimal;
  json sizes{{"actual", actual_size}};
  if (formula_size) sizes["formula"] = *formula_size;
  json doc = header("construct");
  doc["kind"] = kind;
  doc["params"] = params;
  doc["members"] = members;
  doc["sizes"] = sizes;
  doc["verifier"] = {{"status", verifier_status}, {"hash", hash}};
  return doc;
}

TailCode CodeCertificate::to_code() const {
  std::vector<PartialPermutation> words;
  for (const auto& m : members) words.push_back(parse_perm(m, q));
  return TailCode(q, std::move(words), Claim{model, t, capability});
}

CodeCertificate parse_certificate(const json& doc) {
  if (!doc.is_object()) throw CertificateError("certificate must be a JSON object");
  if (field<int>(doc, "format_version") != kFormatVersion) throw CertificateError("unsupported format_version");
  if (field<std::string>(doc, "command") != "construct") throw CertificateError("not a code certificate");
  CodeCertificate c;
  c.kind = field<std::string>(doc, "kind");
  const auto params = field<json>(doc, "params");
  c.q = field<int>(params, "q");
  c.t = field<int>(params, "t");
  if (c.q < 1 || c.q > kMaxAlphabet || c.t < 0) throw CertificateError("params out of range");
  try {
    c.model = parse_error_model(field<std::string>(params, "model"));
    c.capability = parse_capability(field<std::string>(params, "capability"));
  } catch (const std::invalid_argument& e) {
    throw CertificateError(e.what());
  }
  if (params.contains("j")) c.j = field<int>(params, "j");
  if (params.contains("optimal")) c.optimal = field<bool>(params, "optimal");
  c.members = field<std::vector<std::string>>(doc, "members");
  for (const auto& m : c.members) {
    try {
      if (to_string(parse_perm(m, c.q)) != m) throw CertificateError("member not in canonical form: " + m);
    } catch (const PermError& e) {
      throw CertificateError(std::string("bad member: ") + e.what());
    }
  }
  const auto sizes = field<json>(doc, "sizes");
  c.actual_size = field<std::uint64_t>(sizes, "actual");
  if (sizes.contains("formula")) c.formula_size = field<std::uint64_t>(sizes, "formula");
  if (c.actual_size != c.members.size()) throw CertificateError("size.actual differs from the member count");
  const auto verifier = field<json>(doc, "verifier");
  c.verifier_status = field<std::string>(verifier, "status");
  if (c.verifier_status != "verified" && c.verifier_status != "failed" && c.verifier_status != "unchecked") {
    throw CertificateError("unknown verifier status");
  }
  c.hash = field<std::string>(verifier, "hash");
  if (c.hash != content_hash(c.members)) throw CertificateError("content hash mismatch");
  return c;
}

json reparse_document(const json& doc) {
  if (!doc.is_object()) throw CertificateError("document must be a JSON object");
  if (field<int>(doc, "format_version") != kFormatVersion) throw CertificateError("unsupported format_version");
  const auto command = field<std::string>(doc, "command");
  if (command == "construct") return parse_certificate(doc).to_json();
  return json::parse(doc.dump());
}

CodeCertificate make_certificate(const std::string& kind, int q, int t, int j, bool optimal) {
  CodeCertificate c;
  c.kind = kind;
  c.q = q;
  c.t = t;
  c.model = ErrorModel::deletion;
  TailCode code;
  if (kind == "det") {
    code = build_det_code(q, t);
    c.capability = Capability::detect;
    c.formula_size = det_size(q, t);
  } else if (kind == "base") {
    code = build_base_code(q, t);
    c.capability = Capability::detect;
    c.formula_size = base_size(q, t);
  } else if (kind == "cor") {
    code = build_cor_code(q, t, j, optimal);
    c.capability = Capability::correct;
    c.j = j;
    c.optimal = optimal;
    c.formula_size = j == 1 && optimal ? cor_size(q, t) : base_size(q, t);
  } else {
    throw std::invalid_argument("unknown construction kind: " + kind);
  }
  c.members = texts(code.members());
  c.actual_size = c.members.size();
  c.verifier_status = check_capability(code, {c.model, t, c.capability}).ok ? "verified" : "failed";
  c.hash = content_hash(c.members);
  return c;
}

int cmd_ball(Output io, const std::string& model_text, int t, int q, const std::string& perm_text) {
  const auto model = parse_error_model(model_text);
  const auto pi = parse_perm(perm_text, q);
  if (t < 0) throw std::invalid_argument("radius must be non-negative");
  const auto members = texts(ball(pi, model, t));
  json doc = header("ball");
  doc["params"] = {{"model", to_string(model)}, {"t", t}, {"q", q}, {"perm", perm_text}};
  doc["members"] = members;
  doc["size"] = members.size();
  emit(io, doc, [&](std::ostream& os) {
    for (const auto& m : members) os << m << "\n";
  });
  return kOk;
}

int cmd_construct(Output io, const std::string& kind, int q, int t, int j, bool optimal, const std::string& path) {
  const auto cert = make_certificate(kind, q, t, j, optimal);
  const auto doc = cert.to_json();
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << doc.dump(2) << "\n";
  }
  if (io.as_json || path.empty()) {
    io.out << doc.dump(2) << "\n";
  } else {
    io.out << kind << " code q=" << q << " t=" << t << ": " << cert.actual_size << " words (formula "
           << cert.formula_size.value_or(0) << "), " << cert.verifier_status << ", " << cert.hash << "\n";
  }
  const bool ok = cert.verifier_status == "verified" && cert.formula_size == cert.actual_size;
  return ok ? kOk : kVerificationFailed;
}

int cmd_verify(Output io, const std::string& path, const std::optional<std::string>& model, std::optional<int> t,
               const std::optional<std::string>& capability) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw CertificateError(std::string("invalid JSON: ") + e.what());
  }
  const auto cert = parse_certificate(doc);
  Claim claim{cert.model, cert.t, cert.capability};
  if (model) claim.model = parse_error_model(*model);
  if (t) claim.t = *t;
  if (capability) claim.capability = parse_capability(*capability);
  const auto code = cert.to_code();
  const auto result = check_capability(code, claim);
  const bool formula_ok = !cert.formula_size || *cert.formula_size == cert.actual_size;

  json out = header("verify");
  out["params"] = {{"file", path}, {"model", to_string(claim.model)}, {"t", claim.t},
                   {"capability", to_string(claim.capability)}};
  out["size"] = code.size();
  out["hash"] = cert.hash;
  out["ok"] = result.ok;
  out["size_matches_formula"] = formula_ok;
  out["witness"] = witness_json(result.witness);
  emit(io, out, [&](std::ostream& os) {
    os << (result.ok ? "OK" : "FAIL") << ": " << code.size() << " words, " << claim.t << "-" << to_string(claim.model)
       << "-" << to_string(claim.capability);
    if (result.witness) {
      os << " (witness " << to_string(result.witness->first) << ", " << to_string(result.witness->second);
      if (result.witness->common) os << " via " << to_string(*result.witness->common);
      os << ")";
    }
    if (!formula_ok) os << "; size differs from formula " << *cert.formula_size;
    os << "\n";
  });
  return result.ok && formula_ok ? kOk : kVerificationFailed;
}

int cmd_oracle(Output io, int q, int t, const std::string& model, const std::string& capability, std::uint64_t budget) {
  const auto m = parse_error_model(model);
  const auto c = parse_capability(capability);
  if (q < 1 || q > 6) throw std::invalid_argument("oracle supports q in 1..6");
  const auto r = max_code_oracle(q, t, m, c, budget);
  json doc = header("oracle");
  doc["params"] = {{"q", q}, {"t", t}, {"model", to_string(m)}, {"capability", to_string(c)}, {"budget", budget}};
  doc["size"] = r.size;
  doc["exact"] = r.exact;
  doc["nodes"] = r.nodes;
  doc["witness"] = texts(r.witness.members());
  emit(io, doc, [&](std::ostream& os) {
    os << "size " << r.size << (r.exact ? " (exact)" : " (lower bound, budget exhausted)") << ", " << r.nodes
       << " nodes\n";
    for (const auto& w : r.witness.members()) os << to_string(w) << "\n";
  });
  return kOk;
}

int cmd_bounds(Output io, int q_min, int q_max, int t_max, int oracle_max_q, bool csv) {
  json rows = json::array();
  bool all_match = true;
  for (int q = std::max(q_min, 2); q <= q_max; ++q) {
    for (int t = 1; t <= t_max && t < q; ++t) {
      json row{{"q", q}, {"t", t}, {"det", det_size(q, t)}, {"cor", cor_size(q, t)}};
      if (q <= oracle_max_q) {
        const auto od = max_code_oracle(q, t, ErrorModel::deletion, Capability::detect);
        const auto oc = max_code_oracle(q, t, ErrorModel::deletion, Capability::correct);
        const bool match = od.size == det_size(q, t) && oc.size == cor_size(q, t);
        all_match = all_match && match;
        row["oracle_det"] = od.size;
        row["oracle_cor"] = oc.size;
        row["oracle_exact"] = od.exact && oc.exact;
        row["match"] = match;
      }
      rows.push_back(row);
    }
  }
  json doc = header("bounds");
  doc["params"] = {{"q_min", q_min}, {"q_max", q_max}, {"t_max", t_max}, {"oracle_max_q", oracle_max_q}};
  doc["rows"] = rows;
  emit(io, doc, [&](std::ostream& os) {
    const char* sep = csv ? "," : "\t";
    os << "q" << sep << "t" << sep << "det" << sep << "cor" << sep << "oracle_det" << sep << "oracle_cor" << sep
       << "match\n";
    for (const auto& r : rows) {
      os << r["q"] << sep << r["t"] << sep << r["det"] << sep << r["cor"] << sep;
      if (r.contains("match")) {
        os << r["oracle_det"] << sep << r["oracle_cor"] << sep << (r["match"].get<bool>() ? "match" : "MISMATCH");
      } else {
        os << sep << sep;
      }
      os << "\n";
    }
  });
  return all_match ? kOk : kVerificationFailed;
}

int cmd_ttpc_bounds(Output io, int q, int t, int n, int e) {
  const auto b = ttpc_size_bounds(q, t, n, e);
  json doc = header("bounds");
  doc["params"] = {{"q", q}, {"t", t}, {"n", n}, {"e", e}};
  doc["correcting"] = {{"inner_cor_size", b.cor_inner},
                       {"class_size", b.base},
                       {"outer", b.cor_outer},
                       {"outer_size", b.cor_outer_size.str()},
                       {"outer_known_optimal", b.cor_outer_optimal},
                       {"formula_bound", b.cor_formula.str()},
                       {"constructive_bound", b.cor_constructive.str()},
                       {"formula_is_constructive", b.cor_formula_constructive}};
  doc["detecting"] = {{"class_size", b.base},
                      {"outer", b.det_outer},
                      {"outer_known_optimal", b.det_outer_optimal},
                      {"bound", b.det_bound.str()},
                      {"outer_t_labels", b.det_outer_label_t},
                      {"bound_t_labels", b.det_bound_label_t.str()},
                      {"outer_sound", b.det_outer_sound},
                      {"bound_sound", b.det_bound_sound.str()}};
  emit(io, doc, [&](std::ostream& os) {
    os << "correcting: DEL_cor=" << b.cor_inner << " class=" << b.base << " outer=" << b.cor_outer << "\n"
       << "  formula bound      " << b.cor_formula << (b.cor_formula_constructive ? "" : " (not reached by the construction)") << "\n"
       << "  constructive bound " << b.cor_constructive << "\n"
       << "detecting: class=" << b.base << "\n"
       << "  t+1 labels, distance e   " << b.det_bound << "  " << b.det_outer << "\n"
       << "  t labels, distance e     " << b.det_bound_label_t << "  " << b.det_outer_label_t << "\n"
       << "  t+1 labels, distance e+1 " << b.det_bound_sound << "  " << b.det_outer_sound << "\n";
  });
  return kOk;
}

int cmd_decode(Output io, int q, int t, int j, bool optimal, const std::string& word) {
  const CorDecoder dec(q, t, j, optimal);
  const auto received = parse_perm(word, q);
  const auto r = dec.try_decode(received);
  json doc = header("decode");
  doc["params"] = {{"q", q}, {"t", t}, {"j", j}, {"optimal", optimal}, {"word", word}};
  doc["ok"] = r.codeword.has_value();
  doc["codeword"] = r.codeword ? json(to_string(*r.codeword)) : json(nullptr);
  doc["deletions"] = r.codeword ? json(r.deletions) : json(nullptr);
  emit(io, doc, [&](std::ostream& os) {
    if (r.codeword) {
      os << to_string(*r.codeword) << "\n";
    } else {
      os << "uncorrectable\n";
    }
  });
  return r.codeword ? kOk : kVerificationFailed;
}

int cmd_ttpc(Output io, const TtpcOptions& opt) {
  const bool correcting = opt.kind == "cor";
  if (!correcting && opt.kind != "det") throw std::invalid_argument("kind must be cor or det");
  auto partition = correcting ? correcting_partition(opt.q, opt.t) : detecting_partition(opt.q, opt.t);
  const int labels = partition.class_count();
  const int distance = correcting ? 2 * opt.e + 1 : detecting_outer_distance(opt.e);
  auto outer = opt.outer ? make_outer_code(parse_outer_family(*opt.outer), labels, opt.n, distance)
                         : outer_code_factory(labels, opt.n, distance);
  const Ttpc code(std::move(partition), outer);

  json doc = header("ttpc");
  doc["params"] = {{"action", opt.action}, {"kind", opt.kind}, {"q", opt.q}, {"t", opt.t},
                   {"n", opt.n},           {"e", opt.e},       {"outer", outer->describe()}};
  int status = kOk;
  std::string text;
  if (opt.action == "encode") {
    if (!opt.message) throw std::invalid_argument("encode needs --message");
    const BigInt m(*opt.message);
    const auto c = code.encode(m);
    doc["message"] = *opt.message;
    doc["word"] = to_string(c);
    doc["message_space"] = code.message_space().str();
    text = to_string(c);
  } else if (opt.action == "decode" || opt.action == "member") {
    if (!opt.word) throw std::invalid_argument(opt.action + " needs --word");
    const auto v = parse_perm_vector(*opt.word, opt.q);
    doc["word"] = *opt.word;
    if (opt.action == "member") {
      const bool in = code.contains(v);
      doc["member"] = in;
      doc["labels"] = to_string(lambda_map(v, code.partition()));
      text = std::string(in ? "member " : "not a member ") + to_string(lambda_map(v, code.partition()));
      status = in ? kOk : kVerificationFailed;
    } else {
      if (!correcting) throw std::invalid_argument("decode needs --kind cor");
      const auto r = code.decode(v, opt.e);
      doc["status"] = to_string(r.status);
      doc["erasures"] = r.erasures;
      if (r.codeword) {
        doc["codeword"] = to_string(*r.codeword);
        const auto m = code.message_of(*r.codeword);
        doc["message"] = m ? json(m->str()) : json(nullptr);
        text = to_string(*r.codeword);
      } else {
        doc["codeword"] = nullptr;
        text = std::string("decode failure: ") + std::string(to_string(r.status));
        status = kVerificationFailed;
      }
    }
  } else {
    throw std::invalid_argument("ttpc action must be encode, decode or member");
  }
  emit(io, doc, [&](std::ostream& os) { os << text << "\n"; });
  return status;
}

int cmd_simulate(Output io, const SimulateOptions& opt) {
  CompositeDesign design{parse_design_perm(opt.perm, opt.q), opt.reads, {}, {}};
  design.error.eps = parse_rational(opt.eps);
  if (opt.error_symbol) {
    design.error.kind = ErrorMass::Kind::designated;
    design.error.symbol = parse_symbol(*opt.error_symbol, opt.q);
  }
  if (opt.reads < 1) throw std::invalid_argument("reads must be positive");
  const auto probs = design_distribution(design);

  json doc = header("simulate");
  json params{{"mode", opt.mode}, {"perm", opt.perm}, {"q", opt.q}, {"reads", opt.reads}, {"eps", opt.eps}};
  if (opt.error_symbol) params["error_symbol"] = *opt.error_symbol;
  json dist = json::array();
  for (const auto& p : probs) dist.push_back(to_double(p));
  doc["design"] = dist;

  struct Row {
    std::string label;
    double value;
    std::string extra;
  };
  std::vector<Row> rows;
  if (opt.mode == "exact") {
    for (const auto& [o, p] : exact_outcomes(design)) rows.push_back({to_string(o, opt.q), to_double(p), p.str()});
  } else if (opt.mode == "mc") {
    std::uint64_t seed = 0;
    if (opt.seed) {
      seed = *opt.seed;
    } else {
      seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
      io.err << "seed: " << seed << "\n";
    }
    params["trials"] = opt.trials;
    params["seed"] = seed;
    const auto mc = monte_carlo_outcomes(design, opt.trials, seed);
    for (const auto& [o, n] : mc.counts) {
      rows.push_back({to_string(o, opt.q), static_cast<double>(n) / static_cast<double>(opt.trials), std::to_string(n)});
    }
  } else {
    throw std::invalid_argument("simulate mode must be exact or mc");
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.value > b.value; });
  doc["params"] = params;
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"outcome", r.label}, {opt.mode == "exact" ? "probability" : "frequency", r.value},
                   {opt.mode == "exact" ? "exact" : "count", r.extra}});
  }
  doc["outcomes"] = out;
  emit(io, doc, [&](std::ostream& os) {
    if (opt.csv) os << "outcome," << (opt.mode == "exact" ? "probability" : "frequency") << "\n";
    for (const auto& r : rows) {
      if (opt.csv) {
        os << r.label << "," << std::setprecision(12) << r.value << "\n";
      } else {
        os << std::left << std::setw(16) << r.label << format_probability(r.value) << "\n";
      }
    }
  });
  return kOk;
}

int cmd_reproduce_table1(Output io) {
  const CompositeDesign design{parse_design_perm("AC", 4), 10,
                               {ErrorMass::Kind::designated, parse_rational("0.01"), 3}, {}};
  const auto dist = exact_outcomes(design);
  const std::vector<std::pair<std::string, double>> expected{
      {"A < C", 0.695949}, {"C < A", 0.069227}, {"T < A < C", 0.066184}, {"C", 0.015683}, {"T < C < A", 0.013427}};
  const std::vector<std::string> description{"Correct", "Swap", "1 Tail Insertion", "1 Tail Deletion",
                                             "1 Tail Insertion + Swap"};
  bool ok = true;
  double listed = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto it = dist.find(parse_outcome(expected[i].first, 4));
    const double p = it == dist.end() ? 0.0 : to_double(it->second);
    const double dev = std::abs(p - expected[i].second);
    ok = ok && dev <= 1e-6;
    listed += p;
    rows.push_back({{"outcome", expected[i].first}, {"probability", p}, {"expected", expected[i].second},
                    {"deviation", dev}, {"description", description[i]}});
  }
  const auto clean = design_distribution(parse_design_perm("AC", 4), {});
  const auto cmp = count_order_probability(clean, 10, 0, 1);
  const double less = to_double(cmp.less);
  const double rest = to_double(cmp.equal + cmp.greater);
  const bool example_ok = std::abs(less - 0.787) <= 5e-4 && std::abs(rest - 0.213) <= 5e-4;

  json doc = header("reproduce-table1");
  doc["rows"] = rows;
  doc["residual"] = 1.0 - listed;
  doc["tie"] = to_double(dist.at(Outcome{{}, true}));
  doc["two_symbol_counts"] = {{"a_less_c", less}, {"c_at_most_a", rest}};
  doc["ok"] = ok && example_ok;
  emit(io, doc, [&](std::ostream& os) {
    os << std::left << std::setw(12) << "outcome" << std::setw(12) << "probability" << "description\n";
    for (const auto& r : rows) {
      os << std::setw(12) << r["outcome"].get<std::string>() << std::setw(12)
         << format_probability(r["probability"].get<double>()) << r["description"].get<std::string>() << "\n";
    }
    os << std::setw(12) << "(residual)" << format_probability(1.0 - listed) << "\n";
    os << "two symbols, no error: P(#A < #C) = " << format_probability(less)
       << ", P(#C <= #A) = " << format_probability(rest) << "\n";
  });
  return ok && example_ok ? kOk : kVerificationFailed;
}

namespace {

using Clock = std::chrono::steady_clock;

class Suite {
 public:
  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    const auto start = Clock::now();
    SelftestCheck check{name, false, "", 0.0};
    try {
      auto [ok, detail] = body();
      check.passed = ok;
      check.detail = std::move(detail);
    } catch (const std::exception& e) {
      check.detail = std::string("exception: ") + e.what();
    }
    check.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    checks.push_back(std::move(check));
  }
  std::vector<SelftestCheck> checks;
};

BigInt random_message(detail::Rng& rng, const BigInt& bound) {
  BigInt x = 0;
  for (int i = 0; i < 8; ++i) x = (x << 64) + rng();
  return x % bound;
}

std::pair<bool, std::string> constructions_valid(int q_max, int t_max) {
  for (int q = 2; q <= q_max; ++q) {
    for (int t = 1; t < q && t <= t_max; ++t) {
      const auto det = build_det_code(q, t);
      if (!is_detecting(det, ErrorModel::deletion, t) || det.size() != det_size(q, t)) {
        return {false, "det q=" + std::to_string(q) + " t=" + std::to_string(t)};
      }
      const auto cor = build_cor_code(q, t, 1);
      const auto r = is_correcting(cor, ErrorModel::deletion, t);
      if (!r || cor.size() != cor_size(q, t)) {
        std::string where = "cor q=" + std::to_string(q) + " t=" + std::to_string(t);
        if (r.witness) where += " witness " + to_string(r.witness->first) + ", " + to_string(r.witness->second);
        return {false, where};
      }
    }
  }
  return {true, "q <= " + std::to_string(q_max)};
}

std::pair<bool, std::string> decoder_exhaustive(int q_max, int t_max) {
  std::uint64_t cases = 0;
  for (int q = 2; q <= q_max; ++q) {
    for (int t = 1; t <= t_max && t < q; ++t) {
      const auto classes = static_cast<int>(factorial(t));
      for (int j = 1; j <= classes; ++j) {
        const CorDecoder dec(q, t, j);
        const auto code = build_cor_code(q, t, j);
        for (const auto& c : code.members()) {
          for (int k = 0; k <= t; ++k) {
            const auto r = dec.try_decode(delete_tail(c, k));
            ++cases;
            if (!r.codeword || *r.codeword != c) {
              return {false, "codeword " + to_string(c) + " k=" + std::to_string(k) + " q=" + std::to_string(q)};
            }
          }
        }
      }
    }
  }
  return {true, std::to_string(cases) + " cases"};
}

std::pair<bool, std::string> ttpc_round_trip(int q, int t, int n, int trials, std::uint64_t seed) {
  const auto code = correcting_ttpc(q, t, n, 1);
  detail::Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const auto m = random_message(rng, code.message_space());
    const auto c = code.encode(m);
    std::vector<int> pattern(static_cast<std::size_t>(n), 0);
    pattern[detail::uniform_below(rng, static_cast<std::uint64_t>(n))] =
        static_cast<int>(detail::uniform_below(rng, static_cast<std::uint64_t>(t + 1)));
    const auto r = code.decode(apply_vector_deletions(c, pattern), 1);
    if (!r.codeword || *r.codeword != c || code.message_of(*r.codeword) != m) {
      return {false, "sent " + to_string(c) + " status " + std::string(to_string(r.status))};
    }
  }
  return {true, std::to_string(trials) + " trials, seed " + std::to_string(seed)};
}

std::pair<bool, std::string> simd_equivalence() {
  detail::Rng rng(99);
  const auto& ref = simd::kernels(simd::Isa::scalar);
  std::string used = "scalar";
  for (auto isa : {simd::Isa::avx2, simd::Isa::neon}) {
    if (!simd::isa_available(isa)) continue;
    used += std::string(",") + std::string(simd::to_string(isa));
    const auto& k = simd::kernels(isa);
    for (std::size_t n = 0; n <= 37; ++n) {
      std::vector<simd::Word> a(n), b(n), d1(n), d2(n);
      for (auto& w : a) w = rng() & rng();
      for (auto& w : b) w = rng();
      if (k.popcount(a.data(), n) != ref.popcount(a.data(), n) ||
          k.and_popcount(a.data(), b.data(), n) != ref.and_popcount(a.data(), b.data(), n) ||
          k.any(a.data(), n) != ref.any(a.data(), n)) {
        return {false, used + ": reduction mismatch at n=" + std::to_string(n)};
      }
      k.and_into(d1.data(), a.data(), b.data(), n);
      ref.and_into(d2.data(), a.data(), b.data(), n);
      if (d1 != d2) return {false, used + ": and mismatch"};
      k.andnot_into(d1.data(), a.data(), b.data(), n);
      ref.andnot_into(d2.data(), a.data(), b.data(), n);
      if (d1 != d2) return {false, used + ": andnot mismatch"};
    }
  }
  return {true, used};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const std::string& level) {
  if (level != "quick" && level != "full") throw std::invalid_argument("selftest level must be quick or full");
  const bool full = level == "full";
  Suite suite;

  for (const auto& f : ball_fixtures()) {
    suite.run("ball fixture: " + f.name, [f] { return std::pair{f.passed, f.detail}; });
  }
  for (const auto& f : separating_fixtures()) {
    suite.run("separating fixture: " + f.name, [f] { return std::pair{f.passed, f.detail}; });
  }
  suite.run("universe size matches enumeration, q <= 7", [] {
    for (int q = 1; q <= 7; ++q) {
      if (universe_size(q) != enumerate_universe(q).size()) return std::pair{false, "q=" + std::to_string(q)};
    }
    return std::pair{true, std::string("ok")};
  });
  suite.run("constructions valid and sized by formula", [full] { return constructions_valid(full ? 8 : 6, 3); });
  suite.run("decoder recovers every codeword", [full] { return decoder_exhaustive(full ? 7 : 5, 2); });
  suite.run("table of outcome probabilities", [] {
    std::ostringstream sink;
    return std::pair{cmd_reproduce_table1({sink, sink, false}) == kOk, std::string("deviation <= 1e-6")};
  });
  suite.run("outer code factory examples", [] {
    const auto rep = outer_code_factory(2, 5, 5);
    const auto par = outer_code_factory(3, 4, 2);
    const auto rs = outer_code_factory(4, 4, 3);
    const auto ham = outer_code_factory(2, 7, 3);
    const bool ok = rep->size() == 2 && par->size() == 27 && rs->size() == 16 && ham->size() == 16 &&
                    measured_min_distance(*rs) == 3 && measured_min_distance(*ham) == 3;
    return std::pair{ok, rep->describe() + "; " + rs->describe() + "; " + ham->describe()};
  });
  suite.run("ttpc round trip q=5 t=2 n=3", [] { return ttpc_round_trip(5, 2, 3, 200, 11); });
  suite.run("simd kernels agree with scalar", [] { return simd_equivalence(); });

  if (full) {
    for (int q = 2; q <= 5; ++q) {
      for (int t = 1; t <= 2 && t < q; ++t) {
        suite.run("equivalence suite q=" + std::to_string(q) + " t=" + std::to_string(t), [q, t] {
          const auto r = equivalence_suite(q, t, 10'000, 1000 + static_cast<std::uint64_t>(10 * q + t));
          std::string detail;
          for (const auto& i : r.implications) {
            detail += i.name + ": " + std::to_string(i.violations) + "/" + std::to_string(i.hypothesis_held) + "; ";
          }
          return std::pair{r.passed(), detail};
        });
      }
    }
    suite.run("oracle optimality q <= 4", [] {
      for (int q = 2; q <= 4; ++q) {
        for (int t = 1; t < q; ++t) {
          const auto d = max_code_oracle(q, t, ErrorModel::deletion, Capability::detect);
          const auto c = max_code_oracle(q, t, ErrorModel::deletion, Capability::correct);
          if (!d.exact || !c.exact || d.size != det_size(q, t) || c.size != cor_size(q, t)) {
            return std::pair{false, "q=" + std::to_string(q) + " t=" + std::to_string(t) + " oracle det " +
                                        std::to_string(d.size) + " cor " + std::to_string(c.size)};
          }
        }
      }
      return std::pair{true, std::string("all match")};
    });
    suite.run("ttpc round-trip corpus q=6 t=2 n=7", [] { return ttpc_round_trip(6, 2, 7, 5000, 2024); });
    suite.run("monte carlo agrees with exact table", [] {
      const CompositeDesign design{parse_design_perm("AC", 4), 10,
                                   {ErrorMass::Kind::designated, parse_rational("0.01"), 3}, {}};
      const auto exact = exact_outcomes(design);
      const std::uint64_t trials = 200'000;
      const auto mc = monte_carlo_outcomes(design, trials, 5);
      for (const auto& [o, p] : exact) {
        const double pe = to_double(p);
        const auto it = mc.counts.find(o);
        const double f = it == mc.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
        const double sigma = std::sqrt(pe * (1 - pe) / static_cast<double>(trials));
        if (std::abs(f - pe) > 4 * sigma + 1e-9) return std::pair{false, to_string(o, 4) + " off by " + std::to_string(f - pe)};
      }
      return std::pair{true, std::string("within 4 sigma, seed 5")};
    });
  }
  return suite.checks;
}

int cmd_selftest(Output io, const std::string& level) {
  const auto checks = run_selftest(level);
  bool ok = true;
  json rows = json::array();
  for (const auto& c : checks) {
    ok = ok && c.passed;
    rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"seconds", c.seconds}});
  }
  json doc = header("selftest");
  doc["params"] = {{"level", level}};
  doc["checks"] = rows;
  doc["ok"] = ok;
  emit(io, doc, [&](std::ostream& os) {
    for (const auto& c : checks) {
      os << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.passed || !c.detail.empty()) os << "  [" << c.detail << "]";
      os << "\n";
    }
    os << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  });
  return ok ? kOk : kVerificationFailed;
}

}  // namespace rmtail::cli
