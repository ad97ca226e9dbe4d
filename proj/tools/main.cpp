#include <CLI11.hpp>

#include <iostream>

#include "cli_core.hpp"
#include "rmtail/channel_sim.hpp"
#include "rmtail/constructions.hpp"
#include "rmtail/outer_code.hpp"
#include "rmtail/perm.hpp"

using namespace rmtail;
using namespace rmtail::cli;

int main(int argc, char** argv) {
  CLI::App app{"Tail-error codes over partial permutations: balls, constructions, oracles, tensor codes, read simulation"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit versioned JSON instead of tables");
  std::function<int()> action;

  // ball
  auto* ball = app.add_subcommand("ball", "List the error ball around a word");
  std::string model = "del", perm;
  int t = 1, q = 4;
  ball->add_option("--model", model, "del | ins | indel")->capture_default_str();
  ball->add_option("--t", t, "Radius")->capture_default_str();
  ball->add_option("--q", q, "Alphabet size")->capture_default_str();
  ball->add_option("perm", perm, "Word, 1-based digits (e.g. 3245)")->required();
  ball->callback([&] { action = [&] { return cmd_ball({std::cout, std::cerr, as_json}, model, t, q, perm); }; });

  // construct
  auto* construct = app.add_subcommand("construct", "Build a code and write a certificate");
  std::string kind = "det", out_path;
  int j = 1;
  bool non_optimal = false;
  construct->add_option("kind", kind, "det | base | cor")->required();
  construct->add_option("--q", q)->required();
  construct->add_option("--t", t)->required();
  construct->add_option("--j", j, "Sphere index for cor (1..t!)")->capture_default_str();
  construct->add_flag("--no-augment", non_optimal, "Skip the singleton augmentation of the cor code");
  construct->add_option("-o,--out", out_path, "Certificate file");
  construct->callback([&] {
    action = [&] { return cmd_construct({std::cout, std::cerr, as_json}, kind, q, t, j, !non_optimal, out_path); };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Check a certificate against its (or an overriding) claim");
  std::string cert_path;
  std::optional<std::string> v_model, v_capability;
  std::optional<int> v_t;
  verify->add_option("certificate", cert_path)->required();
  verify->add_option("--model", v_model);
  verify->add_option("--t", v_t);
  verify->add_option("--capability", v_capability, "detect | correct");
  verify->callback([&] {
    action = [&] { return cmd_verify({std::cout, std::cerr, as_json}, cert_path, v_model, v_t, v_capability); };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact maximum code size by independent-set search");
  std::string capability = "detect";
  std::uint64_t budget = kDefaultNodeBudget;
  oracle->add_option("--q", q)->required();
  oracle->add_option("--t", t)->required();
  oracle->add_option("--model", model)->capture_default_str();
  oracle->add_option("--capability", capability)->capture_default_str();
  oracle->add_option("--budget", budget, "Node budget")->capture_default_str();
  oracle->callback([&] {
    action = [&] { return cmd_oracle({std::cout, std::cerr, as_json}, q, t, model, capability, budget); };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form sizes (with oracle comparison) or tensor-code bounds");
  int q_min = 2, q_max = 8, t_max = 3, oracle_max_q = 4, n = 0, e = 1;
  bool csv = false;
  bounds->add_option("--q-min", q_min)->capture_default_str();
  bounds->add_option("--q-max", q_max)->capture_default_str();
  bounds->add_option("--t-max", t_max)->capture_default_str();
  bounds->add_option("--oracle-max-q", oracle_max_q)->capture_default_str();
  bounds->add_flag("--csv", csv);
  bounds->add_option("--q", q, "Alphabet size for tensor-code bounds");
  bounds->add_option("--t", t, "Deletions per coordinate for tensor-code bounds");
  bounds->add_option("--n", n, "Outer length; selects tensor-code bounds");
  bounds->add_option("--e", e, "Coordinates in error")->capture_default_str();
  bounds->callback([&] {
    action = [&] {
      Output io{std::cout, std::cerr, as_json};
      if (n > 0) return cmd_ttpc_bounds(io, q, t, n, e);
      return cmd_bounds(io, q_min, q_max, t_max, oracle_max_q, csv);
    };
  });

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a received word for the cor code");
  std::string word;
  decode->add_option("--q", q)->required();
  decode->add_option("--t", t)->required();
  decode->add_option("--j", j)->capture_default_str();
  decode->add_flag("--no-augment", non_optimal);
  decode->add_option("word", word)->required();
  decode->callback([&] {
    action = [&] { return cmd_decode({std::cout, std::cerr, as_json}, q, t, j, !non_optimal, word); };
  });

  // ttpc
  auto* ttpc = app.add_subcommand("ttpc", "Tensor-product codes: encode | decode | member");
  TtpcOptions topt;
  std::string outer_family, message, tword;
  ttpc->add_option("action", topt.action, "encode | decode | member")->required();
  ttpc->add_option("--kind", topt.kind, "cor | det")->capture_default_str();
  ttpc->add_option("--q", topt.q)->capture_default_str();
  ttpc->add_option("--t", topt.t)->capture_default_str();
  ttpc->add_option("--n", topt.n)->capture_default_str();
  ttpc->add_option("--e", topt.e)->capture_default_str();
  ttpc->add_option("--outer", outer_family, "trivial | full | repetition | parity | rs | hamming | search");
  ttpc->add_option("--message", message, "Decimal message index");
  ttpc->add_option("--word", tword, "Comma-separated coordinates, e.g. 1345,135");
  ttpc->callback([&] {
    if (!outer_family.empty()) topt.outer = outer_family;
    if (!message.empty()) topt.message = message;
    if (!tword.empty()) topt.word = tword;
    action = [&] { return cmd_ttpc({std::cout, std::cerr, as_json}, topt); };
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Ranking outcome distribution of a composite read channel");
  SimulateOptions sopt;
  std::optional<std::uint64_t> seed;
  std::string error_symbol;
  simulate->add_option("mode", sopt.mode, "exact | mc")->required();
  simulate->add_option("--perm", sopt.perm, "Design permutation, e.g. AC")->required();
  simulate->add_option("--q", sopt.q)->capture_default_str();
  simulate->add_option("--reads", sopt.reads)->capture_default_str();
  simulate->add_option("--eps", sopt.eps, "Error mass, decimal or a/b")->capture_default_str();
  simulate->add_option("--error-symbol", error_symbol, "Symbol receiving the error mass (default: spread over unused)");
  simulate->add_option("--trials", sopt.trials)->capture_default_str();
  simulate->add_option("--seed", seed);
  simulate->add_flag("--csv", sopt.csv);
  simulate->callback([&] {
    if (!error_symbol.empty()) sopt.error_symbol = error_symbol;
    sopt.seed = seed;
    action = [&] { return cmd_simulate({std::cout, std::cerr, as_json}, sopt); };
  });

  auto* table = app.add_subcommand("reproduce-table1", "Recompute the AC composite outcome table");
  table->callback([&] { action = [&] { return cmd_reproduce_table1({std::cout, std::cerr, as_json}); }; });

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suites");
  std::string level = "quick";
  selftest->add_option("level", level, "quick | full")->capture_default_str();
  selftest->callback([&] { action = [&] { return cmd_selftest({std::cout, std::cerr, as_json}, level); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const UncorrectableError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kVerificationFailed;
  } catch (const BudgetExceeded& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kVerificationFailed;
  }
}
