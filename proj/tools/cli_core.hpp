#pragma once
// Command implementations behind the rmtail executable, plus the JSON
// certificate/report format they share.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmtail/code_check.hpp"

namespace rmtail::cli {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a over the members joined by newlines, as "fnv1a64:<hex>".
std::string content_hash(const std::vector<std::string>& members);

struct CodeCertificate {
  std::string kind;  // det, base, cor, custom
  int q = 0;
  int t = 0;
  ErrorModel model = ErrorModel::deletion;
  Capability capability = Capability::detect;
  std::optional<int> j;
  std::optional<bool> optimal;
  std::vector<std::string> members;
  std::uint64_t actual_size = 0;
  std::optional<std::uint64_t> formula_size;
  std::string verifier_status = "unchecked";  // verified, failed, unchecked
  std::string hash;

  json to_json() const;
  TailCode to_code() const;
};

/// Validates fields, member count and hash. Throws CertificateError.
CodeCertificate parse_certificate(const json& doc);

/// Every JSON document carries format_version and command. Checks the header
/// (and, for certificates, the full schema) and returns the re-serialization.
json reparse_document(const json& doc);

/// Builds and verifies one of the explicit constructions.
CodeCertificate make_certificate(const std::string& kind, int q, int t, int j, bool optimal);

struct Output {
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;
};

int cmd_ball(Output io, const std::string& model, int t, int q, const std::string& perm);
int cmd_construct(Output io, const std::string& kind, int q, int t, int j, bool optimal, const std::string& path);
int cmd_verify(Output io, const std::string& path, const std::optional<std::string>& model, std::optional<int> t,
               const std::optional<std::string>& capability);
int cmd_oracle(Output io, int q, int t, const std::string& model, const std::string& capability, std::uint64_t budget);
int cmd_bounds(Output io, int q_min, int q_max, int t_max, int oracle_max_q, bool csv);
int cmd_ttpc_bounds(Output io, int q, int t, int n, int e);
int cmd_decode(Output io, int q, int t, int j, bool optimal, const std::string& word);

struct TtpcOptions {
  std::string action;  // encode, decode, member
  std::string kind = "cor";
  int q = 6, t = 2, n = 7, e = 1;
  std::optional<std::string> outer;
  std::optional<std::string> message;
  std::optional<std::string> word;
};
int cmd_ttpc(Output io, const TtpcOptions& opt);

struct SimulateOptions {
  std::string mode;  // exact, mc
  std::string perm;
  int q = 4;
  int reads = 10;
  std::string eps = "0";
  std::optional<std::string> error_symbol;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  bool csv = false;
};
int cmd_simulate(Output io, const SimulateOptions& opt);

int cmd_reproduce_table1(Output io);

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};
std::vector<SelftestCheck> run_selftest(const std::string& level);
int cmd_selftest(Output io, const std::string& level);

}  // namespace rmtail::cli
