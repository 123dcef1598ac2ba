#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhess/inequalities.hpp"

namespace mhess {

using ordered_json = nlohmann::ordered_json;

struct Tolerances {
  double quad_abs = 1e-10;
  double quad_rel = 1e-10;
  double verdict = 1e-6;
  double sigma = 1e-9;
  double fd_step = 1e-4;
};

/// Everything a run needs; round-trips losslessly through JSON.
struct RunConfig {
  std::string command = "suite";
  Parameters P;
  std::string fn = "quadratic_exhaustion";
  FamilyParams fam;
  std::vector<double> coeffs;
  std::vector<double> point;  // interleaved re,im pairs
  std::vector<int> js = {2, 4, 8, 16};
  std::vector<double> s_ladder;
  std::vector<double> r2_ladder = {0.8, 0.4, 0.2, 0.1, 0.05};
  double q = 1.0;
  double r2 = 0.5;
  double alpha_dk = 1.5;
  int family_size = 20;
  int tuples = 6;
  uint64_t seed = 0;
  uint64_t mc_samples = 1'000'000;
  Tolerances tol;
  std::string output_path;
  std::string csv_path;
};

ordered_json to_json(const RunConfig& cfg);
RunConfig runconfig_from_json(const ordered_json& j);

struct ReportDocument {
  std::string version;
  RunConfig config;
  ordered_json entries = ordered_json::array();
  int holds = 0, violated = 0, witnesses = 0;
  double total_wall_ms = 0.0;
  std::string determinism_hash;

  /// 0 when every verdict is holds/sharpness-witness, 2 otherwise.
  int exit_code() const { return violated == 0 ? 0 : 2; }
};

/// Serialize with doubles at 17 significant digits (lossless round-trip),
/// insertion-ordered keys, no volatile content surprises.
std::string dump_json17(const ordered_json& j, int indent = 2);

/// FNV-1a 64 over the canonical serialization with the volatile fields
/// (timestamp, wall_ms) stripped.
std::string determinism_hash(const ordered_json& document);

/// Document as JSON (includes timestamp and the recorded hash).
ordered_json document_json(const ReportDocument& doc);

/// One CSV line per sweep row across all entries, columns sorted by key.
std::string document_csv(const ReportDocument& doc);

/// Execute one command described by the config (the CLI core).
ReportDocument run_command(const RunConfig& cfg);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<KV> details;
  std::vector<std::string> lines;
  double wall_ms = 0.0;
};

/// The full verification battery (command `suite`): every criterion at its
/// pinned tolerance, one result per criterion.
std::vector<CriterionResult> run_acceptance_battery(uint64_t seed);

ordered_json inequality_json(const InequalityReport& rep);
ordered_json energy_json(const std::string& name, const Parameters& P, const EnergyValue& v);

}  // namespace mhess
