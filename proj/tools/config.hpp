#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpl::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key-value experiment description with two sections:
///
///   [experiment]
///   kind = simulate          # one of the known experiment kinds
///   seed = 17
///   reps = 1000
///   out = results
///   jobs = 1
///
///   [params]
///   ... free-form keys, validated by the experiment kind ...
///
/// Unknown [experiment] keys are rejected; the echo lists every resolved
/// value (including defaults) and parses back to the same config.
struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 0;
  bool seed_from_config = false;
  std::size_t reps = 1000;
  std::string out_dir = "out";
  unsigned jobs = 1;
  std::map<std::string, std::string> params;

  static ExperimentConfig parse_text(const std::string& text);
  static ExperimentConfig parse_file(const std::string& path);

  std::string echo() const;

  // typed param access; throws ConfigError on bad values
  std::string param(const std::string& key, const std::string& fallback) const;
  double param_double(const std::string& key, double fallback) const;
  std::int64_t param_int(const std::string& key, std::int64_t fallback) const;

  /// Rejects params outside the allowed set (call after dispatch).
  void restrict_params(const std::vector<std::string>& allowed) const;
};

const std::vector<std::string>& known_experiment_kinds();

}  // namespace hpl::cli
