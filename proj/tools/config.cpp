#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hpl/numeric.hpp"

namespace hpl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<std::string>& known_experiment_kinds() {
  static const std::vector<std::string> kinds = {
      "simulate",  "metric-checks", "test-bounds", "net-info",  "t-select",
      "approx",    "aggregate",     "lower-bound", "regression"};
  return kinds;
}

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  bool have_kind = false;
  while (std::getline(in, line)) {
    ++line_no;
    // the config echo embeds itself in CSV comments; strip one leading '#'
    std::string stripped = trim(line);
    if (!stripped.empty() && stripped[0] == '#') stripped = trim(stripped.substr(1));
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = stripped.substr(1, stripped.size() - 2);
      if (section != "experiment" && section != "params")
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section +
                          "]");
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (section == "experiment") {
      if (key == "kind") {
        const auto& kinds = known_experiment_kinds();
        if (std::find(kinds.begin(), kinds.end(), value) == kinds.end())
          throw ConfigError("line " + std::to_string(line_no) + ": unknown kind '" + value + "'");
        cfg.kind = value;
        have_kind = true;
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
        cfg.seed_from_config = true;
      } else if (key == "reps") {
        cfg.reps = std::stoull(value);
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "jobs") {
        cfg.jobs = static_cast<unsigned>(std::stoul(value));
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown [experiment] key '" +
                          key + "'");
      }
    } else if (section == "params") {
      cfg.params[key] = value;
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    }
  }
  if (!have_kind) throw ConfigError("config: missing [experiment] kind");
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string ExperimentConfig::echo() const {
  std::string out;
  out += "[experiment]\n";
  out += "kind = " + kind + "\n";
  out += "seed = " + std::to_string(seed) + "\n";
  out += "reps = " + std::to_string(reps) + "\n";
  out += "out = " + out_dir + "\n";
  out += "jobs = " + std::to_string(jobs) + "\n";
  out += "[params]\n";
  for (const auto& [k, v] : params) out += k + " = " + v + "\n";
  return out;
}

std::string ExperimentConfig::param(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double ExperimentConfig::param_double(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return parse_double(it->second);
  } catch (const std::exception&) {
    throw ConfigError("param '" + key + "': bad number '" + it->second + "'");
  }
}

std::int64_t ExperimentConfig::param_int(const std::string& key, std::int64_t fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::int64_t out = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("param '" + key + "': bad integer '" + s + "'");
  return out;
}

void ExperimentConfig::restrict_params(const std::vector<std::string>& allowed) const {
  for (const auto& [k, v] : params) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ConfigError("kind '" + kind + "': unknown param '" + k + "'");
  }
}

}  // namespace hpl::cli
