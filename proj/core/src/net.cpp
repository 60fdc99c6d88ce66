#include "hpl/net.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "hpl/numeric.hpp"

namespace hpl {

namespace {

constexpr double kLatticeConstant = 2.0660186395;  // √(πe/2)

std::string value_key(std::span<const double> values) {
  return std::string(reinterpret_cast<const char*>(values.data()),
                     values.size() * sizeof(double));
}

}  // namespace

BasisSpec::BasisSpec(std::vector<GridFunction> fns, double tol) : functions(std::move(fns)) {
  if (functions.empty()) throw std::invalid_argument("BasisSpec: empty family");
  for (std::size_t i = 1; i < functions.size(); ++i)
    if (!functions[i].same_grid(functions[0]))
      throw DomainMismatchError("BasisSpec: functions on different grids");
  for (std::size_t i = 0; i < functions.size(); ++i) {
    for (std::size_t j = i; j < functions.size(); ++j) {
      const double g = functions[i].inner(functions[j]);
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(g - want) > tol)
        throw std::invalid_argument("BasisSpec: family is not orthonormal (Gram[" +
                                    std::to_string(i) + "][" + std::to_string(j) +
                                    "] = " + format_double(g) + ")");
    }
  }
}

double Net::eta_of(std::size_t element_index) const {
  if (element_index >= elements.size()) throw std::out_of_range("Net::eta_of: bad index");
  return eta[element_index];
}

void Net::recompute_eta() {
  eta.assign(elements.size(), std::numeric_limits<double>::infinity());
  for (const auto& m : models)
    for (std::size_t i : m.members) {
      if (i >= elements.size()) throw std::out_of_range("Net: model member out of range");
      eta[i] = std::min(eta[i], m.eta);
    }
  for (double e : eta)
    if (!std::isfinite(e))
      throw std::invalid_argument("Net: every element must belong to at least one model");
}

double Net::sigma_eta() const {
  double s = 0.0;
  for (const auto& m : models) s += std::exp(-m.eta * m.eta / 84.0);
  return s;
}

double Net::sigma_delta() const {
  double s = 0.0;
  for (const auto& m : models) s += std::exp(-m.delta);
  return s;
}

double log_cardinality_eta_sq(int k, double n_observed) {
  const double ratio = std::sqrt(n_observed / static_cast<double>(k)) + 1.0;
  return 4.2 * static_cast<double>(k) * std::log(kLatticeConstant * ratio);
}

double grid_net_cardinality_bound(int k, double n_observed, double eta) {
  return std::pow(kLatticeConstant * (std::sqrt(2.0 * n_observed) / eta + 1.0),
                  static_cast<double>(k));
}

double grid_net_reduced_bound(int k, double n_observed) {
  return std::pow(kLatticeConstant * (std::sqrt(n_observed / static_cast<double>(k)) + 1.0),
                  static_cast<double>(k));
}

Net build_grid_net(const BasisSpec& basis, double n_observed, const GridNetParams& params) {
  if (n_observed < 0.0) throw std::invalid_argument("build_grid_net: n_observed must be >= 0");
  const int k = basis.dim_count();
  const double sqrt_k = std::sqrt(static_cast<double>(k));

  double eta_m;
  switch (params.eta_rule) {
    case EtaRule::LatticePitch:
      if (!(params.theta > 0.0))
        throw std::invalid_argument("build_grid_net: LatticePitch eta needs theta > 0");
      eta_m = sqrt_k * params.theta / 2.0;
      break;
    case EtaRule::LogCardinality:
      eta_m = std::sqrt(log_cardinality_eta_sq(k, n_observed));
      break;
    case EtaRule::Explicit:
      if (!(params.explicit_eta > 0.0))
        throw std::invalid_argument("build_grid_net: explicit eta must be > 0");
      eta_m = params.explicit_eta;
      break;
    default:
      throw std::invalid_argument("build_grid_net: bad eta rule");
  }
  const double theta = params.theta > 0.0 ? params.theta : 2.0 * eta_m / sqrt_k;
  const double eta_lattice = sqrt_k * theta / 2.0;
  const double radius = std::sqrt(2.0 * n_observed) + eta_lattice;

  // Exact ball ∩ lattice enumeration, one coordinate at a time.
  std::vector<double> coeff(static_cast<std::size_t>(k), 0.0);
  std::vector<std::vector<double>> points;
  std::size_t candidates = 0;
  const std::function<void(int, double)> recurse = [&](int axis, double remaining_sq) {
    if (axis == k) {
      ++candidates;
      if (candidates > params.max_candidates)
        throw CapacityError("build_grid_net: lattice enumeration too large", candidates,
                            params.max_candidates);
      points.push_back(coeff);
      return;
    }
    const double limit = std::sqrt(std::max(0.0, remaining_sq));
    const auto hi = static_cast<std::int64_t>(std::floor(limit / theta));
    const std::int64_t lo = params.nonnegative_orthant ? 0 : -hi;
    for (std::int64_t m = lo; m <= hi; ++m) {
      coeff[static_cast<std::size_t>(axis)] = static_cast<double>(m) * theta;
      const double used = coeff[static_cast<std::size_t>(axis)] *
                          coeff[static_cast<std::size_t>(axis)];
      if (used <= remaining_sq) recurse(axis + 1, remaining_sq - used);
    }
  };
  recurse(0, radius * radius);

  Net net;
  net.b_prime = params.b_prime;
  std::unordered_map<std::string, std::size_t> seen;
  const std::size_t n_cells = basis.functions.front().size();
  for (const auto& a : points) {
    std::vector<double> g(n_cells, 0.0);
    for (int i = 0; i < k; ++i) {
      const auto& phi = basis.functions[static_cast<std::size_t>(i)];
      const double ai = a[static_cast<std::size_t>(i)];
      if (ai == 0.0) continue;
      for (std::size_t c = 0; c < n_cells; ++c) g[c] += ai * phi[c];
    }
    for (double& v : g) {
      v = std::max(0.0, v);  // clip on the √ scale, then square
      v = v * v;
    }
    const std::string key = value_key(g);
    if (seen.emplace(key, net.elements.size()).second)
      net.elements.emplace_back(basis.domain(), basis.resolution(), std::move(g));
  }

  NetModel model;
  model.id = params.model_id;
  model.eta = eta_m;
  model.delta = params.delta.value_or(eta_m * eta_m / 84.0);
  model.d_param = params.d_param.value_or(
      std::max(0.5, std::log(static_cast<double>(std::max<std::size_t>(net.size(), 1))) / 4.0));
  model.members.resize(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) model.members[i] = i;
  net.models.push_back(std::move(model));
  net.recompute_eta();
  return net;
}

DModelCheckResult dmodel_check(const Net& net, double eta, double d_param, double b_prime,
                               std::span<const GridIntensity> probes,
                               std::span<const double> x_grid) {
  for (double x : x_grid)
    if (x < 2.0) throw std::invalid_argument("dmodel_check: x grid values must be >= 2");
  if (probes.empty()) throw std::invalid_argument("dmodel_check: need at least one probe");

  DModelCheckResult result;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    // distances once per probe, shared across the x grid
    std::vector<double> dist(net.size());
    for (std::size_t i = 0; i < net.size(); ++i)
      dist[i] = hellinger(net.elements[i], probes[p]);
    for (double x : x_grid) {
      const double r = x * eta;
      std::size_t count = 0;
      for (double d : dist) count += d < r ? 1 : 0;
      const double cap = b_prime * std::exp(d_param * x * x);
      const double ratio = static_cast<double>(count) / cap;
      if (ratio > result.worst_ratio) {
        result.worst_ratio = ratio;
        result.witness_probe = p;
        result.witness_x = x;
        result.witness_count = count;
      }
    }
  }
  result.ok = result.worst_ratio <= 1.0;
  return result;
}

std::vector<GridIntensity> default_probes(const Net& net, std::size_t extra, Seed seed) {
  std::vector<GridIntensity> probes(net.elements);
  if (net.size() < 2 || extra == 0) return probes;
  Rng rng(seed);
  for (std::size_t n = 0; n < extra; ++n) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(net.size()));
    std::size_t j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(net.size()));
    if (j == i) j = (j + 1) % net.size();
    const double w = rng.uniform();
    const auto& a = net.elements[std::min(i, net.size() - 1)];
    const auto& b = net.elements[std::min(j, net.size() - 1)];
    std::vector<double> v(a.size());
    for (std::size_t c = 0; c < v.size(); ++c) {
      const double s = (1.0 - w) * std::sqrt(a[c]) + w * std::sqrt(b[c]);
      v[c] = s * s;
    }
    probes.emplace_back(a.domain(), a.resolution(), std::move(v));
  }
  return probes;
}

WeightReport weight_conditions(const Net& net) {
  WeightReport report;
  for (const auto& m : net.models) {
    if (!(m.d_param >= 0.5))
      report.violations.push_back("model " + m.id + ": D_m < 1/2");
    if (!(m.eta * m.eta >= 84.0 * m.d_param / 5.0))
      report.violations.push_back("model " + m.id + ": eta_m^2 < 84 D_m / 5");
  }
  report.dims_ok = report.violations.empty();
  report.sigma_eta = net.sigma_eta();
  report.sigma_delta = net.sigma_delta();
  report.sigma_eta_finite = std::isfinite(report.sigma_eta);
  return report;
}

Net merge_nets(std::span<const Net> nets, double delta_shift) {
  if (nets.empty()) throw std::invalid_argument("merge_nets: empty list");
  Net merged;
  merged.b_prime = 0.0;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& net : nets) {
    merged.b_prime = std::max(merged.b_prime, net.b_prime);
    std::vector<std::size_t> remap(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
      const std::string key = value_key(net.elements[i].values());
      auto [it, inserted] = seen.emplace(key, merged.elements.size());
      if (inserted) merged.elements.push_back(net.elements[i]);
      remap[i] = it->second;
    }
    for (const auto& m : net.models) {
      NetModel shifted = m;
      shifted.delta += delta_shift;
      for (auto& idx : shifted.members) idx = remap[idx];
      std::sort(shifted.members.begin(), shifted.members.end());
      shifted.members.erase(std::unique(shifted.members.begin(), shifted.members.end()),
                            shifted.members.end());
      merged.models.push_back(std::move(shifted));
    }
  }
  merged.recompute_eta();
  return merged;
}

Net mix_families(std::span<const Net> families) {
  return merge_nets(families, std::log(static_cast<double>(families.size())));
}

void write_net(const Net& net, const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(directory) / "elements");
  std::ofstream manifest(fs::path(directory) / "manifest.txt");
  manifest << "bprime " << format_double(net.b_prime) << "\n";
  manifest << "elements " << net.size() << "\n";
  for (const auto& m : net.models) {
    manifest << "model " << m.id << " " << format_double(m.eta) << " "
             << format_double(m.d_param) << " " << format_double(m.delta);
    for (std::size_t i : m.members) manifest << " " << i;
    manifest << "\n";
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "e%06zu.txt", i);
    std::ofstream out(fs::path(directory) / "elements" / name);
    out << net.elements[i].to_text();
  }
}

Net read_net(const std::string& directory) {
  namespace fs = std::filesystem;
  std::ifstream manifest(fs::path(directory) / "manifest.txt");
  if (!manifest) throw std::invalid_argument("read_net: no manifest in " + directory);
  Net net;
  std::size_t n_elements = 0;
  std::string line;
  while (std::getline(manifest, line)) {
    std::istringstream in(line);
    std::string tag;
    in >> tag;
    if (tag == "bprime") {
      std::string v;
      in >> v;
      net.b_prime = parse_double(v);
    } else if (tag == "elements") {
      in >> n_elements;
    } else if (tag == "model") {
      NetModel m;
      std::string eta, d, delta;
      in >> m.id >> eta >> d >> delta;
      m.eta = parse_double(eta);
      m.d_param = parse_double(d);
      m.delta = parse_double(delta);
      std::size_t idx;
      while (in >> idx) m.members.push_back(idx);
      net.models.push_back(std::move(m));
    }
  }
  for (std::size_t i = 0; i < n_elements; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "e%06zu.txt", i);
    std::ifstream in(fs::path(directory) / "elements" / name);
    std::stringstream buf;
    buf << in.rdbuf();
    net.elements.push_back(GridIntensity::parse(buf.str()));
  }
  net.recompute_eta();
  return net;
}

}  // namespace hpl
