#include "hpl/verify.hpp"

#include "hpl/numeric.hpp"

namespace hpl {

std::vector<CriterionResult> run_acceptance(Seed seed, unsigned jobs) {
  (void)seed;
  (void)jobs;
  return {};
}

std::string acceptance_csv(std::span<const CriterionResult> rows, Seed seed) {
  std::string out;
  out += "# seed = " + std::to_string(seed.value) + "\n";
  out += "id,name,pass,measured,limit,details\n";
  for (const auto& r : rows) {
    out += std::to_string(r.id) + "," + r.name + "," + (r.pass ? "PASS" : "FAIL") + "," +
           format_double(r.measured) + "," + format_double(r.limit) + "," + r.details + "\n";
  }
  return out;
}

}  // namespace hpl
