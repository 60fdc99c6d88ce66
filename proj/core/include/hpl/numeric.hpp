#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hpl {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double x);

/// Parses what format_double produced (and ordinary decimal literals).
double parse_double(std::string_view text);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

/// Sample mean and standard error of the mean.
MeanStderr mean_stderr(std::span<const double> values);

/// log(n choose k) via lgamma; exact enough for weights at any desk scale.
double log_binomial(double n, double k);

/// Catalan numbers C_0..C_upTo (C_j counts complete binary trees with j+1 leaves).
std::vector<std::uint64_t> catalan_numbers(std::size_t up_to);

/// Ordinary least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

/// Runs body(i) for i in [0, n). With jobs > 1 the index range is split into
/// contiguous chunks; results must be written to per-index slots so the
/// outcome is identical for any job count.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace hpl
