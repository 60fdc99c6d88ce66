#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hpl {

/// A partition of an interval J = [a, a+L] into dyadic cells, carried by a
/// complete binary tree (every internal node has two children; a leaf at
/// depth d covers a cell of length L·2^{-d}). Serialized as the preorder
/// bitstring (1 = internal, 0 = leaf), which is uniquely decodable.
class DyadicPartition {
 public:
  struct Leaf {
    double a;       // left endpoint
    double length;
    int depth;
    bool operator==(const Leaf&) const = default;
  };

  DyadicPartition(double a, double length, std::vector<std::uint8_t> preorder);
  static DyadicPartition root(double a, double length);

  double a() const { return a_; }
  double length() const { return length_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  int max_depth() const { return max_depth_; }
  const std::vector<Leaf>& leaves() const { return leaves_; }
  const std::vector<std::uint8_t>& preorder() const { return preorder_; }

  std::string to_bitstring() const;
  static DyadicPartition from_bitstring(double a, double length, std::string_view bits);

  /// Half-open index ranges [begin, end) over a grid with `grid_cells` cells
  /// covering J, one per leaf in left-to-right order. Throws ResolutionError
  /// if a leaf is finer than the grid.
  std::vector<std::pair<std::size_t, std::size_t>> cell_ranges(std::size_t grid_cells) const;

  bool operator==(const DyadicPartition&) const = default;

 private:
  double a_ = 0.0;
  double length_ = 1.0;
  std::vector<std::uint8_t> preorder_;
  std::vector<Leaf> leaves_;
  int max_depth_ = 0;
};

/// All dyadic partitions with at most max_leaves leaves (and optionally a
/// depth cap), i.e. all complete binary trees; the count per leaf number is
/// a Catalan number. Weights for this family are Δ_m = 2·|m|.
std::vector<DyadicPartition> catalan_tree_family(std::size_t max_leaves, double a = 0.0,
                                                 double length = 1.0,
                                                 std::optional<int> max_depth = {});

inline double catalan_weight(std::size_t leaves) { return 2.0 * static_cast<double>(leaves); }

/// Partitions of {1..n} into d nonvoid intervals, as cut positions.
/// boundaries holds the d+1 fenceposts 0 = b_0 < b_1 < ... < b_d = n.
struct IntervalPartition {
  std::vector<std::size_t> boundaries;
  std::size_t parts() const { return boundaries.size() - 1; }
};

/// Enumerates all C(n-1, d-1) interval partitions; throws CapacityError
/// beyond the cap.
std::vector<IntervalPartition> interval_partitions(std::size_t n, std::size_t d,
                                                   std::size_t cap = 2'000'000);

double interval_partition_count(std::size_t n, std::size_t d);  // C(n-1, d-1)

/// Δ_m = log C(n, d) + 2 log d.
double interval_partition_weight(std::size_t n, std::size_t d);

}  // namespace hpl
