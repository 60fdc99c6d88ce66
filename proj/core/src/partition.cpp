#include "hpl/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hpl/errors.hpp"
#include "hpl/numeric.hpp"

namespace hpl {

DyadicPartition::DyadicPartition(double a, double length, std::vector<std::uint8_t> preorder)
    : a_(a), length_(length), preorder_(std::move(preorder)) {
  if (!(length_ > 0.0)) throw std::invalid_argument("DyadicPartition: length must be > 0");
  if (preorder_.empty()) throw std::invalid_argument("DyadicPartition: empty preorder");
  // Walk the preorder once: validates completeness and collects leaves.
  std::size_t pos = 0;
  double offset = 0.0;
  const auto walk = [&](auto&& self, int depth, double cell_len) -> void {
    if (pos >= preorder_.size())
      throw std::invalid_argument("DyadicPartition: truncated preorder");
    const bool internal = preorder_[pos++] != 0;
    if (!internal) {
      leaves_.push_back(Leaf{a_ + offset, cell_len, depth});
      max_depth_ = std::max(max_depth_, depth);
      offset += cell_len;
      return;
    }
    self(self, depth + 1, cell_len / 2.0);
    self(self, depth + 1, cell_len / 2.0);
  };
  walk(walk, 0, length_);
  if (pos != preorder_.size())
    throw std::invalid_argument("DyadicPartition: trailing preorder bits");
}

DyadicPartition DyadicPartition::root(double a, double length) {
  return DyadicPartition(a, length, {0});
}

std::string DyadicPartition::to_bitstring() const {
  std::string s;
  s.reserve(preorder_.size());
  for (auto b : preorder_) s += b ? '1' : '0';
  return s;
}

DyadicPartition DyadicPartition::from_bitstring(double a, double length, std::string_view bits) {
  std::vector<std::uint8_t> pre;
  pre.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("DyadicPartition: bitstring must be 0/1");
    pre.push_back(c == '1');
  }
  return DyadicPartition(a, length, std::move(pre));
}

std::vector<std::pair<std::size_t, std::size_t>> DyadicPartition::cell_ranges(
    std::size_t grid_cells) const {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(leaves_.size());
  std::size_t begin = 0;
  for (const auto& leaf : leaves_) {
    const std::size_t width = grid_cells >> leaf.depth;
    if (width == 0 || (width << leaf.depth) != grid_cells)
      throw ResolutionError("DyadicPartition: leaf at depth " + std::to_string(leaf.depth) +
                            " does not align with a " + std::to_string(grid_cells) +
                            "-cell grid");
    ranges.emplace_back(begin, begin + width);
    begin += width;
  }
  return ranges;
}

namespace {

// trees[l] = all preorder strings with l leaves (depth-capped when asked)
void enumerate_trees(std::size_t max_leaves, std::optional<int> max_depth,
                     std::vector<std::vector<std::vector<std::uint8_t>>>& trees) {
  trees.assign(max_leaves + 1, {});
  trees[1].push_back({0});
  for (std::size_t l = 2; l <= max_leaves; ++l) {
    for (std::size_t left = 1; left < l; ++left) {
      for (const auto& lt : trees[left]) {
        for (const auto& rt : trees[l - left]) {
          std::vector<std::uint8_t> pre;
          pre.reserve(1 + lt.size() + rt.size());
          pre.push_back(1);
          pre.insert(pre.end(), lt.begin(), lt.end());
          pre.insert(pre.end(), rt.begin(), rt.end());
          trees[l].push_back(std::move(pre));
        }
      }
    }
  }
  if (max_depth) {
    for (auto& bucket : trees) {
      std::vector<std::vector<std::uint8_t>> kept;
      for (auto& pre : bucket) {
        DyadicPartition p(0.0, 1.0, pre);
        if (p.max_depth() <= *max_depth) kept.push_back(std::move(pre));
      }
      bucket = std::move(kept);
    }
  }
}

}  // namespace

std::vector<DyadicPartition> catalan_tree_family(std::size_t max_leaves, double a,
                                                 double length, std::optional<int> max_depth) {
  if (max_leaves == 0) throw std::invalid_argument("catalan_tree_family: need >= 1 leaf");
  if (max_leaves > 16)
    throw CapacityError("catalan_tree_family: enumeration too large", max_leaves, 16);
  std::vector<std::vector<std::vector<std::uint8_t>>> trees;
  enumerate_trees(max_leaves, max_depth, trees);
  std::vector<DyadicPartition> out;
  for (std::size_t l = 1; l <= max_leaves; ++l)
    for (auto& pre : trees[l]) out.emplace_back(a, length, std::move(pre));
  return out;
}

std::vector<IntervalPartition> interval_partitions(std::size_t n, std::size_t d,
                                                   std::size_t cap) {
  if (d < 1 || d > n) throw std::invalid_argument("interval_partitions: need 1 <= d <= n");
  const double count = interval_partition_count(n, d);
  if (count > static_cast<double>(cap))
    throw CapacityError("interval_partitions: too many partitions",
                        static_cast<std::size_t>(count), cap);
  std::vector<IntervalPartition> out;
  std::vector<std::size_t> cuts(d - 1);
  const auto recurse = [&](auto&& self, std::size_t pos, std::size_t next) -> void {
    if (pos == cuts.size()) {
      IntervalPartition p;
      p.boundaries.reserve(d + 1);
      p.boundaries.push_back(0);
      p.boundaries.insert(p.boundaries.end(), cuts.begin(), cuts.end());
      p.boundaries.push_back(n);
      out.push_back(std::move(p));
      return;
    }
    // cut positions are strictly increasing in [1, n-1]
    for (std::size_t c = next; c + (cuts.size() - pos - 1) <= n - 1; ++c) {
      cuts[pos] = c;
      self(self, pos + 1, c + 1);
    }
  };
  recurse(recurse, 0, 1);
  return out;
}

double interval_partition_count(std::size_t n, std::size_t d) {
  return std::round(std::exp(log_binomial(static_cast<double>(n - 1),
                                          static_cast<double>(d - 1))));
}

double interval_partition_weight(std::size_t n, std::size_t d) {
  return log_binomial(static_cast<double>(n), static_cast<double>(d)) +
         2.0 * std::log(static_cast<double>(d));
}

}  // namespace hpl
