#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msel/graph.hpp"

namespace msel {

/// Dense row-major node attribute matrix (n nodes by d features).
class AttributeMatrix {
 public:
  AttributeMatrix() = default;
  AttributeMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Per-column min-max rescale into [0, 1]; constant columns become 0.
AttributeMatrix normalize_attributes(const AttributeMatrix& raw);

/// sqrt(sum_i (1 - |x_i - y_i|)^2 / d). Inputs are expected in [0, 1].
double pair_weight(std::span<const double> x, std::span<const double> y);

struct BuildMode {
  enum class Kind { Edges, Knn, Full };
  Kind kind = Kind::Edges;
  std::size_t k = 0;

  /// Accepts "edges", "full" or "knn:K".
  static BuildMode parse(const std::string& text);
  std::string to_string() const;
};

inline constexpr std::size_t kFullModeNodeLimit = 5000;

/// Weighted similarity graph over the rows of `x`.
///   Edges: weight each structural pair (deduplicated, self pairs dropped).
///   Knn:   each node keeps its k heaviest partners; union-symmetrized.
///   Full:  every pair; refused above kFullModeNodeLimit nodes.
/// Pairs whose weight is exactly 0 produce no edge.
SimGraph build_similarity_graph(
    const AttributeMatrix& x,
    std::span<const std::pair<NodeId, NodeId>> structural, BuildMode mode,
    std::vector<std::string> labels = {});

}  // namespace msel
