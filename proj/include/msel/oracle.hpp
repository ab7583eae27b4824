#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "msel/graph.hpp"

namespace msel {

inline constexpr std::size_t kOracleNodeLimit = 20;

/// Split of a solution across a two-part node partition: the members in
/// each part and the weight of the edges between them.
struct Decomposition {
  NodeSet first;
  NodeSet second;
  double first_weight = 0.0;
  double second_weight = 0.0;
  double cross_weight = 0.0;
};

struct OracleResult {
  NodeSet opt_set;
  double opt_alpha = 0.0;
  bool feasible = false;
  std::optional<Decomposition> decomposition;
};

/// Exhaustive optimum over all 2^n subsets: the feasible subset with the
/// largest alpha, ties to the lexicographically smallest member list.
/// Throws Error(Capacity) above kOracleNodeLimit nodes.
OracleResult exact_msp(const SimGraph& g, const ConstraintPair& c);

/// Splits `members` by membership in `first_part`.
Decomposition decompose(std::span<const NodeId> members,
                        std::span<const NodeId> first_part, const SimGraph& g);

/// alpha(solution) / alpha(OPT). Throws Error(Precondition) when the
/// instance has no feasible subset. An empty solution scores 0.
double ratio_check(const SimGraph& g, const ConstraintPair& c, const Solution& solution);
double ratio_check(const OracleResult& oracle, const Solution& solution);

}  // namespace msel
