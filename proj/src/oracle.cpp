#include "msel/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "msel/error.hpp"
#include "msel/parallel.hpp"

namespace msel {

namespace {

NodeSet bits_to_set(std::uint32_t mask) {
  NodeSet out;
  while (mask) {
    out.push_back(static_cast<NodeId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

// Lexicographic comparison of the sorted member lists of two masks.
bool lex_smaller(std::uint32_t a, std::uint32_t b) {
  NodeSet x = bits_to_set(a), y = bits_to_set(b);
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

struct Best {
  bool found = false;
  double alpha = 0.0;
  std::uint32_t mask = 0;

  void offer(double a, std::uint32_t m) {
    if (!found || a > alpha || (a == alpha && lex_smaller(m, mask))) {
      found = true;
      alpha = a;
      mask = m;
    }
  }
};

}  // namespace

OracleResult exact_msp(const SimGraph& g, const ConstraintPair& c) {
  c.validate();
  const std::size_t n = g.node_count();
  if (n > kOracleNodeLimit) {
    throw Error(ErrorKind::Capacity, "exact_msp enumerates 2^n subsets; n=" +
                                         std::to_string(n) + " exceeds limit " +
                                         std::to_string(kOracleNodeLimit));
  }
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  std::vector<std::uint32_t> strong(n, 0);
  for (const auto& e : g.edges()) {
    w[e.u][e.v] = w[e.v][e.u] = e.weight;
    if (e.weight > c.s) {
      strong[e.u] |= 1u << e.v;
      strong[e.v] |= 1u << e.u;
    }
  }

  // W(mask) = W(mask without its lowest node) + that node's weight into the rest.
  const std::uint32_t total = 1u << n;
  std::vector<double> weight(total, 0.0);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    double add = 0.0;
    for (std::uint32_t r = rest; r; r &= r - 1) add += w[low][std::countr_zero(r)];
    weight[mask] = weight[rest] + add;
  }

  const std::size_t workers = std::min<std::size_t>(thread_budget(), 8);
  std::vector<Best> partial(std::max<std::size_t>(workers, 1));
  parallel_chunks(
      total,
      [&](std::size_t worker, std::size_t begin, std::size_t end) {
        Best& best = partial[worker];
        for (std::size_t m = begin; m < end; ++m) {
          const auto mask = static_cast<std::uint32_t>(m);
          const auto size = static_cast<std::size_t>(std::popcount(mask));
          if (size <= c.p) continue;
          bool cohesive = true;
          for (std::uint32_t r = mask; r && cohesive; r &= r - 1) {
            cohesive = (strong[std::countr_zero(r)] & mask) != 0;
          }
          if (!cohesive) continue;
          best.offer(weight[mask] / static_cast<double>(size), mask);
        }
      },
      workers);

  Best best;
  for (const auto& b : partial) {
    if (b.found) best.offer(b.alpha, b.mask);
  }
  OracleResult result;
  if (best.found) {
    result.feasible = true;
    result.opt_set = bits_to_set(best.mask);
    result.opt_alpha = best.alpha;
  }
  return result;
}

Decomposition decompose(std::span<const NodeId> members,
                        std::span<const NodeId> first_part, const SimGraph& g) {
  NodeSet part(first_part.begin(), first_part.end());
  std::sort(part.begin(), part.end());
  NodeSet all(members.begin(), members.end());
  std::sort(all.begin(), all.end());
  if (!std::includes(all.begin(), all.end(), part.begin(), part.end())) {
    throw Error(ErrorKind::Precondition, "first part is not a subset of the members");
  }
  Decomposition d;
  for (NodeId u : members) {
    (std::binary_search(part.begin(), part.end(), u) ? d.first : d.second).push_back(u);
  }
  std::sort(d.first.begin(), d.first.end());
  std::sort(d.second.begin(), d.second.end());
  d.first_weight = total_weight(d.first, g);
  d.second_weight = total_weight(d.second, g);
  d.cross_weight = cross_weight(d.first, d.second, g);
  return d;
}

double ratio_check(const OracleResult& oracle, const Solution& solution) {
  if (!oracle.feasible) {
    throw Error(ErrorKind::Precondition, "ratio undefined: instance has no feasible subset");
  }
  if (solution.empty()) return 0.0;
  return solution.alpha / oracle.opt_alpha;
}

double ratio_check(const SimGraph& g, const ConstraintPair& c, const Solution& solution) {
  return ratio_check(exact_msp(g, c), solution);
}

}  // namespace msel
