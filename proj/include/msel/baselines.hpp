#pragma once

#include <cstdint>

#include "msel/graph.hpp"

namespace msel {

/// Reference node plus every node within two similarity hops, sorted.
NodeSet two_hop_ball(const SimGraph& g, NodeId v);

/// Original SGSEL without the clique post-processing: for every reference
/// node peel its two-hop ball by minimum incident weight and keep the best
/// feasible intermediate set; return the best over all references (ties to
/// the smallest reference id).
Solution sgsel(const SimGraph& g, const ConstraintPair& c);

/// Peel in seeded uniform-random order.
Solution random_peel(const SimGraph& g, const ConstraintPair& c, std::uint64_t seed);

/// Peel by smallest unweighted in-group degree, ties to the smallest id.
Solution degree_peel(const SimGraph& g, const ConstraintPair& c);

/// Peel by smallest I_F(u) / |N_F(u)|; nodes without in-group neighbors go
/// first.
Solution average_peel(const SimGraph& g, const ConstraintPair& c);

}  // namespace msel
