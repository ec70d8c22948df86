#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tempfire/tgraph.hpp"

namespace tempfire {

// Labels every edge {1, ..., n-1}, the surrogate under which the temporal
// game replays the static one.
RootedInstance static_to_temporal(const StaticGraph& g, Vertex root);

// Bounded-lifetime clique reduction: the clique on l^c vertices (l = |V(g)|,
// original ids preserved, padding block W appended) labeled
//   {1, ..., l-2}  for original edges and root-to-W edges,
//   {l-1}          otherwise.
// Every W vertex burns on the first timestep under optimal play. Requires
// g connected and l >= 3; l^c is capped by max_vertices.
RootedInstance clique_reduction(const StaticGraph& g, Vertex root, int c, int max_vertices = 4096);

// Adds `extra` edges with the given label sets on top of inst. New edges must
// be disjoint from existing ones and carry min label >= n-1, so they never
// affect which vertices can be saved.
RootedInstance augment_late_edges(const RootedInstance& inst,
                                  const std::vector<std::pair<Edge, std::vector<Timestep>>>& extra);

// Erdos-Renyi underlying graph (resampled until connected), each edge keeping
// timestep t of {1..lambda} with label_prob, label sets resampled if empty.
// Deterministic under seed; root 0.
RootedInstance gen_random(int n, double edge_prob, Timestep lambda, double label_prob,
                          std::uint64_t seed);

// Connected, max degree <= 3, root 0 of degree <= 2: a random degree-capped
// tree plus a few extra edges. Deterministic under seed.
RootedInstance gen_subcubic(int n, Timestep lambda, std::uint64_t seed);

// Chain of alternating ceil(w/2)/floor(w/2) vertex blocks, consecutive blocks
// joined completely by single-timestep labels spread across 1..lambda: the
// interval membership width is exactly min(w, n) while n and lambda scale
// freely. Vertex ids are shuffled by seed. Root is in the first block.
RootedInstance gen_low_vimw(int n, Timestep lambda, int omega_target, std::uint64_t seed);

} // namespace tempfire
