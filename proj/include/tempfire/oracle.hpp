#pragma once

#include <cstdint>

#include "tempfire/engine.hpp"

namespace tempfire {

// Exhaustive ground-truth solvers. Memoized search over
// (burnt set, defended set, timestep) states; bitmask-encoded, so instances
// are capped at 64 vertices regardless of the guard.
struct OracleOptions {
    int max_n = 20; // instance-too-large guard
    // Treat vertices the fire can no longer reach (given the current burnt
    // and defended sets, with no further defences) as saved, and never
    // defend them. Exact; off by default.
    bool foremost_prune = false;
};

struct OracleResult {
    int max_saved = 0;
    Strategy witness; // lexicographically smallest maximizer (pass before vertex moves)
    std::uint64_t states_explored = 0;
};

struct ReserveOracleResult {
    int max_saved = 0;
    ReserveStrategy witness; // first maximizer in ascending-mask enumeration
    std::uint64_t states_explored = 0;
};

// Maximum savable vertices in Temporal Firefighter, with a witness strategy.
// Candidate defences at timestep t are the unburnt, undefended vertices with
// some incident label >= t, plus pass; any other defence cannot change the
// outcome.
OracleResult solve_temporal(const RootedInstance& inst, const OracleOptions& opt = {});

// Reserve variant. Defence sets are restricted to vertices with an incident
// edge active at exactly the current timestep (the normalization under which
// optimal play is preserved), plus the empty set.
ReserveOracleResult solve_reserve(const RootedInstance& inst, const OracleOptions& opt = {});

// Classic Firefighter on a static graph, solved on the temporal surrogate
// with every edge labeled {1, ..., n-1}.
OracleResult solve_static(const StaticGraph& g, Vertex root, const OracleOptions& opt = {});

} // namespace tempfire
