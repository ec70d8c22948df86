#pragma once

// Shared helpers for the test suites: small instance builders plus
// independent brute-force oracles. The oracles here deliberately work from
// the raw edge/label data, not through the engine or solver code they are
// used to check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "tempfire/engine.hpp"
#include "tempfire/tgraph.hpp"

namespace testsup {

using namespace tempfire;

inline RootedInstance make_instance(int n, Vertex root,
                                    std::vector<std::tuple<int, int, std::vector<Timestep>>> spec) {
    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
    for (auto& [u, v, times] : spec) edges.push_back({Edge(u, v), times});
    RootedInstance inst{TemporalGraph(n, std::move(edges)), root, std::nullopt, ""};
    return inst;
}

// --- raw game evaluation (definition-level, no engine) -----------------------

using Mask = std::uint32_t;

// one synchronous spread step at time t, straight from the label sets
inline Mask raw_spread(const TemporalGraph& g, Mask burnt, Mask blocked, Timestep t) {
    Mask fresh = 0;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const auto& times = g.labels(ei);
        if (!std::binary_search(times.begin(), times.end(), t)) continue;
        const Edge& e = g.edges()[ei];
        if ((burnt >> e.u & 1) && !((burnt | blocked) >> e.v & 1)) fresh |= Mask(1) << e.v;
        if ((burnt >> e.v & 1) && !((burnt | blocked) >> e.u & 1)) fresh |= Mask(1) << e.u;
    }
    return burnt | fresh;
}

// Fully unrestricted optimum: every unburnt undefended vertex is a candidate
// move at every timestep, no pruning, no memoization. Exponential; keep n
// and the lifetime tiny.
inline int naive_max_saved(const RootedInstance& inst, Mask burnt, Mask defended, Timestep t) {
    const TemporalGraph& g = inst.graph;
    if (t > g.lifetime()) return g.vertex_count() - std::popcount(burnt);
    int best = -1;
    for (int move = -1; move < g.vertex_count(); ++move) {
        Mask d2 = defended;
        if (move >= 0) {
            if ((burnt | defended) >> move & 1) continue;
            d2 |= Mask(1) << move;
        }
        Mask b2 = raw_spread(g, burnt, d2, t);
        best = std::max(best, naive_max_saved(inst, b2, d2, t + 1));
    }
    return best;
}

inline int naive_max_saved(const RootedInstance& inst) {
    return naive_max_saved(inst, Mask(1) << inst.root, 0, 1);
}

// --- path enumeration ---------------------------------------------------------

// minimum arrival over all witness sequences, by full enumeration
inline std::optional<Timestep> enumerate_arrival(const TemporalGraph& g,
                                                 const std::vector<Vertex>& path) {
    std::optional<Timestep> best;
    auto rec = [&](auto&& self, size_t i, Timestep prev) -> void {
        if (i + 1 >= path.size()) {
            if (!best || prev < *best) best = prev;
            return;
        }
        int ei = g.edge_index(path[i], path[i + 1]);
        for (Timestep t : g.labels(ei))
            if (t > prev) self(self, i + 1, t);
    };
    if (path.size() < 2) return 0;
    rec(rec, 0, 0);
    return best;
}

// every simple path from `from`, reported through a callback
template <typename Fn>
inline void for_each_simple_path(const TemporalGraph& g, Vertex from, Fn&& fn) {
    std::vector<Vertex> path{from};
    std::vector<char> used(g.vertex_count(), 0);
    used[from] = 1;
    auto rec = [&](auto&& self) -> void {
        fn(path);
        for (auto [y, ei] : g.adjacency(path.back())) {
            (void)ei;
            if (used[y]) continue;
            used[y] = 1;
            path.push_back(y);
            self(self);
            path.pop_back();
            used[y] = 0;
        }
    };
    rec(rec);
}

// every simple cycle through u, via DFS over simple paths closing back to u
inline std::optional<int> enumerate_shortest_cycle(const TemporalGraph& g, Vertex u) {
    std::optional<int> best;
    for_each_simple_path(g, u, [&](const std::vector<Vertex>& path) {
        if (path.size() < 3) return;
        if (g.edge_index(path.back(), u) >= 0) {
            int len = static_cast<int>(path.size());
            if (!best || len < *best) best = len;
        }
    });
    return best;
}

// --- exhaustive reserve play (normalized) --------------------------------------

// Reachable true game states per timestep under reserve play that defends, at
// time t, only subsets of the vertices with an edge active at t. Profiles are
// projected onto F_i with masks matching the solver's layer encoding.
struct ProfileCensus {
    // per layer i (1-based index i-1): set of (D, B, g, c)
    std::vector<std::set<std::tuple<Mask, Mask, int, int>>> layers;
};

inline ProfileCensus enumerate_profiles(const RootedInstance& inst) {
    const TemporalGraph& g = inst.graph;
    VimSequence vim = vim_sequence(g);
    ProfileCensus census;
    census.layers.resize(g.lifetime());

    struct State {
        Mask burnt, defended;
        int budget;
        bool operator<(const State& o) const {
            return std::tie(burnt, defended, budget) < std::tie(o.burnt, o.defended, o.budget);
        }
    };
    std::set<State> frontier{State{Mask(1) << inst.root, 0, 1}};

    for (Timestep t = 1; t <= g.lifetime(); ++t) {
        // V(E_t)
        Mask active = 0;
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const auto& times = g.labels(ei);
            if (std::binary_search(times.begin(), times.end(), t)) {
                active |= Mask(1) << g.edges()[ei].u;
                active |= Mask(1) << g.edges()[ei].v;
            }
        }
        const auto& ft = vim.F[t - 1];
        std::set<State> next;
        for (const State& s : frontier) {
            Mask cand = active & ~s.burnt & ~s.defended;
            std::vector<int> ids;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (cand >> v & 1) ids.push_back(v);
            for (std::uint32_t sub = 0; sub < (1u << ids.size()); ++sub) {
                if (std::popcount(sub) > s.budget) continue;
                Mask a = 0;
                for (size_t b = 0; b < ids.size(); ++b)
                    if (sub >> b & 1) a |= Mask(1) << ids[b];
                Mask d2 = s.defended | a;
                Mask b2 = raw_spread(g, s.burnt, d2, t);
                int g2 = s.budget - std::popcount(a) + 1;
                next.insert(State{b2, d2, g2});

                Mask dloc = 0, bloc = 0;
                for (size_t idx = 0; idx < ft.size(); ++idx) {
                    if (d2 >> ft[idx] & 1) dloc |= Mask(1) << idx;
                    if (b2 >> ft[idx] & 1) bloc |= Mask(1) << idx;
                }
                census.layers[t - 1].insert({dloc, bloc, g2, std::popcount(b2)});
            }
        }
        frontier = std::move(next);
    }
    return census;
}

// --- random strategies ----------------------------------------------------------

// a uniformly chosen replayable strategy (vertex or pass each timestep)
template <typename Rng>
inline Strategy random_strategy(const RootedInstance& inst, Rng& rng) {
    Simulation sim(inst);
    Strategy s;
    while (!sim.finished()) {
        std::vector<Vertex> open;
        for (Vertex v = 0; v < inst.graph.vertex_count(); ++v)
            if (!sim.is_burnt(v) && !sim.is_defended(v)) open.push_back(v);
        if (!open.empty() && rng() % 2 == 0) {
            Vertex v = open[rng() % open.size()];
            s.moves.emplace_back(v);
            sim.step({v});
        } else {
            s.moves.emplace_back(std::nullopt);
            sim.step({});
        }
    }
    return s;
}

// a uniformly chosen budget-feasible replayable reserve strategy
template <typename Rng>
inline ReserveStrategy random_reserve_strategy(const RootedInstance& inst, Rng& rng) {
    Simulation sim(inst);
    ReserveStrategy s;
    int budget = 1;
    while (!sim.finished()) {
        std::vector<Vertex> open;
        for (Vertex v = 0; v < inst.graph.vertex_count(); ++v)
            if (!sim.is_burnt(v) && !sim.is_defended(v)) open.push_back(v);
        std::vector<Vertex> set;
        int want = static_cast<int>(rng() % (budget + 1));
        for (int i = 0; i < want && !open.empty(); ++i) {
            size_t pick = rng() % open.size();
            set.push_back(open[pick]);
            open.erase(open.begin() + pick);
        }
        budget -= static_cast<int>(set.size());
        s.moves.push_back(set);
        sim.step(set);
        ++budget;
    }
    return s;
}

} // namespace testsup
