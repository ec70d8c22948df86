#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempfire/errors.hpp"

namespace tempfire {

using Vertex = int;
using Timestep = int;

// Unordered vertex pair, stored canonically with u < v.
struct Edge {
    Vertex u;
    Vertex v;

    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

// Undirected loop-free graph with a set of active timesteps per edge.
// Immutable after construction; queries are safe from concurrent readers.
class TemporalGraph {
public:
    // Validates: no loops, no duplicate edges, labels nonempty with every
    // timestep >= 1. Does not require connectivity (see RootedInstance::validate).
    TemporalGraph(int n, std::vector<std::pair<Edge, std::vector<Timestep>>> labeled_edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    Timestep lifetime() const { return lifetime_; }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Timestep>& labels(int edge_index) const { return labels_[edge_index]; }

    // Index into edges() or -1 if {u,v} is not an edge.
    int edge_index(Vertex u, Vertex v) const;

    // Neighbors of v in the underlying static graph as (neighbor, edge index).
    const std::vector<std::pair<Vertex, int>>& adjacency(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool temporally_adjacent(Vertex u, Vertex v, Timestep t) const;

    // Indices of the edges active at time t (E_t); empty beyond the lifetime.
    const std::vector<int>& active_edges(Timestep t) const;

    // All vertices temporally adjacent at time t to some member of `from`.
    std::vector<Vertex> neighbors_at(const std::vector<Vertex>& from, Timestep t) const;

    // First/last active timestep over v's incident edges.
    Timestep mintime(Vertex v) const { return mintime_[v]; }
    Timestep maxtime(Vertex v) const { return maxtime_[v]; }

    // BFS distance in the underlying graph; -1 if disconnected.
    int static_dist(Vertex u, Vertex v) const;

    // Length of the shortest simple cycle through u (>= 3), or nullopt if
    // no cycle passes through u. Exact: shortest x-y path in G - u over all
    // neighbor pairs x, y of u.
    std::optional<int> shortest_cycle_through(Vertex u) const;

    bool connected() const;

private:
    int n_;
    Timestep lifetime_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Timestep>> labels_;
    std::vector<std::vector<std::pair<Vertex, int>>> adj_;
    std::vector<std::vector<int>> by_time_; // by_time_[t] = indices of E_t, t in 0..lifetime
    std::vector<Timestep> mintime_, maxtime_;
};

// Label-free graph, input to the static game and the reductions.
struct StaticGraph {
    int n = 0;
    std::vector<Edge> edges;
};

// The underlying static graph of g (labels dropped).
StaticGraph underlying(const TemporalGraph& g);

// The vertex interval membership sequence (F_t)_{t in 1..lifetime} and its
// width. F_t = {v : mintime(v) <= t <= maxtime(v)}.
struct VimSequence {
    std::vector<std::vector<Vertex>> F; // F[t-1] = F_t, sorted ascending
    int width = 0;
    std::vector<Timestep> mintime;
    std::vector<Timestep> maxtime;
};

VimSequence vim_sequence(const TemporalGraph& g);

// A solver instance: graph, fire origin, optional decision target.
struct RootedInstance {
    TemporalGraph graph;
    Vertex root;
    std::optional<int> target;      // k for decision queries
    std::string provenance;         // generator parameters, carried in JSON dumps

    // Full invariant check for solver entry points: root in range, n >= 2,
    // underlying graph connected, target in [0, n-1] if present.
    void validate() const;
};

// A simple path in the underlying graph, stored as its vertex sequence.
struct TemporalPath {
    std::vector<Vertex> vertices; // v0, v1, ..., v_len; edges {v_i, v_i+1}

    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// Minimum final time over strictly increasing witness sequences along p,
// or nullopt if the path is not temporally admissible. Greedy per edge:
// earliest label exceeding the previous hop time.
std::optional<Timestep> arrival_time(const TemporalGraph& g, const TemporalPath& p);

// Per-vertex minimum arrival time over all temporally admissible paths from
// the root; root maps to 0, unreachable vertices to nullopt. Computed by
// relaxation over E_t for t = 1..lifetime.
std::vector<std::optional<Timestep>> foremost_times(const RootedInstance& inst);

// --- instance document I/O -------------------------------------------------
//
// Text format, line oriented:
//   n root
//   u v : t1 t2 ...        (one line per edge, timesteps ascending)
// JSON format:
//   {"n":int,"root":int,"edges":[{"u":int,"v":int,"times":[int,...]}]}
// with an optional "comment" field carrying generator provenance.
// Dumps are canonical: edges sorted lexicographically, times ascending.

RootedInstance load_instance(const std::string& text);
RootedInstance load_instance_file(const std::string& path);
std::string dump_instance_text(const RootedInstance& inst);
std::string dump_instance_json(const RootedInstance& inst);

} // namespace tempfire
