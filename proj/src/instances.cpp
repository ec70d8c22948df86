#include "tempfire/instances.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

namespace tempfire {

namespace {

// Distribution-free uniforms so that seeded output is identical across
// standard library implementations.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int next_below(std::mt19937_64& rng, int bound) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

void validate_static(const StaticGraph& g) {
    if (g.n < 2) throw ValidationError("static graph needs at least 2 vertices");
    std::vector<std::vector<Vertex>> adj(g.n);
    std::vector<Edge> sorted = g.edges;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        const Edge& e = sorted[i];
        if (e.u < 0 || e.v >= g.n) throw ValidationError("static edge out of range");
        if (e.u == e.v) throw ValidationError("static loop edge");
        if (i > 0 && sorted[i - 1] == e) throw ValidationError("duplicate static edge");
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(g.n, 0);
    std::deque<Vertex> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (Vertex y : adj[x])
            if (!seen[y]) { seen[y] = 1; ++count; q.push_back(y); }
    }
    if (count != g.n) throw ValidationError("static graph is disconnected");
}

std::vector<Timestep> random_label_set(std::mt19937_64& rng, Timestep lambda, double keep_prob) {
    std::vector<Timestep> times;
    while (times.empty()) {
        for (Timestep t = 1; t <= lambda; ++t)
            if (next_unit(rng) < keep_prob) times.push_back(t);
    }
    return times;
}

bool edges_connected(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n, 0);
    std::deque<Vertex> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (Vertex y : adj[x])
            if (!seen[y]) { seen[y] = 1; ++count; q.push_back(y); }
    }
    return count == n;
}

} // namespace

RootedInstance static_to_temporal(const StaticGraph& g, Vertex root) {
    validate_static(g);
    if (root < 0 || root >= g.n) throw ValidationError("root out of range");
    std::vector<Timestep> full(g.n - 1);
    for (int t = 1; t <= g.n - 1; ++t) full[t - 1] = t;
    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
    edges.reserve(g.edges.size());
    for (const Edge& e : g.edges) edges.push_back({e, full});
    RootedInstance inst{TemporalGraph(g.n, std::move(edges)), root, std::nullopt, ""};
    inst.validate();
    return inst;
}

RootedInstance clique_reduction(const StaticGraph& g, Vertex root, int c, int max_vertices) {
    validate_static(g);
    if (root < 0 || root >= g.n) throw ValidationError("root out of range");
    if (g.n < 3) throw ValidationError("clique reduction needs at least 3 vertices");
    if (c < 1) throw ValidationError("exponent c must be positive");

    long long total = 1;
    for (int i = 0; i < c; ++i) {
        total *= g.n;
        if (total > max_vertices)
            throw GuardExceeded("clique reduction would produce " + std::to_string(g.n) + "^" +
                                std::to_string(c) + " vertices, over the cap of " +
                                std::to_string(max_vertices));
    }
    int big_n = static_cast<int>(total);
    int l = g.n;

    std::vector<char> is_orig_edge(static_cast<size_t>(l) * l, 0);
    for (const Edge& e : g.edges) {
        is_orig_edge[static_cast<size_t>(e.u) * l + e.v] = 1;
        is_orig_edge[static_cast<size_t>(e.v) * l + e.u] = 1;
    }

    std::vector<Timestep> early(l - 2);
    for (int t = 1; t <= l - 2; ++t) early[t - 1] = t;
    std::vector<Timestep> late{l - 1};

    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
    edges.reserve(static_cast<size_t>(big_n) * (big_n - 1) / 2);
    for (int u = 0; u < big_n; ++u) {
        for (int v = u + 1; v < big_n; ++v) {
            bool orig = u < l && v < l && is_orig_edge[static_cast<size_t>(u) * l + v];
            bool root_to_w = (u == root && v >= l) || (v == root && u >= l);
            edges.push_back({Edge(u, v), (orig || root_to_w) ? early : late});
        }
    }

    std::ostringstream prov;
    prov << "reduce=clique l=" << l << " c=" << c << " root=" << root;
    RootedInstance inst{TemporalGraph(big_n, std::move(edges)), root, std::nullopt, prov.str()};
    inst.validate();
    return inst;
}

RootedInstance augment_late_edges(const RootedInstance& inst,
                                  const std::vector<std::pair<Edge, std::vector<Timestep>>>& extra) {
    const TemporalGraph& g = inst.graph;
    int n = g.vertex_count();
    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
    for (int i = 0; i < g.edge_count(); ++i) edges.push_back({g.edges()[i], g.labels(i)});
    for (const auto& [e, times] : extra) {
        if (g.edge_index(e.u, e.v) >= 0)
            throw ValidationError("edge collision: {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "} already present");
        if (times.empty()) throw ValidationError("empty label set on new edge");
        Timestep lo = *std::min_element(times.begin(), times.end());
        if (lo < n - 1)
            throw ValidationError("label too early: new edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "} active at " + std::to_string(lo) +
                                  " < " + std::to_string(n - 1));
        edges.push_back({e, times});
    }
    RootedInstance out{TemporalGraph(n, std::move(edges)), inst.root, inst.target, inst.provenance};
    out.validate();
    return out;
}

RootedInstance gen_random(int n, double edge_prob, Timestep lambda, double label_prob,
                          std::uint64_t seed) {
    if (n < 2 || edge_prob <= 0.0 || edge_prob > 1.0 || lambda < 1 || label_prob <= 0.0 ||
        label_prob > 1.0)
        throw ValidationError("gen_random parameter out of range");
    std::mt19937_64 rng(seed);
    std::vector<Edge> chosen;
    const int max_retries = 10000;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= max_retries)
            throw ValidationError("gen_random: no connected sample after " +
                                  std::to_string(max_retries) + " retries");
        chosen.clear();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (next_unit(rng) < edge_prob) chosen.push_back(Edge(u, v));
        if (edges_connected(n, chosen)) break;
    }
    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
    edges.reserve(chosen.size());
    for (const Edge& e : chosen) edges.push_back({e, random_label_set(rng, lambda, label_prob)});

    std::ostringstream prov;
    prov << "gen=gnp n=" << n << " p=" << edge_prob << " lambda=" << lambda << " q=" << label_prob
         << " seed=" << seed;
    RootedInstance inst{TemporalGraph(n, std::move(edges)), 0, std::nullopt, prov.str()};
    inst.validate();
    return inst;
}

RootedInstance gen_subcubic(int n, Timestep lambda, std::uint64_t seed) {
    if (n < 2 || lambda < 1) throw ValidationError("gen_subcubic parameter out of range");
    std::mt19937_64 rng(seed);
    auto cap = [](Vertex v) { return v == 0 ? 2 : 3; };

    std::vector<int> degree(n, 0);
    std::vector<Edge> chosen;
    for (Vertex v = 1; v < n; ++v) {
        std::vector<Vertex> hosts;
        for (Vertex u = 0; u < v; ++u)
            if (degree[u] < cap(u)) hosts.push_back(u);
        Vertex u = hosts[next_below(rng, static_cast<int>(hosts.size()))];
        chosen.push_back(Edge(u, v));
        ++degree[u];
        ++degree[v];
    }
    // sprinkle extra edges to create cycles, keeping the degree caps
    int attempts = n;
    for (int i = 0; i < attempts; ++i) {
        Vertex u = next_below(rng, n), v = next_below(rng, n);
        if (u == v || degree[u] >= cap(u) || degree[v] >= cap(v)) continue;
        Edge e(u, v);
        if (std::find(chosen.begin(), chosen.end(), e) != chosen.end()) continue;
        if (next_unit(rng) < 0.5) continue;
        chosen.push_back(e);
        ++degree[u];
        ++degree[v];
    }

    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
    for (const Edge& e : chosen) edges.push_back({e, random_label_set(rng, lambda, 0.5)});

    std::ostringstream prov;
    prov << "gen=subcubic n=" << n << " lambda=" << lambda << " seed=" << seed;
    RootedInstance inst{TemporalGraph(n, std::move(edges)), 0, std::nullopt, prov.str()};
    inst.validate();
    return inst;
}

RootedInstance gen_low_vimw(int n, Timestep lambda, int omega_target, std::uint64_t seed) {
    if (n < 2 || lambda < 1 || omega_target < 2)
        throw ValidationError("gen_low_vimw parameter out of range");
    int w = std::min(omega_target, n);
    int a = (w + 1) / 2, b = w / 2;

    // consecutive blocks of alternating sizes a, b: adjacent pairs sum to w
    std::vector<int> block_of(n);
    std::vector<std::vector<Vertex>> blocks;
    {
        Vertex next = 0;
        bool big = true;
        while (next < n) {
            int size = std::min(big ? a : b, n - next);
            blocks.emplace_back();
            for (int i = 0; i < size; ++i) {
                block_of[next] = static_cast<int>(blocks.size()) - 1;
                blocks.back().push_back(next++);
            }
            big = !big;
        }
    }
    int gaps = static_cast<int>(blocks.size()) - 1;
    if (gaps < 1)
        throw ValidationError("gen_low_vimw: infeasible target (single block)");
    if (lambda < gaps)
        throw ValidationError("gen_low_vimw: infeasible target, lifetime " +
                              std::to_string(lambda) + " < " + std::to_string(gaps) +
                              " block gaps");

    // gap j gets one timestep, spread evenly so the last lands on lambda
    std::vector<Timestep> gap_time(gaps + 1, 0);
    for (int j = 1; j <= gaps; ++j)
        gap_time[j] = static_cast<Timestep>(static_cast<long long>(j) * lambda / gaps);

    // shuffle vertex ids for less regular instances
    std::vector<Vertex> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::mt19937_64 rng(seed);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[next_below(rng, i + 1)]);

    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
    for (int j = 1; j <= gaps; ++j)
        for (Vertex u : blocks[j - 1])
            for (Vertex v : blocks[j])
                edges.push_back({Edge(perm[u], perm[v]), {gap_time[j]}});

    std::ostringstream prov;
    prov << "gen=lowvimw n=" << n << " lambda=" << lambda << " omega=" << omega_target
         << " seed=" << seed;
    RootedInstance inst{TemporalGraph(n, std::move(edges)), perm[0], std::nullopt, prov.str()};
    inst.validate();
    return inst;
}

} // namespace tempfire
