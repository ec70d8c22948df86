#include "tempfire/cubic.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "tempfire/fptdp.hpp"

namespace tempfire {

namespace {

std::vector<int> bfs_dist(const TemporalGraph& g, Vertex from) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<Vertex> q{from};
    dist[from] = 0;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (auto [y, ei] : g.adjacency(x)) {
            (void)ei;
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    return dist;
}

void check_degrees(const RootedInstance& inst) {
    const TemporalGraph& g = inst.graph;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > 3)
            throw ValidationError("degree violation: vertex " + std::to_string(v) + " has degree " +
                                  std::to_string(g.degree(v)));
    if (g.degree(inst.root) > 2)
        throw ValidationError("root degree violation: degree " +
                              std::to_string(g.degree(inst.root)));
}

// Shortest cycle through u as an ordered vertex list starting at u,
// deterministic: smallest neighbor pair, then BFS tree paths in G - u.
std::vector<Vertex> cycle_through(const TemporalGraph& g, Vertex u) {
    int best_len = -1;
    std::pair<Vertex, Vertex> best_pair{-1, -1};
    std::vector<Vertex> best_path;

    for (auto [x, exi] : g.adjacency(u)) {
        (void)exi;
        std::vector<int> dist(g.vertex_count(), -1);
        std::vector<Vertex> parent(g.vertex_count(), -1);
        std::deque<Vertex> q{x};
        dist[x] = 0;
        while (!q.empty()) {
            Vertex w = q.front();
            q.pop_front();
            for (auto [y, ei] : g.adjacency(w)) {
                (void)ei;
                if (y == u || dist[y] >= 0) continue;
                dist[y] = dist[w] + 1;
                parent[y] = w;
                q.push_back(y);
            }
        }
        for (auto [y, eyi] : g.adjacency(u)) {
            (void)eyi;
            if (y <= x || dist[y] < 0) continue;
            int len = dist[y] + 2;
            if (best_len < 0 || len < best_len ||
                (len == best_len && std::make_pair(x, y) < best_pair)) {
                best_len = len;
                best_pair = {x, y};
                best_path.clear();
                for (Vertex w = y; w >= 0; w = parent[w]) best_path.push_back(w);
                std::reverse(best_path.begin(), best_path.end()); // x ... y
            }
        }
    }
    if (best_len < 0) return {};
    std::vector<Vertex> cycle{u};
    cycle.insert(cycle.end(), best_path.begin(), best_path.end());
    return cycle; // u, x, ..., y; u closes the cycle
}

} // namespace

Vertex CubicClassification::best() const {
    Vertex arg = -1;
    for (Vertex v = 0; v < static_cast<Vertex>(info.size()); ++v) {
        if (info[v].cls == CubicClass::None) continue;
        if (arg < 0 || info[v].score < info[arg].score) arg = v;
    }
    return arg;
}

bool cubic_applicable(const RootedInstance& inst) {
    try {
        inst.validate();
        check_degrees(inst);
    } catch (const ValidationError&) {
        return false;
    }
    return true;
}

CubicClassification classify(const RootedInstance& inst) {
    inst.validate();
    check_degrees(inst);
    const TemporalGraph& g = inst.graph;
    std::vector<int> dist = bfs_dist(g, inst.root);

    CubicClassification out;
    out.info.resize(g.vertex_count());
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        CubicVertexInfo& rec = out.info[u];
        rec.dist = dist[u];
        Timestep spread_at = dist[u] + 1;
        int temporal = 0;
        bool pred_temporal = false;
        for (auto [w, ei] : g.adjacency(u)) {
            if (!std::binary_search(g.labels(ei).begin(), g.labels(ei).end(), spread_at)) continue;
            ++temporal;
            if (dist[w] == dist[u] - 1) pred_temporal = true;
        }
        // one shortest-path predecessor can sit on the path; choosing a
        // temporally adjacent one (when any exists) minimizes the count
        int off_path = temporal - ((u != inst.root && pred_temporal) ? 1 : 0);
        if (off_path <= 1) {
            rec.cls = off_path == 0 ? CubicClass::V0 : CubicClass::V1;
            rec.score = dist[u] + 1;
        } else {
            auto cyc = g.shortest_cycle_through(u);
            if (cyc) {
                rec.cls = CubicClass::Vc;
                rec.cycle_len = *cyc;
                rec.score = static_cast<long long>(dist[u]) + *cyc - 1;
            }
        }
    }
    return out;
}

CubicBuildResult build_strategy(const RootedInstance& inst, const CubicClassification& cls) {
    const TemporalGraph& g = inst.graph;
    Vertex u = cls.best();
    if (u < 0) throw ValidationError("no vertex classified: empty candidate set");
    const CubicVertexInfo& rec = cls.info[u];
    int d = rec.dist;

    CubicBuildResult res;
    res.chosen = u;
    res.burnt_budget = static_cast<int>(rec.score);
    res.assertions_hold = true;

    // shortest path root..u; the last hop prefers a temporally adjacent
    // predecessor so the off-path count matches the classification
    std::vector<Vertex> path{u};
    Vertex cur = u;
    bool last_hop = true;
    while (cur != inst.root) {
        Vertex pick = -1, pick_temporal = -1;
        for (auto [w, ei] : g.adjacency(cur)) {
            if (cls.info[w].dist != cls.info[cur].dist - 1) continue;
            if (pick < 0) pick = w;
            if (pick_temporal < 0 &&
                std::binary_search(g.labels(ei).begin(), g.labels(ei).end(), d + 1))
                pick_temporal = w;
        }
        if (last_hop && rec.cls != CubicClass::Vc && pick_temporal >= 0) pick = pick_temporal;
        path.push_back(pick);
        cur = pick;
        last_hop = false;
    }
    std::reverse(path.begin(), path.end());
    std::vector<char> on_path(g.vertex_count(), 0);
    for (Vertex v : path) on_path[v] = 1;

    std::vector<Vertex> cycle;
    std::vector<char> on_cycle(g.vertex_count(), 0);
    Timestep horizon;
    if (rec.cls == CubicClass::Vc) {
        cycle = cycle_through(g, u);
        for (Vertex v : cycle) on_cycle[v] = 1;
        horizon = d + static_cast<int>(cycle.size()) - 1;
        // P stays off C except at u (minimality); a violation means the
        // burnt-count accounting below cannot be trusted
        if (d > 0) {
            std::set<std::pair<Vertex, Vertex>> cyc_edges;
            for (size_t i = 0; i < cycle.size(); ++i) {
                Vertex a = cycle[i], b = cycle[(i + 1) % cycle.size()];
                cyc_edges.insert(std::minmax(a, b));
            }
            for (size_t i = 0; i + 1 < path.size(); ++i)
                if (cyc_edges.count(std::minmax(path[i], path[i + 1]))) {
                    res.assertions_hold = false;
                    res.diagnostic = "shortest path shares an edge with the chosen cycle";
                }
        }
    } else {
        horizon = d + 2;
        TemporalPath tp{path};
        auto arrive = arrival_time(g, tp);
        if (!arrive || *arrive != d) {
            res.assertions_hold = false;
            res.diagnostic = "chosen shortest path is not admissible at full speed";
        }
    }
    horizon = std::min<Timestep>(horizon, g.lifetime());

    Simulation sim(inst);
    std::vector<std::optional<Vertex>> moves;

    auto fire_adjacent_off = [&](const std::vector<char>& excluded) {
        Vertex best = -1;
        for (Vertex b : sim.burnt_list())
            for (auto [w, ei] : g.adjacency(b)) {
                (void)ei;
                if (excluded[w] || sim.is_burnt(w) || sim.is_defended(w)) continue;
                if (best < 0 || w < best) best = w;
            }
        return best;
    };

    for (Timestep t = 1; t <= horizon; ++t) {
        Vertex defend = -1;
        if (t <= d) {
            defend = fire_adjacent_off(on_path);
        } else if (t == d + 1) {
            if (rec.cls == CubicClass::Vc) {
                // block one of the two cycle neighbours of u
                Vertex x = cycle[1], y = cycle.back();
                for (Vertex w : {std::min(x, y), std::max(x, y)})
                    if (!sim.is_burnt(w) && !sim.is_defended(w)) {
                        defend = w;
                        break;
                    }
            } else {
                Vertex plain = -1, temporal = -1;
                for (auto [w, ei] : g.adjacency(u)) {
                    if (sim.is_burnt(w) || sim.is_defended(w)) continue;
                    if (plain < 0) plain = w;
                    if (temporal < 0 &&
                        std::binary_search(g.labels(ei).begin(), g.labels(ei).end(), d + 1))
                        temporal = w;
                }
                defend = temporal >= 0 ? temporal : plain;
            }
        } else if (rec.cls == CubicClass::Vc) {
            defend = fire_adjacent_off(on_cycle);
        } else { // t == d + 2: the remaining neighbour of u, if any
            for (auto [w, ei] : g.adjacency(u)) {
                (void)ei;
                if (!sim.is_burnt(w) && !sim.is_defended(w) && (defend < 0 || w < defend))
                    defend = w;
            }
        }
        if (defend >= 0) {
            sim.step({defend});
            moves.emplace_back(defend);
        } else {
            sim.step({});
            moves.emplace_back(std::nullopt);
        }
    }
    while (!sim.finished()) sim.step({});
    while (!moves.empty() && !moves.back()) moves.pop_back();

    res.strategy.moves = std::move(moves);
    res.outcome = sim.outcome();
    if (static_cast<int>(res.outcome.burnt.size()) != res.burnt_budget && res.assertions_hold) {
        res.assertions_hold = false;
        std::ostringstream msg;
        msg << "replay burnt " << res.outcome.burnt.size() << " vertices, expected "
            << res.burnt_budget;
        res.diagnostic = msg.str();
    }
    return res;
}

CubicResult solve_cubic(const RootedInstance& inst, const CubicOptions& opt) {
    CubicClassification cls = classify(inst);

    CubicResult res;
    std::string reason;
    if (cls.best() >= 0) {
        CubicBuildResult build = build_strategy(inst, cls);
        res.chosen = build.chosen;
        res.min_score = build.burnt_budget;
        if (build.assertions_hold || opt.force) {
            res.max_saved = build.outcome.saved_count;
            res.witness = std::move(build.strategy);
            res.fallback_reason = build.diagnostic;
            return res;
        }
        reason = build.diagnostic;
    } else {
        reason = "no vertex classified";
    }

    FptOptions fopt;
    fopt.max_width = opt.fpt_max_width;
    FptResult fpt = solve_fpt(inst, fopt);
    res.max_saved = fpt.max_saved;
    res.witness = reserve_to_standard(inst, fpt.witness);
    res.used_fallback = true;
    res.fallback_reason = reason;
    return res;
}

} // namespace tempfire
