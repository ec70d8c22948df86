#include "tempfire/tgraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tempfire {

TemporalGraph::TemporalGraph(int n, std::vector<std::pair<Edge, std::vector<Timestep>>> labeled_edges)
    : n_(n), lifetime_(0) {
    if (n < 1) throw ValidationError("vertex count must be positive, got " + std::to_string(n));

    std::sort(labeled_edges.begin(), labeled_edges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    edges_.reserve(labeled_edges.size());
    labels_.reserve(labeled_edges.size());
    adj_.assign(n_, {});
    mintime_.assign(n_, 0);
    maxtime_.assign(n_, 0);

    for (auto& [e, times] : labeled_edges) {
        if (e.u < 0 || e.v >= n_)
            throw ValidationError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "} out of vertex range");
        if (e.u == e.v)
            throw ValidationError("loop edge {" + std::to_string(e.u) + "," + std::to_string(e.u) + "}");
        if (!edges_.empty() && edges_.back() == e)
            throw ValidationError("duplicate edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}");
        if (times.empty())
            throw ValidationError("empty label set on edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}");
        std::sort(times.begin(), times.end());
        if (times.front() < 1)
            throw ValidationError("label " + std::to_string(times.front()) + " < 1 on edge {" +
                                  std::to_string(e.u) + "," + std::to_string(e.v) + "}");
        if (std::adjacent_find(times.begin(), times.end()) != times.end())
            throw ValidationError("duplicate label on edge {" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}");

        int idx = static_cast<int>(edges_.size());
        lifetime_ = std::max(lifetime_, times.back());
        adj_[e.u].push_back({e.v, idx});
        adj_[e.v].push_back({e.u, idx});
        edges_.push_back(e);
        labels_.push_back(std::move(times));
    }

    for (auto& a : adj_) std::sort(a.begin(), a.end());

    by_time_.assign(lifetime_ + 1, {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
        for (Timestep t : labels_[i]) by_time_[t].push_back(i);

    for (Vertex v = 0; v < n_; ++v) {
        Timestep lo = 0, hi = 0;
        for (auto [w, ei] : adj_[v]) {
            (void)w;
            Timestep emin = labels_[ei].front(), emax = labels_[ei].back();
            if (lo == 0 || emin < lo) lo = emin;
            hi = std::max(hi, emax);
        }
        mintime_[v] = lo;
        maxtime_[v] = hi;
    }
}

int TemporalGraph::edge_index(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return -1;
    Edge e(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || !(*it == e)) return -1;
    return static_cast<int>(it - edges_.begin());
}

bool TemporalGraph::temporally_adjacent(Vertex u, Vertex v, Timestep t) const {
    int ei = edge_index(u, v);
    if (ei < 0) return false;
    return std::binary_search(labels_[ei].begin(), labels_[ei].end(), t);
}

const std::vector<int>& TemporalGraph::active_edges(Timestep t) const {
    static const std::vector<int> empty;
    if (t < 1 || t > lifetime_) return empty;
    return by_time_[t];
}

std::vector<Vertex> TemporalGraph::neighbors_at(const std::vector<Vertex>& from, Timestep t) const {
    std::vector<char> in_from(n_, 0), hit(n_, 0);
    for (Vertex v : from) in_from[v] = 1;
    std::vector<Vertex> out;
    for (int ei : active_edges(t)) {
        const Edge& e = edges_[ei];
        if (in_from[e.u] && !hit[e.v]) { hit[e.v] = 1; out.push_back(e.v); }
        if (in_from[e.v] && !hit[e.u]) { hit[e.u] = 1; out.push_back(e.u); }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int TemporalGraph::static_dist(Vertex u, Vertex v) const {
    if (u == v) return 0;
    std::vector<int> dist(n_, -1);
    std::deque<Vertex> q{u};
    dist[u] = 0;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (auto [y, ei] : adj_[x]) {
            (void)ei;
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                if (y == v) return dist[y];
                q.push_back(y);
            }
        }
    }
    return -1;
}

std::optional<int> TemporalGraph::shortest_cycle_through(Vertex u) const {
    int best = -1;
    const auto& nbrs = adj_[u];
    for (size_t a = 0; a < nbrs.size(); ++a) {
        Vertex x = nbrs[a].first;
        // BFS from x in G - u.
        std::vector<int> dist(n_, -1);
        std::deque<Vertex> q{x};
        dist[x] = 0;
        while (!q.empty()) {
            Vertex w = q.front();
            q.pop_front();
            for (auto [y, ei] : adj_[w]) {
                (void)ei;
                if (y == u || dist[y] >= 0) continue;
                dist[y] = dist[w] + 1;
                q.push_back(y);
            }
        }
        for (size_t b = a + 1; b < nbrs.size(); ++b) {
            Vertex y = nbrs[b].first;
            if (dist[y] >= 0) {
                int len = dist[y] + 2;
                if (best < 0 || len < best) best = len;
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

bool TemporalGraph::connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::deque<Vertex> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (auto [y, ei] : adj_[x]) {
            (void)ei;
            if (!seen[y]) { seen[y] = 1; ++count; q.push_back(y); }
        }
    }
    return count == n_;
}

StaticGraph underlying(const TemporalGraph& g) {
    return StaticGraph{g.vertex_count(), g.edges()};
}

VimSequence vim_sequence(const TemporalGraph& g) {
    VimSequence out;
    out.mintime.resize(g.vertex_count());
    out.maxtime.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out.mintime[v] = g.mintime(v);
        out.maxtime[v] = g.maxtime(v);
    }
    out.F.assign(g.lifetime(), {});
    for (Timestep t = 1; t <= g.lifetime(); ++t) {
        auto& ft = out.F[t - 1];
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (out.mintime[v] >= 1 && out.mintime[v] <= t && t <= out.maxtime[v]) ft.push_back(v);
        out.width = std::max(out.width, static_cast<int>(ft.size()));
    }
    return out;
}

void RootedInstance::validate() const {
    if (graph.vertex_count() < 2)
        throw ValidationError("instance needs at least 2 vertices");
    if (root < 0 || root >= graph.vertex_count())
        throw ValidationError("root " + std::to_string(root) + " out of range 0.." +
                              std::to_string(graph.vertex_count() - 1));
    if (!graph.connected())
        throw ValidationError("underlying graph is disconnected");
    if (target && (*target < 0 || *target > graph.vertex_count() - 1))
        throw ValidationError("target k=" + std::to_string(*target) + " out of range 0.." +
                              std::to_string(graph.vertex_count() - 1));
}

std::optional<Timestep> arrival_time(const TemporalGraph& g, const TemporalPath& p) {
    if (p.vertices.size() < 2) return 0;
    Timestep prev = 0;
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        int ei = g.edge_index(p.vertices[i], p.vertices[i + 1]);
        if (ei < 0)
            throw ValidationError("path step {" + std::to_string(p.vertices[i]) + "," +
                                  std::to_string(p.vertices[i + 1]) + "} is not an edge");
        const auto& times = g.labels(ei);
        auto it = std::upper_bound(times.begin(), times.end(), prev);
        if (it == times.end()) return std::nullopt;
        prev = *it;
    }
    return prev;
}

std::vector<std::optional<Timestep>> foremost_times(const RootedInstance& inst) {
    const TemporalGraph& g = inst.graph;
    std::vector<Timestep> reach(g.vertex_count(), -1);
    reach[inst.root] = 0;
    for (Timestep t = 1; t <= g.lifetime(); ++t) {
        std::vector<Vertex> fresh;
        for (int ei : g.active_edges(t)) {
            const Edge& e = g.edges()[ei];
            // strictly increasing times: a vertex reached at t cannot relay at t
            if (reach[e.u] >= 0 && reach[e.u] < t && reach[e.v] < 0) fresh.push_back(e.v);
            if (reach[e.v] >= 0 && reach[e.v] < t && reach[e.u] < 0) fresh.push_back(e.u);
        }
        for (Vertex v : fresh)
            if (reach[v] < 0) reach[v] = t;
    }
    std::vector<std::optional<Timestep>> out(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (reach[v] >= 0) out[v] = reach[v];
    return out;
}

// --- parsing -----------------------------------------------------------------

namespace {

RootedInstance load_instance_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        Vertex root = j.at("root").get<Vertex>();
        std::vector<std::pair<Edge, std::vector<Timestep>>> edges;
        for (const auto& je : j.at("edges")) {
            edges.push_back({Edge(je.at("u").get<int>(), je.at("v").get<int>()),
                             je.at("times").get<std::vector<Timestep>>()});
        }
        RootedInstance inst{TemporalGraph(n, std::move(edges)), root, std::nullopt, ""};
        if (j.contains("k")) inst.target = j.at("k").get<int>();
        if (j.contains("comment")) inst.provenance = j.at("comment").get<std::string>();
        inst.validate();
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad instance document: ") + e.what());
    }
}

} // namespace

RootedInstance load_instance(const std::string& text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty instance document");
    if (text[first] == '{') return load_instance_json(text);

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    Vertex root = -1;
    std::vector<std::pair<Edge, std::vector<Timestep>>> edges;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> root)) throw ParseError("expected \"n root\"", lineno);
            std::string rest;
            if (ls >> rest) throw ParseError("trailing tokens after \"n root\"", lineno);
            continue;
        }
        int u, v;
        std::string colon;
        if (!(ls >> u >> v >> colon) || colon != ":")
            throw ParseError("expected \"u v : t1 t2 ...\"", lineno);
        std::vector<Timestep> times;
        Timestep t;
        while (ls >> t) {
            if (!times.empty() && t <= times.back())
                throw ParseError("timesteps must be strictly ascending", lineno);
            times.push_back(t);
        }
        if (!ls.eof()) throw ParseError("bad timestep token", lineno);
        if (times.empty()) throw ParseError("empty label set", lineno);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("vertex out of range 0.." + std::to_string(n - 1), lineno);
        if (u == v) throw ParseError("loop edge", lineno);
        edges.push_back({Edge(u, v), std::move(times)});
    }
    if (n < 0) throw ParseError("empty instance document");

    RootedInstance inst{TemporalGraph(n, std::move(edges)), root, std::nullopt, ""};
    inst.validate();
    return inst;
}

RootedInstance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_instance(buf.str());
}

std::string dump_instance_text(const RootedInstance& inst) {
    std::ostringstream out;
    out << inst.graph.vertex_count() << ' ' << inst.root << '\n';
    for (int i = 0; i < inst.graph.edge_count(); ++i) {
        const Edge& e = inst.graph.edges()[i];
        out << e.u << ' ' << e.v << " :";
        for (Timestep t : inst.graph.labels(i)) out << ' ' << t;
        out << '\n';
    }
    return out.str();
}

std::string dump_instance_json(const RootedInstance& inst) {
    nlohmann::json j;
    j["n"] = inst.graph.vertex_count();
    j["root"] = inst.root;
    j["edges"] = nlohmann::json::array();
    for (int i = 0; i < inst.graph.edge_count(); ++i) {
        const Edge& e = inst.graph.edges()[i];
        j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"times", inst.graph.labels(i)}});
    }
    if (inst.target) j["k"] = *inst.target;
    if (!inst.provenance.empty()) j["comment"] = inst.provenance;
    return j.dump();
}

} // namespace tempfire
