#include "tempfire/fptdp.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

namespace tempfire {

namespace {

struct TupleKey {
    std::uint32_t d, b;
    std::int32_t g, c;
    bool operator==(const TupleKey& o) const {
        return d == o.d && b == o.b && g == o.g && c == o.c;
    }
};

struct TupleHash {
    size_t operator()(const TupleKey& k) const {
        std::uint64_t h = (static_cast<std::uint64_t>(k.d) << 32) | k.b;
        h *= 0x9e3779b97f4a7c15ull;
        h ^= (static_cast<std::uint64_t>(k.g) << 32) | static_cast<std::uint32_t>(k.c);
        h *= 0xbf58476d1ce4e5b9ull;
        return static_cast<size_t>(h ^ (h >> 29));
    }
};

int local_index(const std::vector<Vertex>& members, Vertex v) {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) return -1;
    return static_cast<int>(it - members.begin());
}

} // namespace

FptSolver::FptSolver(const RootedInstance& inst, const FptOptions& opt)
    : inst_(&inst), opt_(opt) {
    inst.validate();
    vim_ = vim_sequence(inst.graph);
    if (vim_.width > opt_.max_width)
        throw GuardExceeded("interval membership width " + std::to_string(vim_.width) +
                            " exceeds the guard of " + std::to_string(opt_.max_width));
    if (vim_.width > 30)
        throw GuardExceeded("layer masks are bound to width 30");

    Timestep lifetime = inst.graph.lifetime();
    layer_members_.resize(lifetime + 1);
    layer_members_[0] = {inst.root};
    for (Timestep i = 1; i <= lifetime; ++i) layer_members_[i] = vim_.F[i - 1];

    root_local_.assign(lifetime + 1, -1);
    for (Timestep i = 0; i <= lifetime; ++i)
        root_local_[i] = local_index(layer_members_[i], inst.root);

    active_local_.resize(lifetime + 1);
    for (Timestep i = 1; i <= lifetime; ++i) {
        for (int ei : inst.graph.active_edges(i)) {
            const Edge& e = inst.graph.edges()[ei];
            int lu = local_index(layer_members_[i], e.u);
            int lv = local_index(layer_members_[i], e.v);
            // V(E_i) is always inside F_i
            active_local_[i].push_back({lu, lv});
        }
    }
}

DpLayer FptSolver::initial_layer() const {
    DpLayer l0;
    l0.i = 0;
    l0.members = layer_members_[0];
    l0.entries.push_back(DpEntry{0u, 1u, 1, 1, -1, 0u});
    return l0;
}

DpLayer FptSolver::advance_layer(const DpLayer& prev) const {
    Timestep i = prev.i + 1;
    DpLayer cur;
    cur.i = i;
    cur.members = layer_members_[i];

    // crosswalk: previous layer's local index -> this layer's local index
    std::vector<int> fwd(prev.members.size());
    for (size_t p = 0; p < prev.members.size(); ++p)
        fwd[p] = local_index(cur.members, prev.members[p]);

    std::uint32_t active_mask = 0;
    for (auto [lu, lv] : active_local_[i]) {
        active_mask |= 1u << lu;
        active_mask |= 1u << lv;
    }
    std::uint32_t root_bit = root_local_[i] >= 0 ? (1u << root_local_[i]) : 0u;

    std::unordered_map<TupleKey, int, TupleHash> seen;

    for (int pi = 0; pi < static_cast<int>(prev.entries.size()); ++pi) {
        const DpEntry& e = prev.entries[pi];

        std::uint32_t carried_d = 0, carried_b = 0;
        for (size_t p = 0; p < prev.members.size(); ++p) {
            if (fwd[p] < 0) continue;
            if (e.defended_mask >> p & 1) carried_d |= 1u << fwd[p];
            if (e.burnt_mask >> p & 1) carried_b |= 1u << fwd[p];
        }
        // the root burns at time 0 and stays a spread source even before its
        // own interval opens, when it is not yet tracked by the previous layer
        carried_b |= root_bit;

        std::uint32_t candidates = active_mask & ~carried_b & ~carried_d;
        std::uint32_t a = 0;
        while (true) { // ascending submask enumeration, empty set first
            if (std::popcount(a) <= e.budget) {
                std::uint32_t defended = carried_d | a;
                std::uint32_t fresh = 0;
                for (auto [lu, lv] : active_local_[i]) {
                    if (carried_b >> lu & 1) fresh |= 1u << lv;
                    if (carried_b >> lv & 1) fresh |= 1u << lu;
                }
                fresh &= ~defended;
                std::uint32_t burnt = carried_b | fresh;
                int newly = std::popcount(fresh & ~carried_b);
                DpEntry out{defended, burnt, e.budget - std::popcount(a) + 1, e.burnt_count + newly,
                            pi, a};
                TupleKey key{out.defended_mask, out.burnt_mask, out.budget, out.burnt_count};
                if (seen.emplace(key, static_cast<int>(cur.entries.size())).second)
                    cur.entries.push_back(out);
            }
            if (a == candidates) break;
            a = (a - candidates) & candidates;
        }
    }

    if (opt_.dominance_prune) prune_layer(cur);
    return cur;
}

void FptSolver::prune_layer(DpLayer& layer) const {
    // keep, per (D, B), only the (g, c) Pareto frontier: an entry dies when
    // another has budget >= and burnt count <=
    std::unordered_map<std::uint64_t, std::vector<int>> groups;
    for (int idx = 0; idx < static_cast<int>(layer.entries.size()); ++idx) {
        const DpEntry& e = layer.entries[idx];
        groups[(static_cast<std::uint64_t>(e.defended_mask) << 32) | e.burnt_mask].push_back(idx);
    }
    std::vector<char> keep(layer.entries.size(), 1);
    for (auto& [key, idxs] : groups) {
        (void)key;
        for (int a : idxs)
            for (int b : idxs) {
                if (a == b || !keep[a]) continue;
                const DpEntry& ea = layer.entries[a];
                const DpEntry& eb = layer.entries[b];
                bool dominates = eb.budget >= ea.budget && eb.burnt_count <= ea.burnt_count &&
                                 (eb.budget > ea.budget || eb.burnt_count < ea.burnt_count);
                if (dominates && keep[b]) keep[a] = 0;
            }
    }
    std::vector<DpEntry> pruned;
    pruned.reserve(layer.entries.size());
    for (size_t idx = 0; idx < layer.entries.size(); ++idx)
        if (keep[idx]) pruned.push_back(layer.entries[idx]);
    layer.entries = std::move(pruned);
}

FptResult FptSolver::solve() const {
    Timestep lifetime = inst_->graph.lifetime();
    std::vector<DpLayer> layers;
    layers.reserve(lifetime + 1);
    layers.push_back(initial_layer());
    for (Timestep i = 1; i <= lifetime; ++i) layers.push_back(advance_layer(layers.back()));

    FptResult res;
    res.width = vim_.width;
    for (const auto& l : layers) res.total_entries += l.entries.size();

    const DpLayer& last = layers.back();
    int best = -1;
    for (int idx = 0; idx < static_cast<int>(last.entries.size()); ++idx)
        if (best < 0 || last.entries[idx].burnt_count < last.entries[best].burnt_count) best = idx;

    res.max_saved = inst_->graph.vertex_count() - last.entries[best].burnt_count;

    // walk the back-pointers, decoding each defence mask against its layer
    std::vector<std::vector<Vertex>> moves(lifetime);
    int idx = best;
    for (Timestep i = lifetime; i >= 1; --i) {
        const DpEntry& e = layers[i].entries[idx];
        std::vector<Vertex> set;
        for (size_t b = 0; b < layers[i].members.size(); ++b)
            if (e.defence_mask >> b & 1) set.push_back(layers[i].members[b]);
        moves[i - 1] = std::move(set);
        idx = e.parent;
    }
    while (!moves.empty() && moves.back().empty()) moves.pop_back();
    res.witness.moves = std::move(moves);

    if (opt_.keep_layers) res.layers = std::move(layers);
    return res;
}

FptResult solve_fpt(const RootedInstance& inst, const FptOptions& opt) {
    return FptSolver(inst, opt).solve();
}

bool decide(const RootedInstance& inst, int k, const FptOptions& opt) {
    return solve_fpt(inst, opt).max_saved >= k;
}

std::string dump_layer_trace(const std::vector<DpLayer>& layers) {
    std::ostringstream out;
    for (const auto& layer : layers) {
        for (const auto& e : layer.entries) {
            out << "{\"i\":" << layer.i << ",\"D\":[";
            bool first = true;
            for (size_t b = 0; b < layer.members.size(); ++b)
                if (e.defended_mask >> b & 1) {
                    if (!first) out << ',';
                    out << layer.members[b];
                    first = false;
                }
            out << "],\"B\":[";
            first = true;
            for (size_t b = 0; b < layer.members.size(); ++b)
                if (e.burnt_mask >> b & 1) {
                    if (!first) out << ',';
                    out << layer.members[b];
                    first = false;
                }
            out << "],\"g\":" << e.budget << ",\"c\":" << e.burnt_count << "}\n";
        }
    }
    return out.str();
}

} // namespace tempfire
