#include "tempfire/oracle.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "tempfire/instances.hpp"

namespace tempfire {

namespace {

using Mask = std::uint64_t;

struct StateKey {
    Mask burnt;
    Mask defended;
    std::int32_t t;
    std::int32_t budget; // unused (0) in the standard game

    bool operator==(const StateKey& o) const {
        return burnt == o.burnt && defended == o.defended && t == o.t && budget == o.budget;
    }
};

struct StateHash {
    size_t operator()(const StateKey& k) const {
        std::uint64_t h = k.burnt * 0x9e3779b97f4a7c15ull;
        h ^= (k.defended + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
        h ^= (static_cast<std::uint64_t>(k.t) << 32) ^ static_cast<std::uint64_t>(k.budget + 7);
        h *= 0xbf58476d1ce4e5b9ull;
        return static_cast<size_t>(h ^ (h >> 31));
    }
};

int popcount(Mask m) { return std::popcount(m); }

// Shared machinery for the standard and reserve searches.
class Search {
public:
    Search(const RootedInstance& inst, const OracleOptions& opt, bool reserve)
        : inst_(inst), g_(inst.graph), opt_(opt), reserve_(reserve) {
        inst.validate();
        n_ = g_.vertex_count();
        if (n_ > opt.max_n)
            throw GuardExceeded("instance too large for exhaustive search: n=" + std::to_string(n_) +
                                " > guard " + std::to_string(opt.max_n));
        if (n_ > 62) throw GuardExceeded("exhaustive search is bitmask-bound to 62 vertices");
        lifetime_ = g_.lifetime();
        // alive_from_[t]: vertices with some incident label >= t
        alive_from_.assign(lifetime_ + 2, 0);
        for (Vertex v = 0; v < n_; ++v)
            for (Timestep t = 1; t <= g_.maxtime(v); ++t) alive_from_[t] |= Mask(1) << v;
        // active_vertices_[t]: V(E_t)
        active_vertices_.assign(lifetime_ + 2, 0);
        for (Timestep t = 1; t <= lifetime_; ++t)
            for (int ei : g_.active_edges(t)) {
                active_vertices_[t] |= Mask(1) << g_.edges()[ei].u;
                active_vertices_[t] |= Mask(1) << g_.edges()[ei].v;
            }
    }

    Mask spread(Mask burnt, Mask blocked, Timestep t) const {
        Mask fresh = 0;
        for (int ei : g_.active_edges(t)) {
            const Edge& e = g_.edges()[ei];
            Mask mu = Mask(1) << e.u, mv = Mask(1) << e.v;
            if ((burnt & mu) && !((burnt | blocked) & mv)) fresh |= mv;
            if ((burnt & mv) && !((burnt | blocked) & mu)) fresh |= mu;
        }
        return burnt | fresh;
    }

    // Eventually-burnt set if no further defences are made.
    Mask closure(Mask burnt, Mask defended, Timestep t) const {
        for (Timestep i = t; i <= lifetime_; ++i) burnt = spread(burnt, defended, i);
        return burnt;
    }

    int value(Mask burnt, Mask defended, Timestep t, int budget) {
        if (t > lifetime_ || (burnt & alive_from_[t]) == 0) return n_ - popcount(burnt);
        StateKey key{burnt, defended, t, reserve_ ? budget : 0};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        ++states_;

        int best = -1;
        for_each_move(burnt, defended, t, budget, [&](Mask defence_set) {
            Mask d2 = defended | defence_set;
            Mask b2 = spread(burnt, d2, t);
            int next_budget = reserve_ ? budget - popcount(defence_set) + 1 : 0;
            best = std::max(best, value(b2, d2, t + 1, next_budget));
            return false; // keep enumerating
        });
        memo_.emplace(key, best);
        return best;
    }

    // Enumerates the defence options for a state in witness order and calls
    // fn with each defence set (as a mask); stops early when fn returns true.
    template <typename Fn>
    void for_each_move(Mask burnt, Mask defended, Timestep t, int budget, Fn&& fn) {
        Mask open = ~(burnt | defended);
        if (reserve_) {
            Mask cand = active_vertices_[t] & open;
            if (opt_.foremost_prune) cand &= closure(burnt, defended, t);
            std::vector<int> ids;
            for (int v = 0; v < n_; ++v)
                if (cand >> v & 1) ids.push_back(v);
            int m = static_cast<int>(ids.size());
            if (m > 25)
                throw GuardExceeded("reserve search: " + std::to_string(m) +
                                    " simultaneous candidates exceed the subset guard");
            for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << m); ++sub) {
                if (std::popcount(sub) > budget) continue;
                Mask a = 0;
                for (int b = 0; b < m; ++b)
                    if (sub >> b & 1) a |= Mask(1) << ids[b];
                if (fn(a)) return;
            }
        } else {
            if (fn(Mask(0))) return; // pass precedes every vertex move
            Mask cand = alive_from_[t] & open;
            if (opt_.foremost_prune) cand &= closure(burnt, defended, t);
            for (int v = 0; v < n_; ++v)
                if (cand >> v & 1)
                    if (fn(Mask(1) << v)) return;
        }
    }

    // Replays from the initial state picking the first move whose subtree
    // achieves the memoized optimum: the lexicographically smallest witness
    // under the enumeration order above.
    template <typename Emit>
    int extract(Emit&& emit) {
        Mask burnt = Mask(1) << inst_.root;
        Mask defended = 0;
        int budget = 1;
        int total = value(burnt, defended, 1, budget);
        for (Timestep t = 1; t <= lifetime_; ++t) {
            if ((burnt & alive_from_[t]) == 0) break;
            int target = value(burnt, defended, t, budget);
            Mask chosen = 0;
            bool found = false;
            for_each_move(burnt, defended, t, budget, [&](Mask a) {
                Mask d2 = defended | a;
                Mask b2 = spread(burnt, d2, t);
                int nb = reserve_ ? budget - popcount(a) + 1 : 0;
                if (value(b2, d2, t + 1, nb) == target) {
                    chosen = a;
                    found = true;
                    return true;
                }
                return false;
            });
            (void)found; // an achieving move always exists
            emit(t, chosen);
            defended |= chosen;
            burnt = spread(burnt, defended, t);
            if (reserve_) budget += 1 - popcount(chosen);
        }
        return total;
    }

    std::uint64_t states() const { return states_; }

private:
    const RootedInstance& inst_;
    const TemporalGraph& g_;
    OracleOptions opt_;
    bool reserve_;
    int n_ = 0;
    Timestep lifetime_ = 0;
    std::vector<Mask> alive_from_;
    std::vector<Mask> active_vertices_;
    std::unordered_map<StateKey, int, StateHash> memo_;
    std::uint64_t states_ = 0;
};

} // namespace

OracleResult solve_temporal(const RootedInstance& inst, const OracleOptions& opt) {
    Search search(inst, opt, /*reserve=*/false);
    OracleResult res;
    std::vector<std::optional<Vertex>> moves;
    res.max_saved = search.extract([&](Timestep t, Mask a) {
        while (static_cast<Timestep>(moves.size()) < t - 1) moves.push_back(std::nullopt);
        if (a == 0)
            moves.push_back(std::nullopt);
        else
            moves.push_back(std::countr_zero(a));
    });
    while (!moves.empty() && !moves.back()) moves.pop_back();
    res.witness.moves = std::move(moves);
    res.states_explored = search.states();
    return res;
}

ReserveOracleResult solve_reserve(const RootedInstance& inst, const OracleOptions& opt) {
    Search search(inst, opt, /*reserve=*/true);
    ReserveOracleResult res;
    std::vector<std::vector<Vertex>> moves;
    res.max_saved = search.extract([&](Timestep t, Mask a) {
        while (static_cast<Timestep>(moves.size()) < t - 1) moves.emplace_back();
        std::vector<Vertex> set;
        for (int v = 0; v < inst.graph.vertex_count(); ++v)
            if (a >> v & 1) set.push_back(v);
        moves.push_back(std::move(set));
    });
    while (!moves.empty() && moves.back().empty()) moves.pop_back();
    res.witness.moves = std::move(moves);
    res.states_explored = search.states();
    return res;
}

OracleResult solve_static(const StaticGraph& g, Vertex root, const OracleOptions& opt) {
    return solve_temporal(static_to_temporal(g, root), opt);
}

} // namespace tempfire
