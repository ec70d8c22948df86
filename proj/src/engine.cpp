#include "tempfire/engine.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tempfire {

Simulation::Simulation(const RootedInstance& inst) : inst_(&inst) {
    inst.validate();
    burn_time_.assign(inst.graph.vertex_count(), -1);
    defence_time_.assign(inst.graph.vertex_count(), -1);
    burn_time_[inst.root] = 0;
    burnt_list_.push_back(inst.root);
}

bool Simulation::fire_alive() const {
    for (Vertex v : burnt_list_)
        if (inst_->graph.maxtime(v) >= t_) return true;
    return false;
}

void Simulation::step(const std::vector<Vertex>& defences) {
    const TemporalGraph& g = inst_->graph;
    for (Vertex v : defences) {
        if (v < 0 || v >= g.vertex_count())
            throw ValidationError("defence of vertex " + std::to_string(v) + " out of range");
        if (is_burnt(v) || is_defended(v)) throw InvalidDefence(t_, v);
        defence_time_[v] = t_;
    }
    std::vector<Vertex> fresh;
    for (int ei : g.active_edges(t_)) {
        const Edge& e = g.edges()[ei];
        bool bu = burn_time_[e.u] >= 0 && burn_time_[e.u] < t_;
        bool bv = burn_time_[e.v] >= 0 && burn_time_[e.v] < t_;
        if (bu && burn_time_[e.v] < 0 && !is_defended(e.v)) fresh.push_back(e.v);
        if (bv && burn_time_[e.u] < 0 && !is_defended(e.u)) fresh.push_back(e.u);
    }
    for (Vertex v : fresh) {
        if (burn_time_[v] < 0) {
            burn_time_[v] = t_;
            burnt_list_.push_back(v);
        }
    }
    ++t_;
}

SimOutcome Simulation::outcome() const {
    SimOutcome o;
    o.burn_time = burn_time_;
    o.defence_time = defence_time_;
    for (Vertex v = 0; v < inst_->graph.vertex_count(); ++v) {
        if (burn_time_[v] >= 0) o.burnt.push_back(v);
        if (defence_time_[v] >= 0) o.defended.push_back(v);
    }
    o.saved_count = inst_->graph.vertex_count() - static_cast<int>(o.burnt.size());
    return o;
}

SimOutcome simulate(const RootedInstance& inst, const Strategy& s, const SimOptions& opt) {
    Simulation sim(inst);
    while (!sim.finished()) {
        Timestep t = sim.now();
        // past the strategy's last move a dead fire cannot change anything
        if (opt.early_exit && t > static_cast<Timestep>(s.moves.size()) && !sim.fire_alive())
            break;
        std::vector<Vertex> defences;
        if (t <= static_cast<Timestep>(s.moves.size()) && s.moves[t - 1])
            defences.push_back(*s.moves[t - 1]);
        sim.step(defences);
    }
    return sim.outcome();
}

SimOutcome simulate_reserve(const RootedInstance& inst, const ReserveStrategy& s,
                            const SimOptions& opt) {
    (void)opt;
    Simulation sim(inst);
    int budget = 1;
    while (!sim.finished()) {
        Timestep t = sim.now();
        std::vector<Vertex> defences;
        if (t <= static_cast<Timestep>(s.moves.size())) defences = s.moves[t - 1];
        std::sort(defences.begin(), defences.end());
        if (std::adjacent_find(defences.begin(), defences.end()) != defences.end())
            throw ValidationError("duplicate defence at timestep " + std::to_string(t));
        if (static_cast<int>(defences.size()) > budget)
            throw BudgetExceeded(t, static_cast<int>(defences.size()), budget);
        budget -= static_cast<int>(defences.size());
        sim.step(defences);
        ++budget;
    }
    return sim.outcome();
}

Strategy reserve_to_standard(const RootedInstance& inst, const ReserveStrategy& s) {
    // Replay first: the input must be budget-feasible and replayable.
    simulate_reserve(inst, s);

    Timestep horizon = std::max<Timestep>(inst.graph.lifetime(),
                                          static_cast<Timestep>(s.moves.size()));
    Strategy out;
    out.moves.assign(horizon, std::nullopt);
    std::vector<Timestep> idle; // earlier timesteps with no defence yet
    for (Timestep t = 1; t <= horizon; ++t) {
        std::vector<Vertex> set;
        if (t <= static_cast<Timestep>(s.moves.size())) set = s.moves[t - 1];
        std::sort(set.begin(), set.end());
        if (set.empty()) {
            idle.push_back(t);
            continue;
        }
        // surplus defences move into the earliest idle slots, never later
        for (size_t i = 0; i + 1 < set.size(); ++i) {
            out.moves[idle.front() - 1] = set[i];
            idle.erase(idle.begin());
        }
        out.moves[t - 1] = set.back();
    }
    while (!out.moves.empty() && !out.moves.back()) out.moves.pop_back();
    return out;
}

ReserveStrategy lift_to_reserve(const Strategy& s) {
    ReserveStrategy out;
    for (const auto& m : s.moves) {
        out.moves.emplace_back();
        if (m) out.moves.back().push_back(*m);
    }
    return out;
}

// --- strategy file format ------------------------------------------------------

Strategy parse_strategy(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    Strategy s;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        Timestep t;
        std::string move;
        if (!(ls >> t >> move)) throw ParseError("expected \"t pass\" or \"t v\"", lineno);
        if (t != static_cast<Timestep>(s.moves.size()) + 1)
            throw ParseError("timesteps must run 1, 2, ...", lineno);
        if (move == "pass") {
            s.moves.push_back(std::nullopt);
        } else {
            try {
                s.moves.push_back(std::stoi(move));
            } catch (const std::exception&) {
                throw ParseError("bad vertex id \"" + move + "\"", lineno);
            }
        }
    }
    return s;
}

ReserveStrategy parse_reserve_strategy(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    ReserveStrategy s;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        Timestep t;
        if (!(ls >> t)) throw ParseError("expected \"t v1 v2 ...\"", lineno);
        if (t != static_cast<Timestep>(s.moves.size()) + 1)
            throw ParseError("timesteps must run 1, 2, ...", lineno);
        std::vector<Vertex> set;
        Vertex v;
        while (ls >> v) set.push_back(v);
        if (!ls.eof()) throw ParseError("bad vertex token", lineno);
        s.moves.push_back(std::move(set));
    }
    return s;
}

std::string format_strategy(const Strategy& s) {
    std::ostringstream out;
    for (size_t i = 0; i < s.moves.size(); ++i) {
        out << (i + 1) << ' ';
        if (s.moves[i])
            out << *s.moves[i];
        else
            out << "pass";
        out << '\n';
    }
    return out.str();
}

std::string format_reserve_strategy(const ReserveStrategy& s) {
    std::ostringstream out;
    for (size_t i = 0; i < s.moves.size(); ++i) {
        out << (i + 1);
        for (Vertex v : s.moves[i]) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

std::string outcome_to_json(const SimOutcome& o) {
    nlohmann::json j;
    j["saved"] = o.saved_count;
    j["burnt"] = o.burnt;
    j["defended"] = o.defended;
    nlohmann::json bt = nlohmann::json::object();
    for (size_t v = 0; v < o.burn_time.size(); ++v)
        if (o.burn_time[v] >= 0) bt[std::to_string(v)] = o.burn_time[v];
    j["burn_time"] = bt;
    return j.dump();
}

} // namespace tempfire
