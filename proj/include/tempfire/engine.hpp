#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempfire/tgraph.hpp"

namespace tempfire {

// One defence per timestep; nullopt is a pass. Shorter strategies are
// padded with passes up to the lifetime.
struct Strategy {
    std::vector<std::optional<Vertex>> moves; // moves[t-1] applies at timestep t
};

// Set-valued defences under the reserve budget: the budget starts at 1 on
// timestep 1, grows by 1 per timestep, and drops by the number of defences.
struct ReserveStrategy {
    std::vector<std::vector<Vertex>> moves; // moves[t-1] applies at timestep t
};

struct SimOutcome {
    std::vector<Vertex> burnt;    // sorted
    std::vector<Vertex> defended; // sorted
    int saved_count = 0;          // n - |burnt|
    std::vector<Timestep> burn_time;    // per vertex; -1 = never burns; root = 0
    std::vector<Timestep> defence_time; // per vertex; -1 = never defended
};

struct SimOptions {
    // Stop stepping once no burnt vertex has an incident label >= t.
    // Remaining defences are still applied, so outcomes are identical.
    bool early_exit = false;
};

// Incremental game state, stepped one timestep at a time. simulate() and the
// subcubic strategy builder drive this.
class Simulation {
public:
    explicit Simulation(const RootedInstance& inst);

    // Next timestep to play, 1-based.
    Timestep now() const { return t_; }
    bool finished() const { return t_ > inst_->graph.lifetime(); }

    bool is_burnt(Vertex v) const { return burn_time_[v] >= 0; }
    bool is_defended(Vertex v) const { return defence_time_[v] >= 0; }
    const std::vector<Vertex>& burnt_list() const { return burnt_list_; }

    // True while some burnt vertex still has an active incident edge at or
    // after the current timestep.
    bool fire_alive() const;

    // Plays one timestep: defends `defences` (throws InvalidDefence), then
    // spreads the fire across the edges active now, simultaneously.
    void step(const std::vector<Vertex>& defences);

    SimOutcome outcome() const;

private:
    const RootedInstance* inst_;
    Timestep t_ = 1;
    std::vector<Timestep> burn_time_, defence_time_;
    std::vector<Vertex> burnt_list_;
};

// Runs the process for t = 1..lifetime: defence first, then simultaneous
// spread. Throws InvalidDefence on a move targeting a burnt or defended
// vertex. Deterministic.
SimOutcome simulate(const RootedInstance& inst, const Strategy& s, const SimOptions& opt = {});

// Reserve variant: whole defence sets per timestep, budget-checked
// (throws BudgetExceeded / InvalidDefence).
SimOutcome simulate_reserve(const RootedInstance& inst, const ReserveStrategy& s,
                            const SimOptions& opt = {});

// Lemma "reserve equals standard", constructive direction: redistributes the
// surplus of multi-defence timesteps into earlier idle timesteps, one defence
// per timestep, each no later than in s. The returned strategy makes exactly
// the same defences and saves exactly as many vertices.
Strategy reserve_to_standard(const RootedInstance& inst, const ReserveStrategy& s);

ReserveStrategy lift_to_reserve(const Strategy& s);

// --- strategy file format ----------------------------------------------------
// One line per timestep. Standard: "t pass" or "t v". Reserve: "t v1 v2 ..."
// or just "t" for an empty defence set.

Strategy parse_strategy(const std::string& text);
ReserveStrategy parse_reserve_strategy(const std::string& text);
std::string format_strategy(const Strategy& s);
std::string format_reserve_strategy(const ReserveStrategy& s);

// {"saved":int,"burnt":[...],"defended":[...],"burn_time":{...}}
std::string outcome_to_json(const SimOutcome& o);

} // namespace tempfire
