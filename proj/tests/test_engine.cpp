#include "doctest.h"

#include <random>

#include "support.hpp"
#include "tempfire/engine.hpp"
#include "tempfire/instances.hpp"
#include "tempfire/oracle.hpp"

using namespace tempfire;
using testsup::make_instance;

namespace {

RootedInstance star4(Timestep t) {
    return make_instance(4, 0, {{0, 1, {t}}, {0, 2, {t}}, {0, 3, {t}}});
}

Strategy moves(std::vector<std::optional<Vertex>> m) { return Strategy{std::move(m)}; }

// outcome sanity: every burnt non-root vertex has a temporally adjacent
// predecessor burnt strictly earlier, and fire never enters the defended set
void check_outcome_invariants(const RootedInstance& inst, const SimOutcome& o) {
    const TemporalGraph& g = inst.graph;
    for (Vertex v : o.burnt) {
        CHECK(o.defence_time[v] < 0);
        if (v == inst.root) continue;
        Timestep bt = o.burn_time[v];
        bool has_pred = false;
        for (auto [w, ei] : g.adjacency(v)) {
            if (o.burn_time[w] >= 0 && o.burn_time[w] < bt &&
                std::binary_search(g.labels(ei).begin(), g.labels(ei).end(), bt))
                has_pred = true;
        }
        CHECK(has_pred);
    }
    CHECK(o.saved_count == g.vertex_count() - static_cast<int>(o.burnt.size()));
}

} // namespace

TEST_SUITE("engine") {

TEST_CASE("star burns completely under the empty strategy") {
    SimOutcome o = simulate(star4(1), {});
    CHECK(o.burnt.size() == 4);
    CHECK(o.saved_count == 0);
}

TEST_CASE("one defended leaf survives on the star") {
    SimOutcome o = simulate(star4(1), moves({1}));
    CHECK(o.saved_count == 1);
    CHECK(o.defended == std::vector<Vertex>{1});
}

TEST_CASE("cutting the path saves everything behind the cut") {
    RootedInstance inst = make_instance(3, 0, {{0, 1, {1}}, {1, 2, {2}}});
    SimOutcome o = simulate(inst, moves({1}));
    CHECK(o.saved_count == 2);
    CHECK(o.burnt == std::vector<Vertex>{0});
}

TEST_CASE("defending a burnt or defended vertex aborts") {
    CHECK_THROWS_AS(simulate(star4(1), moves({std::nullopt, 1})), InvalidDefence); // 1 burnt at t=1
    CHECK_THROWS_AS(simulate(star4(2), moves({1, 1})), InvalidDefence);            // already defended
}

TEST_CASE("early exit changes nothing") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        RootedInstance inst = gen_random(3 + trial % 6, 0.5, 5, 0.4, 40 + trial);
        Strategy s = testsup::random_strategy(inst, rng);
        SimOutcome a = simulate(inst, s);
        SimOutcome b = simulate(inst, s, SimOptions{.early_exit = true});
        CHECK(a.burnt == b.burnt);
        CHECK(a.defended == b.defended);
        CHECK(a.burn_time == b.burn_time);
    }
}

TEST_CASE("reserve banks budget across idle timesteps") {
    RootedInstance inst = star4(2);
    ReserveStrategy s{{{}, {1, 2}}};
    SimOutcome o = simulate_reserve(inst, s);
    CHECK(o.saved_count == 2);

    // same moves but everything already burnt at t=1
    CHECK_THROWS_AS(simulate_reserve(star4(1), s), InvalidDefence);
    // spending two defences on the very first timestep exceeds the budget
    CHECK_THROWS_AS(simulate_reserve(star4(2), ReserveStrategy{{{1, 2}}}), BudgetExceeded);
}

TEST_CASE("lifted strategies replay identically") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        RootedInstance inst = gen_random(3 + trial % 6, 0.5, 5, 0.4, 100 + trial);
        Strategy s = testsup::random_strategy(inst, rng);
        SimOutcome a = simulate(inst, s);
        SimOutcome b = simulate_reserve(inst, lift_to_reserve(s));
        CHECK(a.burnt == b.burnt);
        CHECK(a.defended == b.defended);
        CHECK(a.saved_count == b.saved_count);
        check_outcome_invariants(inst, a);
    }
}

TEST_CASE("empty-strategy burn times equal the foremost times") {
    for (int trial = 0; trial < 60; ++trial) {
        RootedInstance inst = gen_random(2 + trial % 8, 0.4, 5, 0.4, 200 + trial);
        SimOutcome o = simulate(inst, {});
        auto fm = foremost_times(inst);
        for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) {
            if (fm[v])
                CHECK(o.burn_time[v] == *fm[v]);
            else
                CHECK(o.burn_time[v] == -1);
        }
    }
}

TEST_CASE("reserve_to_standard keeps defences, order, and the saved count") {
    RootedInstance inst = star4(2);
    Strategy s = reserve_to_standard(inst, ReserveStrategy{{{}, {1, 2}}});
    REQUIRE(s.moves.size() == 2);
    CHECK(s.moves[0] == 1);
    CHECK(s.moves[1] == 2);
    CHECK(simulate(inst, s).saved_count == 2);

    // already-singleton strategies come back unchanged
    ReserveStrategy single{{{2}, {}, {3}}};
    Strategy t = reserve_to_standard(inst, single);
    REQUIRE(t.moves.size() == 3);
    CHECK(t.moves[0] == 2);
    CHECK_FALSE(t.moves[1].has_value());
    CHECK(t.moves[2] == 3);
}

TEST_CASE("reserve_to_standard preserves the saved count on random strategies") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        RootedInstance inst = gen_random(3 + trial % 6, 0.5, 5, 0.4, 300 + trial);
        ReserveStrategy rs = testsup::random_reserve_strategy(inst, rng);
        SimOutcome a = simulate_reserve(inst, rs);
        Strategy s = reserve_to_standard(inst, rs);
        // one defence per timestep, each no later than in the reserve plan
        std::vector<Timestep> reserve_when(inst.graph.vertex_count(), -1);
        for (size_t t = 0; t < rs.moves.size(); ++t)
            for (Vertex v : rs.moves[t]) reserve_when[v] = static_cast<Timestep>(t + 1);
        int defences = 0;
        for (size_t t = 0; t < s.moves.size(); ++t)
            if (s.moves[t]) {
                ++defences;
                CHECK(static_cast<Timestep>(t + 1) <= reserve_when[*s.moves[t]]);
            }
        int reserve_defences = 0;
        for (const auto& set : rs.moves) reserve_defences += static_cast<int>(set.size());
        CHECK(defences == reserve_defences);
        SimOutcome b = simulate(inst, s);
        CHECK(a.saved_count == b.saved_count);
    }
}

TEST_CASE("labels only delay the fire: static saved sets carry over") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        RootedInstance temporal = gen_random(3 + trial % 6, 0.5, 5, 0.5, 400 + trial);
        StaticGraph g = underlying(temporal.graph);
        RootedInstance surrogate = static_to_temporal(g, temporal.root);
        Strategy s = testsup::random_strategy(surrogate, rng);
        SimOutcome stat = simulate(surrogate, s);
        SimOutcome temp = simulate(temporal, s); // never an invalid defence
        for (Vertex v = 0; v < g.n; ++v) {
            bool saved_static = stat.burn_time[v] < 0;
            bool saved_temporal = temp.burn_time[v] < 0;
            if (saved_static) CHECK(saved_temporal);
        }
    }
}

TEST_CASE("extra defences never hurt") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 80; ++trial) {
        RootedInstance inst = gen_random(3 + trial % 6, 0.5, 5, 0.4, 500 + trial);
        Strategy s = testsup::random_strategy(inst, rng);
        SimOutcome base = simulate(inst, s);
        // upgrade one pass into a defence that is valid at that moment
        Strategy upgraded = s;
        bool changed = false;
        {
            Simulation sim(inst);
            for (size_t t = 0; t < s.moves.size() && !sim.finished(); ++t) {
                if (!s.moves[t] && !changed) {
                    for (Vertex v = 0; v < inst.graph.vertex_count(); ++v)
                        if (!sim.is_burnt(v) && !sim.is_defended(v)) {
                            upgraded.moves[t] = v;
                            changed = true;
                            break;
                        }
                }
                std::vector<Vertex> d;
                if (upgraded.moves[t]) d.push_back(*upgraded.moves[t]);
                sim.step(d);
            }
        }
        if (!changed) continue;
        CHECK(simulate(inst, upgraded).saved_count >= base.saved_count);
    }
}

TEST_CASE("strategy files round-trip") {
    Strategy s{{std::nullopt, 4, std::nullopt, 0}};
    CHECK(format_strategy(s) == "1 pass\n2 4\n3 pass\n4 0\n");
    Strategy back = parse_strategy(format_strategy(s));
    CHECK(back.moves == s.moves);

    ReserveStrategy r{{{}, {1, 2}, {}, {5}}};
    CHECK(format_reserve_strategy(r) == "1\n2 1 2\n3\n4 5\n");
    CHECK(parse_reserve_strategy(format_reserve_strategy(r)).moves == r.moves);

    CHECK_THROWS_AS(parse_strategy("2 4\n"), ParseError);      // must start at t=1
    CHECK_THROWS_AS(parse_strategy("1 frog\n"), ParseError);
}

TEST_CASE("outcome JSON carries the documented keys") {
    SimOutcome o = simulate(star4(1), moves({1}));
    std::string j = outcome_to_json(o);
    CHECK(j.find("\"saved\":1") != std::string::npos);
    CHECK(j.find("\"burnt\":[0,2,3]") != std::string::npos);
    CHECK(j.find("\"defended\":[1]") != std::string::npos);
    CHECK(j.find("\"burn_time\"") != std::string::npos);
}

} // TEST_SUITE
