#include "doctest.h"

#include <cmath>
#include <set>
#include <tuple>

#include "support.hpp"
#include "tempfire/fptdp.hpp"
#include "tempfire/instances.hpp"
#include "tempfire/oracle.hpp"

using namespace tempfire;
using testsup::make_instance;

namespace {

using Tuple = std::tuple<std::uint32_t, std::uint32_t, int, int>;

std::set<Tuple> layer_tuples(const DpLayer& layer) {
    std::set<Tuple> out;
    for (const auto& e : layer.entries)
        out.insert({e.defended_mask, e.burnt_mask, e.budget, e.burnt_count});
    return out;
}

RootedInstance path3() { return make_instance(3, 0, {{0, 1, {1}}, {1, 2, {2}}}); }

} // namespace

TEST_SUITE("fptdp") {

TEST_CASE("the zeroth layer is (empty, {root}, 1, 1)") {
    FptSolver solver(path3());
    DpLayer l0 = solver.initial_layer();
    CHECK(l0.i == 0);
    CHECK(l0.members == std::vector<Vertex>{0});
    REQUIRE(l0.entries.size() == 1);
    CHECK(l0.entries[0].defended_mask == 0);
    CHECK(l0.entries[0].burnt_mask == 1);
    CHECK(l0.entries[0].budget == 1);
    CHECK(l0.entries[0].burnt_count == 1);
}

TEST_CASE("layer advance on the path instance, by hand") {
    FptOptions opt;
    opt.dominance_prune = false;
    FptSolver solver(path3(), opt);

    DpLayer l1 = solver.advance_layer(solver.initial_layer());
    CHECK(l1.members == std::vector<Vertex>{0, 1});
    // A = {}: everything spreads; A = {a}: the fire is boxed in at the root
    std::set<Tuple> expect1{
        {0b00u, 0b11u, 2, 2}, // (no defences, {r,a} burnt, budget 2, count 2)
        {0b10u, 0b01u, 1, 1}, // ({a} defended, {r} burnt, budget 1, count 1)
    };
    CHECK(layer_tuples(l1) == expect1);

    DpLayer l2 = solver.advance_layer(l1);
    CHECK(l2.members == std::vector<Vertex>{1, 2});
    std::set<Tuple> expect2{
        {0b00u, 0b11u, 3, 3}, // fire ran the whole path
        {0b10u, 0b01u, 2, 2}, // b defended at t=2
        {0b01u, 0b00u, 2, 1}, // a defended at t=1, fire dead; count 1 carried
        {0b11u, 0b00u, 1, 1}, // a then b defended, wasteful but reachable
    };
    CHECK(layer_tuples(l2) == expect2);
}

TEST_CASE("solve on the path saves two") {
    FptResult r = solve_fpt(path3());
    CHECK(r.max_saved == 2);
    CHECK(r.width == 2);
    CHECK(simulate_reserve(path3(), r.witness).saved_count == 2);
}

TEST_CASE("solve on K2") {
    RootedInstance k2 = make_instance(2, 0, {{0, 1, {1}}});
    CHECK(solve_fpt(k2).max_saved == 1);
}

TEST_CASE("a root whose edges open late still spreads fire") {
    // star with every edge at t=3: the root sits outside F_1 and F_2 but
    // must stay a spread source; the banked budget then saves 3 of 5 leaves
    RootedInstance star = make_instance(
        6, 0, {{0, 1, {3}}, {0, 2, {3}}, {0, 3, {3}}, {0, 4, {3}}, {0, 5, {3}}});
    CHECK(vim_sequence(star.graph).mintime[0] == 3);
    FptResult r = solve_fpt(star);
    CHECK(r.max_saved == 3);
    CHECK(r.max_saved == solve_temporal(star).max_saved);
    CHECK(simulate_reserve(star, r.witness).saved_count == 3);

    // same matter with an off-root component active early
    RootedInstance inst = make_instance(4, 0, {{1, 2, {1}}, {2, 3, {2}}, {0, 1, {3}}, {0, 2, {4}}});
    CHECK(solve_fpt(inst).max_saved == solve_temporal(inst).max_saved);
}

TEST_CASE("random instances agree with both oracles") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        RootedInstance inst = gen_random(2 + seed % 7, 0.4, 5, 0.4, 9000 + seed);
        FptResult r = solve_fpt(inst);
        CHECK(r.max_saved == solve_temporal(inst).max_saved);
        CHECK(simulate_reserve(inst, r.witness).saved_count == r.max_saved);
    }
}

TEST_CASE("dominance pruning does not change the optimum") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RootedInstance inst = gen_random(3 + seed % 6, 0.4, 5, 0.4, 9100 + seed);
        FptOptions no_prune;
        no_prune.dominance_prune = false;
        FptResult a = solve_fpt(inst);
        FptResult b = solve_fpt(inst, no_prune);
        CHECK(a.max_saved == b.max_saved);
        CHECK(a.total_entries <= b.total_entries);
        CHECK(simulate_reserve(inst, a.witness).saved_count == a.max_saved);
        CHECK(simulate_reserve(inst, b.witness).saved_count == b.max_saved);
    }
}

TEST_CASE("raw layers match exhaustive normalized reserve play") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        RootedInstance inst = gen_random(2 + seed % 6, 0.5, 4, 0.5, 9200 + seed);
        FptOptions opt;
        opt.dominance_prune = false;
        opt.keep_layers = true;
        FptResult r = solve_fpt(inst, opt);
        testsup::ProfileCensus census = testsup::enumerate_profiles(inst);
        REQUIRE(r.layers.size() == census.layers.size() + 1);
        for (Timestep i = 1; i <= inst.graph.lifetime(); ++i)
            CHECK(layer_tuples(r.layers[i]) == census.layers[i - 1]);
    }
}

TEST_CASE("layer sizes respect the width bound") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RootedInstance inst = gen_random(3 + seed % 5, 0.5, 4, 0.5, 9300 + seed);
        FptOptions opt;
        opt.dominance_prune = false;
        opt.keep_layers = true;
        FptResult r = solve_fpt(inst, opt);
        double w = r.width;
        double lam = inst.graph.lifetime();
        double bound = std::pow(4.0, w) * lam * (w * lam + 1);
        for (const auto& layer : r.layers)
            CHECK(static_cast<double>(layer.entries.size()) <= bound);
    }
}

TEST_CASE("decide thresholds") {
    RootedInstance inst = path3();
    CHECK(decide(inst, 0));
    CHECK(decide(inst, 2));
    CHECK_FALSE(decide(inst, 3)); // the root always burns
}

TEST_CASE("width guard") {
    RootedInstance inst = gen_random(12, 0.6, 3, 0.9, 4242);
    FptOptions opt;
    opt.max_width = 4;
    CHECK(vim_sequence(inst.graph).width > 4);
    CHECK_THROWS_AS(solve_fpt(inst, opt), GuardExceeded);
}

TEST_CASE("layer trace lists every entry") {
    FptOptions opt;
    opt.keep_layers = true;
    FptResult r = solve_fpt(path3(), opt);
    std::string trace = dump_layer_trace(r.layers);
    size_t lines = std::count(trace.begin(), trace.end(), '\n');
    CHECK(lines == r.total_entries);
    CHECK(trace.find("\"i\":0") != std::string::npos);
    CHECK(trace.find("\"B\":[0]") != std::string::npos);
}

} // TEST_SUITE
