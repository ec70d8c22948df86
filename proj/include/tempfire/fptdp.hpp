#pragma once

#include <cstdint>
#include <vector>

#include "tempfire/engine.hpp"

namespace tempfire {

// One reachable profile at layer i: D and B are the defended/burnt vertices
// within F_i (stored as bit masks over the sorted F_i list), g the budget
// available on timestep i+1, c the total burnt count so far.
struct DpEntry {
    std::uint32_t defended_mask = 0; // D, local to F_i
    std::uint32_t burnt_mask = 0;    // B, local to F_i
    std::int32_t budget = 0;         // g >= 1
    std::int32_t burnt_count = 0;    // c >= 1
    std::int32_t parent = -1;        // index into the previous layer, -1 at L_0
    std::uint32_t defence_mask = 0;  // A, local to F_i, for reconstruction
};

struct DpLayer {
    Timestep i = 0;
    std::vector<Vertex> members; // sorted F_i (F_0 = {root})
    std::vector<DpEntry> entries;
};

struct FptOptions {
    // Drop (D,B,g,c) when another entry (D,B,g',c') with g' >= g and
    // c' <= c exists. Preserves the optimum; the census tests run with this
    // off to compare raw layers against exhaustive play.
    bool dominance_prune = true;
    bool keep_layers = false; // retain every layer in the result (trace / census)
    int max_width = 24;       // resource guard on omega (layer cost 8^omega)
};

struct FptResult {
    int max_saved = 0;
    ReserveStrategy witness;
    int width = 0; // omega of the instance
    std::uint64_t total_entries = 0;
    std::vector<DpLayer> layers; // populated when keep_layers is set
};

// The layered dynamic program over the vertex interval membership sequence.
class FptSolver {
public:
    FptSolver(const RootedInstance& inst, const FptOptions& opt = {});

    // Expands every entry of `prev` (the layer for i-1) with every defence
    // set A of the at-most-budget vertices touched by E_i, deduplicated on
    // (D, B, g, c); first-found back-pointers.
    DpLayer advance_layer(const DpLayer& prev) const;

    DpLayer initial_layer() const; // L_0 = {(empty, {r}, 1, 1)}

    FptResult solve() const;

    const VimSequence& vim() const { return vim_; }

private:
    const RootedInstance* inst_;
    FptOptions opt_;
    VimSequence vim_;
    std::vector<std::vector<Vertex>> layer_members_;   // index 0..lifetime
    std::vector<std::vector<std::pair<int, int>>> active_local_; // E_i as F_i-local index pairs
    std::vector<int> root_local_;                      // root's index in F_i, -1 if absent

    void prune_layer(DpLayer& layer) const;
};

FptResult solve_fpt(const RootedInstance& inst, const FptOptions& opt = {});

// True iff at least k vertices can be saved.
bool decide(const RootedInstance& inst, int k, const FptOptions& opt = {});

// JSON-lines layer trace: one object per entry per layer.
std::string dump_layer_trace(const std::vector<DpLayer>& layers);

} // namespace tempfire
