#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tempfire/engine.hpp"

namespace tempfire {

// Containment strategy for temporal graphs of maximum degree 3 with a root
// of degree at most 2. Vertices are scored by how cheaply the fire can be
// sealed off once it reaches them.

enum class CubicClass { V0, V1, Vc, None };

struct CubicVertexInfo {
    CubicClass cls = CubicClass::None;
    int dist = -1;                           // static distance from the root
    int cycle_len = -1;                      // C(u) when cls == Vc
    long long score = std::numeric_limits<long long>::max(); // f(u) when classified
};

struct CubicClassification {
    std::vector<CubicVertexInfo> info;

    // Minimizer of the score (ties: smallest vertex id), -1 if no vertex
    // is classified.
    Vertex best() const;
};

// Classifies every vertex. u is in V0 (resp. V1) iff, for the most
// favorable choice of shortest-path predecessor, u has 0 (resp. 1) vertices
// temporally adjacent at time dist(r,u)+1 off that path; Vc holds the
// remaining cycle vertices, scored dist + C(u) - 1.
// Throws ValidationError unless max degree <= 3 and degree(root) <= 2.
CubicClassification classify(const RootedInstance& inst);

struct CubicBuildResult {
    Strategy strategy;
    int burnt_budget = 0;   // f(u) of the chosen minimizer
    Vertex chosen = -1;
    SimOutcome outcome;     // replay of the built strategy
    bool assertions_hold = false;
    std::string diagnostic; // reason when assertions fail
};

// Builds the containment strategy for the minimizer: walls off the shortest
// path while the fire advances, then seals the final vertex (or rides out
// its cycle). The result carries its own replay so callers can check
// burnt == burnt_budget.
CubicBuildResult build_strategy(const RootedInstance& inst, const CubicClassification& cls);

struct CubicOptions {
    // Report the constructed strategy even when its runtime assertions fail,
    // instead of falling back to the FPT solver.
    bool force = false;
    int fpt_max_width = 24; // guard forwarded to the fallback solver
};

struct CubicResult {
    int max_saved = 0;
    Strategy witness;
    bool used_fallback = false;
    std::string fallback_reason;
    Vertex chosen = -1;
    int min_score = 0;
};

// max_saved = n - min f. Falls back to the FPT solver (reported in the
// result) when no vertex is classified or a runtime assertion fails.
CubicResult solve_cubic(const RootedInstance& inst, const CubicOptions& opt = {});

// True iff max degree <= 3, degree(root) <= 2 (solver preconditions).
bool cubic_applicable(const RootedInstance& inst);

} // namespace tempfire
