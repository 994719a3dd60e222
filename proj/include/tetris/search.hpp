#pragma once

#include <map>
#include <string>
#include <vector>

#include "tetris/engine.hpp"

namespace tetris {

struct SearchLimits {
    long max_nodes = 5'000'000;
    double max_seconds = 60.0;
    bool transposition = true;
};

enum class Verdict { Solvable, Unsolvable, Indeterminate };
const char* verdict_name(Verdict v);

struct SearchResult {
    Verdict verdict = Verdict::Indeterminate;
    Trajectory trajectory;  // explicit rows; set when Solvable
    long nodes = 0;
    // Unsolvable under GENEROUS holds for every reasonable rotation model.
    bool model_independent = false;
};

// Exhaustive depth-first search for a trajectory meeting inst.goal.
SearchResult brute_force(const TetrisInstance& inst, const GameConfig& cfg, const SearchLimits& limits = {});

// Named cell set of a gadget region (rows/cols in board coordinates).
struct Landmark {
    std::string name;
    std::vector<Cell> cells;
};
using Landmarks = std::vector<Landmark>;

struct StepLog {
    int step = 0;
    Placement placement;
    int rows_cleared = 0;
    std::vector<std::string> events;  // e.g. "t-lock filled", "alley opened"
};

struct VerifyReport {
    Outcome outcome;
    std::vector<StepLog> log;
    bool goal_met = false;
};

// Wraps play(); with landmarks, reports the step at which each landmark's
// cells first become all filled ("<name> filled") and, for the alley, first
// becomes reachable from above ("alley opened").
VerifyReport verify(const TetrisInstance& inst, const Trajectory& traj, const GameConfig& cfg,
                    const Landmarks& landmarks = {});

struct AuditReport {
    // Ordered key = value lines.
    std::vector<std::pair<std::string, std::string>> entries;
    bool pass = true;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, long value) { set(key, std::to_string(value)); }
    void check(const std::string& name, bool ok);
    std::string text() const;
};

long piece_area(const std::vector<PieceKind>& pieces);

// Counting audit: total piece area vs empty cells, per-landmark empty counts,
// and the clear-goal feasibility bound. Extra identities may be registered by
// the caller through `identities` (name -> holds).
AuditReport area_audit(const TetrisInstance& inst, const Landmarks& landmarks = {},
                       const std::vector<std::pair<std::string, bool>>& identities = {});

int count_empty(const Board& b, const std::vector<Cell>& cells);

}  // namespace tetris
