#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tetris/board.hpp"
#include "tetris/geometry.hpp"

namespace tetris {

enum class Model { Strict, Generous };
enum class Goal { Survive, Clear };
enum class LossReason { None, PartialLockOut, NoLegalPlacement };

const char* model_name(Model m);
const char* goal_name(Goal g);
const char* loss_name(LossReason r);

struct GameConfig {
    Model model = Model::Strict;
    bool clear_before_loss = false;
};

// Top-left of the oriented bounding box. rot is clockwise degrees of a distinct
// orientation (index rot/90 into orientations()).
struct Placement {
    int rot = 0;
    int col = 0;
    int row = 0;
    bool lock_out = false;  // some cell above row 0; not part of identity

    bool operator==(const Placement& o) const { return rot == o.rot && col == o.col && row == o.row; }
    bool operator<(const Placement& o) const {
        if (rot != o.rot) return rot < o.rot;
        if (col != o.col) return col < o.col;
        return row < o.row;
    }
};

struct StepResult {
    Board board_after;
    int rows_cleared = 0;
    bool lost = false;
    LossReason reason = LossReason::None;
};

struct TetrisInstance {
    Board board;
    std::vector<PieceKind> pieces;
    Goal goal = Goal::Clear;
};

// One trajectory entry; a missing row means "straight drop from above".
struct Move {
    int rot = 0;
    int col = 0;
    std::optional<int> row;
};
using Trajectory = std::vector<Move>;

struct Outcome {
    bool lost = false;
    int step = -1;  // failing piece index when lost
    LossReason reason = LossReason::None;
    bool cleared = false;  // survived and final board empty

    bool meets(Goal g) const { return !lost && (g == Goal::Survive || cleared); }
    std::string describe() const;
};

// Reduces a rotation in degrees (any multiple of 90) to the degree value of
// the distinct orientation it produces. Throws Error(Parse) otherwise.
int canonical_rot(const PieceKind& kind, int degrees);

std::vector<Cell> placement_cells(const Polyomino& oriented, const Placement& p);
std::vector<Cell> placement_cells(const PieceKind& kind, const Placement& p);

// Resting row when the oriented piece falls straight down from above the
// board at the given column; nullopt if the orientation does not fit there.
std::optional<int> drop_row(const Board& b, const Polyomino& oriented, int col);
std::optional<int> drop_row(const Board& b, const PieceKind& kind, int rot, int col);

// Empty-space structure used by both placement models.
struct Reach {
    std::vector<uint8_t> open;    // empty and connected to the region above the board
    std::vector<uint8_t> choke;   // single-cell choke points
    std::vector<uint8_t> nonbar;  // reachable from above without crossing a choke point
};
Reach analyze_reach(const Board& b);

// Shift of the top-left corner when turning `from` into `to`; dir is +1 for
// clockwise, -1 for counter-clockwise.
std::pair<int, int> rotation_offset(const Polyomino& from, const Polyomino& to, int dir);

// Sorted by (orientation, col, row).
std::vector<Placement> enumerate_placements(const Board& b, const PieceKind& kind, Model model);

// Locks the piece without checking reachability (the caller guarantees it).
StepResult lock_piece(const Board& b, const PieceKind& kind, const Placement& p, const GameConfig& cfg);

// Throws Error(IllegalPlacement) unless p is enumerated under cfg.model.
StepResult apply_placement(const Board& b, const PieceKind& kind, const Placement& p, const GameConfig& cfg);

// Resolves a trajectory entry to a placement (computing the drop row if
// omitted). Throws Error(IllegalPlacement).
Placement resolve_move(const Board& b, const PieceKind& kind, const Move& m, int step);

using StepObserver = std::function<void(int step, const Placement&, const StepResult&)>;

Outcome play(const TetrisInstance& inst, const Trajectory& traj, const GameConfig& cfg,
             const StepObserver& observer = {});

}  // namespace tetris
