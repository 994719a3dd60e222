#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tetris/engine.hpp"
#include "tetris/search.hpp"

namespace tetris {

struct ThreePartition {
    std::vector<int> a;
    int T = 0;
    int s() const { return static_cast<int>(a.size() / 3); }
};

struct P3Report {
    int s = 0;
    bool length_ok = false;  // len(a) is a positive multiple of 3
    bool sum_ok = false;     // sum a_i = sT
    bool window_ok = false;  // T/4 < a_i < T/2 for all i
    bool valid(bool strict) const { return length_ok && sum_ok && (!strict || window_ok); }
    std::string text() const;
};

P3Report check_3partition(const ThreePartition& p);

using Triples = std::vector<std::array<int, 3>>;  // indices into a

// Exhaustive search; fine for len(a) <= 12.
std::optional<Triples> solve_3partition_bruteforce(const ThreePartition& p);

// Throws Error(BadPartition) unless the triples cover every index once and
// each sums to T.
void check_partition(const ThreePartition& p, const Triples& t);

ThreePartition read_p3(std::istream& in);
ThreePartition read_p3_file(const std::string& path);
void write_p3(std::ostream& out, const ThreePartition& p);

struct ReductionOutput {
    TetrisInstance instance;
    Landmarks meta;
    AuditReport audit;
    std::vector<std::string> warnings;  // relaxed-mode notes
};

// strict: reject instances outside the T/4 < a_i < T/2 window. Non-strict
// instances still need sum a_i = sT and get a warning.
ReductionOutput gen_8col(const ThreePartition& p, int extra_cols = 0, bool strict = true);
Trajectory intended_8col(const ThreePartition& p, const Triples& t, int extra_cols = 0);

ReductionOutput gen_4row(const ThreePartition& p, int rows, bool strict = true);
Trajectory intended_4row(const ThreePartition& p, const Triples& t, int rows);

ReductionOutput gen_1row(const ThreePartition& p, bool strict = true);
Trajectory intended_1row(const ThreePartition& p, const Triples& t);

ReductionOutput gen_2row_empty(const ThreePartition& p, bool strict = true);
Trajectory intended_2row_empty(const ThreePartition& p, const Triples& t);

// With bootstrap, the instance starts from an empty board and the build
// pieces come first; replay then needs clear_before_loss.
ReductionOutput gen_3col_empty(const ThreePartition& p, bool bootstrap = false, bool strict = true);
Trajectory intended_3col_empty(const ThreePartition& p, const Triples& t, bool bootstrap = false);

// Pieces of height c+1 and width c that rebuild `target` from an empty board
// when dropped at column 0 with clear_before_loss on. Throws
// Error(Unreachable) if the target has a full row or is wider than c.
std::vector<PieceKind> gen_bootstrap(const Board& target, int c);

// Empty board tall enough to replay gen_bootstrap(target, c).
Board bootstrap_board(const Board& target, int c);

}  // namespace tetris
