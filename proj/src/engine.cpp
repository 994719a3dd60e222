#include "tetris/engine.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "tetris/error.hpp"

namespace tetris {

const char* model_name(Model m) { return m == Model::Strict ? "strict" : "generous"; }
const char* goal_name(Goal g) { return g == Goal::Clear ? "clear" : "survive"; }

const char* loss_name(LossReason r) {
    switch (r) {
        case LossReason::None: return "NONE";
        case LossReason::PartialLockOut: return "PARTIAL_LOCK_OUT";
        case LossReason::NoLegalPlacement: return "NO_LEGAL_PLACEMENT";
    }
    return "?";
}

std::string Outcome::describe() const {
    if (lost) return "lost step=" + std::to_string(step) + " reason=" + loss_name(reason);
    return std::string("survived cleared=") + (cleared ? "true" : "false");
}

int canonical_rot(const PieceKind& kind, int degrees) {
    if (degrees % 90 != 0) throw Error(Errc::Parse, "rotation must be a multiple of 90");
    int quarter = ((degrees / 90) % 4 + 4) % 4;
    int n = static_cast<int>(orientations(kind).size());
    return (quarter % n) * 90;
}

std::vector<Cell> placement_cells(const Polyomino& oriented, const Placement& p) {
    std::vector<Cell> out;
    out.reserve(oriented.cells().size());
    for (const Cell& x : oriented.cells()) out.push_back({p.row + x.row, p.col + x.col});
    return out;
}

std::vector<Cell> placement_cells(const PieceKind& kind, const Placement& p) {
    const auto& oris = orientations(kind);
    return placement_cells(oris.at(static_cast<size_t>(p.rot / 90)), p);
}

std::optional<int> drop_row(const Board& b, const Polyomino& o, int col) {
    if (col < 0 || col + o.width() > b.width()) return std::nullopt;
    auto fits = [&](int row) {
        if (row + o.height() > b.height()) return false;
        for (const Cell& x : o.cells())
            if (b.filled(row + x.row, col + x.col)) return false;
        return true;
    };
    int row = -o.height();
    while (fits(row + 1)) ++row;
    return row;
}

std::optional<int> drop_row(const Board& b, const PieceKind& kind, int rot, int col) {
    const auto& oris = orientations(kind);
    return drop_row(b, oris.at(static_cast<size_t>(canonical_rot(kind, rot) / 90)), col);
}

Reach analyze_reach(const Board& b) {
    const int W = b.width(), H = b.height(), N = W * H, S = N;
    Reach out;
    out.open.assign(N, 0);
    out.choke.assign(N, 0);
    out.nonbar.assign(N, 0);

    // Iterative Tarjan articulation search rooted at the above-board node S.
    std::vector<int> disc(N + 1, -1), low(N + 1, 0), parent(N + 1, -1), next(N + 1, 0);
    std::vector<uint8_t> art(N, 0);
    auto neighbor = [&](int v, int k) -> int {
        // Returns the k-th neighbour slot of v (-1 if absent), -2 when exhausted.
        if (v == S) {
            if (k >= W) return -2;
            return b.at(0, k) ? -1 : k;
        }
        if (k >= 4) return -2;
        int r = v / W, c = v % W;
        static const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
        int nr = r + dr[k], nc = c + dc[k];
        if (nr < 0) return S;
        if (nr >= H || nc < 0 || nc >= W || b.at(nr, nc)) return -1;
        return nr * W + nc;
    };
    int timer = 0;
    std::vector<int> stack{S};
    disc[S] = low[S] = timer++;
    while (!stack.empty()) {
        int v = stack.back();
        int u = neighbor(v, next[v]);
        if (u == -2) {
            stack.pop_back();
            int p = parent[v];
            if (p >= 0) {
                low[p] = std::min(low[p], low[v]);
                if (p != S && low[v] >= disc[p]) art[p] = 1;
            }
            continue;
        }
        ++next[v];
        if (u < 0) continue;
        if (disc[u] < 0) {
            parent[u] = v;
            disc[u] = low[u] = timer++;
            stack.push_back(u);
        } else if (u != parent[v]) {
            low[v] = std::min(low[v], disc[u]);
        }
    }

    for (int v = 0; v < N; ++v) {
        if (disc[v] < 0) continue;
        out.open[v] = 1;
        int r = v / W, c = v % W;
        bool vert = b.filled(r - 1, c) && b.filled(r + 1, c);
        bool horiz = b.filled(r, c - 1) && b.filled(r, c + 1);
        if (art[v] && (vert || horiz)) out.choke[v] = 1;
    }

    std::deque<int> q;
    for (int c = 0; c < W; ++c) {
        int v = c;
        if (out.open[v] && !out.choke[v]) {
            out.nonbar[v] = 1;
            q.push_back(v);
        }
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int k = 0; k < 4; ++k) {
            int u = neighbor(v, k);
            if (u < 0 || u == S || out.nonbar[u] || out.choke[u]) continue;
            out.nonbar[u] = 1;
            q.push_back(u);
        }
    }
    return out;
}

namespace {
int floor_half(int d) { return d >= 0 ? d / 2 : -((1 - d) / 2); }
}  // namespace

// Keeps the bounding-box center. A half-cell shift rounds toward the lower
// left when turning clockwise and toward the upper right when turning
// counter-clockwise, so the two turns undo each other.

std::pair<int, int> rotation_offset(const Polyomino& from, const Polyomino& to, int dir) {
    int h = from.height() - to.height(), w = from.width() - to.width();
    int dr = floor_half(h), dc = floor_half(w);
    if (dir > 0 && h % 2 != 0) dr += 1;
    if (dir < 0 && w % 2 != 0) dc += 1;
    return {dr, dc};
}

namespace {

struct Space {
    const Board& b;
    const Reach& reach;
    bool bar;

    // Cells inside the board must be empty and in the above-connected
    // component; a non-bar piece must keep a cell on the near side of every
    // choke point.
    bool admits(const Polyomino& o, int row, int col) const {
        if (col < 0 || col + o.width() > b.width() || row + o.height() > b.height()) return false;
        bool near = bar;
        const int W = b.width();
        for (const Cell& x : o.cells()) {
            int r = row + x.row, c = col + x.col;
            if (r < 0) {
                near = true;
                continue;
            }
            int v = r * W + c;
            if (!reach.open[v]) return false;
            if (reach.nonbar[v]) near = true;
        }
        return near;
    }

    bool resting(const Polyomino& o, int row, int col) const {
        for (const Cell& x : o.cells())
            if (b.filled(row + x.row + 1, col + x.col)) return true;
        return false;
    }
};

std::vector<Placement> strict_placements(const Board& b, const std::vector<Polyomino>& oris, const Space& sp) {
    const int n = static_cast<int>(oris.size()), W = b.width(), H = b.height();
    int maxd = 1;
    for (const auto& o : oris) maxd = std::max({maxd, o.height(), o.width()});
    const int rmin = -2 * maxd - 2, R = H - rmin;
    auto id = [&](int j, int row, int col) { return (static_cast<size_t>(j) * R + (row - rmin)) * W + col; };
    std::vector<uint8_t> seen(static_cast<size_t>(n) * R * W, 0);
    struct State {
        int j, row, col;
    };
    std::deque<State> q;
    auto visit = [&](int j, int row, int col) {
        if (row < rmin || row >= H) return;
        if (!sp.admits(oris[j], row, col)) return;
        size_t k = id(j, row, col);
        if (seen[k]) return;
        seen[k] = 1;
        q.push_back({j, row, col});
    };
    for (int j = 0; j < n; ++j)
        for (int col = 0; col + oris[j].width() <= W; ++col) visit(j, -oris[j].height(), col);

    std::vector<Placement> out;
    while (!q.empty()) {
        State s = q.front();
        q.pop_front();
        const Polyomino& o = oris[s.j];
        if (sp.resting(o, s.row, s.col)) out.push_back({s.j * 90, s.col, s.row, s.row < 0});
        visit(s.j, s.row + 1, s.col);
        visit(s.j, s.row, s.col - 1);
        visit(s.j, s.row, s.col + 1);
        if (n > 1) {
            for (int dir : {1, -1}) {
                int t = (s.j + dir + n) % n;
                const Polyomino& p = oris[t];
                auto [dr, dc] = rotation_offset(o, p, dir);
                visit(t, s.row + dr, s.col + dc);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Placement> generous_placements(const Board& b, const std::vector<Polyomino>& oris, const Space& sp) {
    std::vector<Placement> out;
    for (int j = 0; j < static_cast<int>(oris.size()); ++j) {
        const Polyomino& o = oris[j];
        for (int col = 0; col + o.width() <= b.width(); ++col)
            for (int row = -o.height(); row + o.height() <= b.height(); ++row)
                if (sp.admits(o, row, col) && sp.resting(o, row, col)) out.push_back({j * 90, col, row, row < 0});
    }
    return out;
}

}  // namespace

std::vector<Placement> enumerate_placements(const Board& b, const PieceKind& kind, Model model) {
    const auto& oris = orientations(kind);
    Reach reach = analyze_reach(b);
    Space sp{b, reach, kind.shape.is_bar()};
    return model == Model::Strict ? strict_placements(b, oris, sp) : generous_placements(b, oris, sp);
}

StepResult lock_piece(const Board& b, const PieceKind& kind, const Placement& p, const GameConfig& cfg) {
    StepResult res;
    res.board_after = b;
    Board& nb = res.board_after;
    std::vector<Cell> above;
    for (const Cell& o : orientations(kind).at(static_cast<size_t>(p.rot / 90)).cells()) {
        Cell x{p.row + o.row, p.col + o.col};
        if (x.row < 0) above.push_back(x);
        else nb.set(x.row, x.col);
    }
    if (!above.empty() && !cfg.clear_before_loss) {
        res.lost = true;
        res.reason = LossReason::PartialLockOut;
        return res;
    }
    // Rows above the board take part in the clear; whatever is still above
    // the top row afterwards loses.
    int up = 0;
    for (const Cell& x : above) up = std::max(up, -x.row);
    if (up == 0) {
        res.rows_cleared = nb.clear_full_rows();
        return res;
    }
    const int W = nb.width(), H = nb.height();
    Board ext(W, H + up);
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c)
            if (nb.at(r, c)) ext.set(r + up, c);
    for (const Cell& x : above) ext.set(x.row + up, x.col);
    res.rows_cleared = ext.clear_full_rows();
    for (int r = 0; r < up; ++r)
        if (!ext.row_empty(r)) {
            res.lost = true;
            res.reason = LossReason::PartialLockOut;
            return res;
        }
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < W; ++c) nb.set(r, c, ext.at(r + up, c));
    return res;
}

StepResult apply_placement(const Board& b, const PieceKind& kind, const Placement& p, const GameConfig& cfg) {
    auto all = enumerate_placements(b, kind, cfg.model);
    auto it = std::lower_bound(all.begin(), all.end(), p);
    if (it == all.end() || !(*it == p))
        throw Error(Errc::IllegalPlacement,
                    "placement rot=" + std::to_string(p.rot) + " col=" + std::to_string(p.col) +
                        " row=" + std::to_string(p.row) + " is not reachable");
    return lock_piece(b, kind, *it, cfg);
}

Placement resolve_move(const Board& b, const PieceKind& kind, const Move& m, int step) {
    Placement p;
    try {
        p.rot = canonical_rot(kind, m.rot);
    } catch (const Error& e) {
        throw Error(Errc::IllegalPlacement, e.what(), step);
    }
    p.col = m.col;
    if (m.row) {
        p.row = *m.row;
    } else {
        auto r = drop_row(b, kind, p.rot, m.col);
        if (!r) throw Error(Errc::IllegalPlacement, "piece does not fit at col " + std::to_string(m.col), step);
        p.row = *r;
    }
    return p;
}

Outcome play(const TetrisInstance& inst, const Trajectory& traj, const GameConfig& cfg, const StepObserver& observer) {
    if (traj.size() > inst.pieces.size())
        throw Error(Errc::LengthMismatch, "trajectory has more moves than pieces");
    Board board = inst.board;
    Outcome out;
    for (size_t i = 0; i < inst.pieces.size(); ++i) {
        const PieceKind& kind = inst.pieces[i];
        const int step = static_cast<int>(i);
        if (i >= traj.size()) {
            if (enumerate_placements(board, kind, cfg.model).empty()) {
                out.lost = true;
                out.step = step;
                out.reason = LossReason::NoLegalPlacement;
                return out;
            }
            throw Error(Errc::LengthMismatch, "trajectory ends before piece " + std::to_string(i), step);
        }
        Placement p = resolve_move(board, kind, traj[i], step);
        StepResult res;
        try {
            res = apply_placement(board, kind, p, cfg);
        } catch (const Error& e) {
            throw Error(Errc::IllegalPlacement, "step " + std::to_string(i) + ": " + e.what(), step);
        }
        if (observer) observer(step, p, res);
        if (res.lost) {
            out.lost = true;
            out.step = step;
            out.reason = res.reason;
            return out;
        }
        board = std::move(res.board_after);
    }
    out.cleared = board.empty();
    return out;
}

}  // namespace tetris
