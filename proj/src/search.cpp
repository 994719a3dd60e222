#include "tetris/search.hpp"

#include <chrono>
#include <sstream>
#include <unordered_set>

namespace tetris {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Solvable: return "SOLVABLE";
        case Verdict::Unsolvable: return "UNSOLVABLE";
        case Verdict::Indeterminate: return "INDETERMINATE";
    }
    return "?";
}

long piece_area(const std::vector<PieceKind>& pieces) {
    long a = 0;
    for (const auto& p : pieces) a += p.shape.size();
    return a;
}

int count_empty(const Board& b, const std::vector<Cell>& cells) {
    int n = 0;
    for (const Cell& c : cells)
        if (b.in_bounds(c.row, c.col) && !b.at(c.row, c.col)) ++n;
    return n;
}

namespace {

struct Key {
    Board board;
    int index;
    bool operator==(const Key& o) const = default;
};

struct KeyHash {
    size_t operator()(const Key& k) const { return BoardHash{}(k.board) * 31 + static_cast<size_t>(k.index); }
};

class Dfs {
public:
    Dfs(const TetrisInstance& inst, const GameConfig& cfg, const SearchLimits& lim)
        : inst_(inst), cfg_(cfg), lim_(lim), start_(std::chrono::steady_clock::now()) {
        suffix_area_.assign(inst.pieces.size() + 1, 0);
        for (size_t i = inst.pieces.size(); i-- > 0;)
            suffix_area_[i] = suffix_area_[i + 1] + inst.pieces[i].shape.size();
    }

    SearchResult run() {
        SearchResult res;
        bool found = false;
        try {
            found = go(inst_.board, 0);
        } catch (const Abort&) {
            res.verdict = Verdict::Indeterminate;
            res.nodes = nodes_;
            return res;
        }
        res.nodes = nodes_;
        if (found) {
            res.verdict = Verdict::Solvable;
            res.trajectory.assign(path_.rbegin(), path_.rend());
        } else {
            res.verdict = Verdict::Unsolvable;
            res.model_independent = cfg_.model == Model::Generous;
        }
        return res;
    }

private:
    struct Abort {};

    bool go(const Board& b, int i) {
        if (++nodes_ > lim_.max_nodes) throw Abort{};
        if ((nodes_ & 1023) == 0) {
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
            if (dt.count() > lim_.max_seconds) throw Abort{};
        }
        const int n = static_cast<int>(inst_.pieces.size());
        if (i == n) return inst_.goal == Goal::Survive || b.empty();
        if (inst_.goal == Goal::Clear && (b.count_filled() + suffix_area_[i]) % b.width() != 0) return false;
        Key key{b, i};
        if (lim_.transposition && failed_.count(key)) return false;

        const PieceKind& kind = inst_.pieces[i];
        for (const Placement& p : enumerate_placements(b, kind, cfg_.model)) {
            if (p.lock_out && !cfg_.clear_before_loss) continue;
            StepResult r = lock_piece(b, kind, p, cfg_);
            if (r.lost) continue;
            if (go(r.board_after, i + 1)) {
                path_.push_back(Move{p.rot, p.col, p.row});
                return true;
            }
        }
        if (lim_.transposition) failed_.insert(std::move(key));
        return false;
    }

    const TetrisInstance& inst_;
    GameConfig cfg_;
    SearchLimits lim_;
    std::chrono::steady_clock::time_point start_;
    std::vector<long> suffix_area_;
    std::unordered_set<Key, KeyHash> failed_;
    std::vector<Move> path_;  // reversed
    long nodes_ = 0;
};

}  // namespace

SearchResult brute_force(const TetrisInstance& inst, const GameConfig& cfg, const SearchLimits& limits) {
    return Dfs(inst, cfg, limits).run();
}

VerifyReport verify(const TetrisInstance& inst, const Trajectory& traj, const GameConfig& cfg,
                    const Landmarks& landmarks) {
    VerifyReport rep;
    std::vector<bool> done(landmarks.size(), false);
    std::vector<bool> opened(landmarks.size(), false);
    auto is_alley = [](const std::string& name) { return name == "alley"; };
    Board prev = inst.board;
    rep.outcome = play(inst, traj, cfg, [&](int step, const Placement& p, const StepResult& r) {
        StepLog log{step, p, r.rows_cleared, {}};
        // Landmarks are tested on the board before rows clear, so a lock that
        // completes a row still counts as filled.
        Board locked = prev;
        for (const Cell& c : placement_cells(inst.pieces[static_cast<size_t>(step)], p))
            if (locked.in_bounds(c.row, c.col)) locked.set(c.row, c.col);
        const Board& b = r.board_after;
        Reach reach;
        bool have_reach = false;
        for (size_t k = 0; k < landmarks.size(); ++k) {
            const Landmark& lm = landmarks[k];
            if (!done[k] && !lm.cells.empty() && count_empty(locked, lm.cells) == 0) {
                done[k] = true;
                log.events.push_back(lm.name + " filled");
            }
            if (is_alley(lm.name) && !opened[k] && r.rows_cleared > 0) {
                if (!have_reach) {
                    reach = analyze_reach(b);
                    have_reach = true;
                }
                // Rows above a cleared row move down.
                for (const Cell& c : lm.cells) {
                    if (!locked.in_bounds(c.row, c.col) || locked.row_full(c.row)) continue;
                    int row = c.row;
                    for (int q = c.row + 1; q < locked.height(); ++q)
                        if (locked.row_full(q)) ++row;
                    if (reach.open[static_cast<size_t>(row) * b.width() + c.col]) {
                        opened[k] = true;
                        log.events.push_back("alley opened");
                        break;
                    }
                }
            }
        }
        if (r.lost) log.events.push_back(std::string("lost: ") + loss_name(r.reason));
        rep.log.push_back(std::move(log));
        prev = r.board_after;
    });
    rep.goal_met = rep.outcome.meets(inst.goal);
    return rep;
}

void AuditReport::set(const std::string& key, const std::string& value) {
    for (auto& e : entries)
        if (e.first == key) {
            e.second = value;
            return;
        }
    entries.emplace_back(key, value);
}

void AuditReport::check(const std::string& name, bool ok) {
    set("check." + name, ok ? "pass" : "FAIL");
    if (!ok) pass = false;
}

std::string AuditReport::text() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries) os << k << " = " << v << "\n";
    os << "audit = " << (pass ? "pass" : "FAIL") << "\n";
    return os.str();
}

AuditReport area_audit(const TetrisInstance& inst, const Landmarks& landmarks,
                       const std::vector<std::pair<std::string, bool>>& identities) {
    AuditReport a;
    const Board& b = inst.board;
    long area = piece_area(inst.pieces);
    long empty = b.count_empty();
    a.set("width", b.width());
    a.set("height", b.height());
    a.set("goal", goal_name(inst.goal));
    a.set("pieces", static_cast<long>(inst.pieces.size()));
    a.set("piece_area", area);
    a.set("empty_cells", empty);
    for (const Landmark& lm : landmarks) a.set("empty." + lm.name, count_empty(b, lm.cells));
    if (inst.goal == Goal::Clear)
        a.check("clear_area_bound", area >= empty && (area - empty) % b.width() == 0);
    for (const auto& [name, ok] : identities) a.check(name, ok);
    return a;
}

}  // namespace tetris
