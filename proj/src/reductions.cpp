#include "tetris/reductions.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tetris/error.hpp"
#include "tetris/io.hpp"

namespace tetris {

std::string P3Report::text() const {
    std::ostringstream os;
    os << "s = " << s << "\n";
    os << "length = " << (length_ok ? "ok" : "bad") << "\n";
    os << "sum = " << (sum_ok ? "ok" : "bad") << "\n";
    os << "window = " << (window_ok ? "ok" : "bad") << "\n";
    return os.str();
}

P3Report check_3partition(const ThreePartition& p) {
    P3Report r;
    r.s = p.s();
    r.length_ok = !p.a.empty() && p.a.size() % 3 == 0;
    long sum = std::accumulate(p.a.begin(), p.a.end(), 0L);
    r.sum_ok = r.length_ok && sum == static_cast<long>(r.s) * p.T;
    r.window_ok = std::all_of(p.a.begin(), p.a.end(), [&](int x) { return 4 * x > p.T && 2 * x < p.T; });
    return r;
}

std::optional<Triples> solve_3partition_bruteforce(const ThreePartition& p) {
    const int n = static_cast<int>(p.a.size());
    if (n % 3 != 0) return std::nullopt;
    std::vector<bool> used(static_cast<size_t>(n), false);
    Triples out;
    std::function<bool()> go = [&]() -> bool {
        int i = 0;
        while (i < n && used[static_cast<size_t>(i)]) ++i;
        if (i == n) return true;
        used[static_cast<size_t>(i)] = true;
        for (int j = i + 1; j < n; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            used[static_cast<size_t>(j)] = true;
            for (int k = j + 1; k < n; ++k) {
                if (used[static_cast<size_t>(k)] || p.a[i] + p.a[j] + p.a[k] != p.T) continue;
                used[static_cast<size_t>(k)] = true;
                out.push_back({i, j, k});
                if (go()) return true;
                out.pop_back();
                used[static_cast<size_t>(k)] = false;
            }
            used[static_cast<size_t>(j)] = false;
        }
        used[static_cast<size_t>(i)] = false;
        return false;
    };
    if (go()) return out;
    return std::nullopt;
}

void check_partition(const ThreePartition& p, const Triples& t) {
    std::vector<int> seen(p.a.size(), 0);
    if (t.size() * 3 != p.a.size()) throw Error(Errc::BadPartition, "partition has wrong number of triples");
    for (const auto& tr : t) {
        long sum = 0;
        for (int i : tr) {
            if (i < 0 || i >= static_cast<int>(p.a.size())) throw Error(Errc::BadPartition, "index out of range");
            if (seen[static_cast<size_t>(i)]++) throw Error(Errc::BadPartition, "index used twice");
            sum += p.a[static_cast<size_t>(i)];
        }
        if (sum != p.T) throw Error(Errc::BadPartition, "triple does not sum to T");
    }
}

ThreePartition read_p3(std::istream& in) {
    ThreePartition p;
    std::string line;
    int lineno = 0, stage = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        auto number = [&](const std::string& s) {
            try {
                size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size() || v < 0) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw Error(Errc::Parse, "bad integer '" + s + "'", lineno);
            }
        };
        if (stage == 0) {
            if (tok.size() != 2 || tok[0] != "P3" || tok[1] != "v1") throw Error(Errc::Parse, "expected 'P3 v1'", lineno);
        } else if (stage == 1) {
            if (tok.size() != 2 || tok[0] != "T") throw Error(Errc::Parse, "expected 'T <int>'", lineno);
            p.T = number(tok[1]);
        } else if (stage == 2) {
            if (tok[0] != "a") throw Error(Errc::Parse, "expected 'a <ints>'", lineno);
            for (size_t i = 1; i < tok.size(); ++i) p.a.push_back(number(tok[i]));
        } else {
            throw Error(Errc::Parse, "trailing content", lineno);
        }
        ++stage;
    }
    if (stage < 3) throw Error(Errc::Parse, "truncated P3 file", lineno);
    return p;
}

ThreePartition read_p3_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Parse, "cannot open " + path);
    return read_p3(in);
}

void write_p3(std::ostream& out, const ThreePartition& p) {
    out << "P3 v1\nT " << p.T << "\na";
    for (int x : p.a) out << ' ' << x;
    out << "\n";
}

namespace {

PieceKind named(Tag t) { return PieceKind::named(t); }

// Rejects bad instances; relaxed ones only need the sum and get a warning.
std::vector<std::string> validate(const ThreePartition& p, bool strict) {
    P3Report r = check_3partition(p);
    if (p.a.empty()) throw Error(Errc::Degenerate, "s = 0");
    if (!r.length_ok) throw Error(Errc::InvalidP3, "len(a) is not a multiple of 3");
    if (!r.sum_ok) throw Error(Errc::InvalidP3, "sum of a is not sT");
    for (int x : p.a)
        if (x <= 0) throw Error(Errc::InvalidP3, "a_i must be positive");
    std::vector<std::string> w;
    if (!r.window_ok) {
        if (strict) throw Error(Errc::InvalidP3, "some a_i outside T/4 < a_i < T/2");
        w.push_back("relaxed: some a_i outside T/4 < a_i < T/2");
    }
    return w;
}

// Placement of `kind` covering exactly `cells`.
Move move_for(const PieceKind& kind, const std::vector<Cell>& cells) {
    Polyomino shape = normalize(cells);
    int r0 = cells[0].row, c0 = cells[0].col;
    for (const Cell& c : cells) {
        r0 = std::min(r0, c.row);
        c0 = std::min(c0, c.col);
    }
    auto oris = orientations(kind);
    for (size_t j = 0; j < oris.size(); ++j)
        if (oris[j] == shape) return Move{static_cast<int>(j) * 90, c0, r0};
    throw Error(Errc::IllegalPlacement, kind.name() + " cannot cover " + shape.bitstring());
}

std::vector<int> bucket_of(const ThreePartition& p, const Triples& t) {
    std::vector<int> b(p.a.size(), -1);
    for (size_t j = 0; j < t.size(); ++j)
        for (int i : t[j]) b[static_cast<size_t>(i)] = static_cast<int>(j);
    return b;
}

void carve(Board& b, const std::vector<Cell>& cells) {
    for (const Cell& c : cells) b.set(c.row, c.col, false);
}

std::vector<Cell> column(int col, int r0, int r1) {
    std::vector<Cell> v;
    for (int r = r0; r <= r1; ++r) v.push_back({r, col});
    return v;
}

void append(std::vector<Cell>& a, const std::vector<Cell>& b) { a.insert(a.end(), b.begin(), b.end()); }

// 8-column geometry. Row 0 is the horizon row; buckets hang from it on the
// left, the corridor runs down columns 6-7.
struct Layout8 {
    int s, T, R;
    int top(int j) const { return 2 + j * (5 * T + 22); }
    int notch(int j, int k) const { return top(j) + 5 + 5 * k; }

    std::vector<Cell> bucket(int j) const {
        int t = top(j);
        std::vector<Cell> v = column(2, t + 1, t + 5 * T + 17);
        append(v, column(3, t + 1, t + 5 * T + 19));
        append(v, column(4, t, t + 2));
        for (int k = 0; k <= T + 2; ++k) append(v, column(4, notch(j, k), notch(j, k) + 1));
        append(v, column(5, t, t + 2));
        return v;
    }
    std::vector<Cell> alley() const { return column(0, 1, R - 1); }
    std::vector<Cell> tlock() const { return {{0, 1}, {0, 2}, {0, 3}, {1, 2}}; }
    std::vector<Cell> corridor() const {
        std::vector<Cell> v = {{0, 5}, {0, 6}, {0, 7}};
        append(v, column(6, 1, R - 3));
        append(v, column(7, 1, R - 3));
        v.push_back({R - 4, 5});
        return v;
    }
};

}  // namespace

ReductionOutput gen_8col(const ThreePartition& p, int extra_cols, bool strict) {
    ReductionOutput out;
    out.warnings = validate(p, strict);
    if (extra_cols < 0) throw Error(Errc::InvalidP3, "extra_cols must be >= 0");
    const long s = p.s(), T = p.T;
    Layout8 g{p.s(), p.T, static_cast<int>(12 * s * T + 48 * s + 17)};
    Board b(8 + extra_cols, g.R);
    for (int r = 0; r < g.R; ++r)
        for (int c = 0; c < b.width(); ++c) b.set(r, c);
    carve(b, g.alley());
    carve(b, g.tlock());
    carve(b, g.corridor());
    for (int j = 0; j < g.s; ++j) carve(b, g.bucket(j));

    std::vector<PieceKind> seq;
    for (int a : p.a) {
        seq.push_back(named(Tag::L));
        for (int u = 0; u < a; ++u) {
            seq.push_back(named(Tag::O));
            seq.push_back(named(Tag::J));
            seq.push_back(named(Tag::O));
        }
        seq.push_back(named(Tag::O));
        seq.push_back(named(Tag::I));
    }
    for (int j = 0; j < g.s; ++j) {
        seq.push_back(named(Tag::L));
        seq.push_back(named(Tag::J));
        seq.push_back(named(Tag::L));
    }
    seq.push_back(named(Tag::Z));
    for (long k = 0; k < 6 * s * T + 24 * s + 6; ++k) seq.push_back(named(Tag::S));
    seq.push_back(named(Tag::J));
    const size_t before_t = seq.size();
    seq.push_back(named(Tag::T));
    for (long k = 0; k < 3 * s * T + 12 * s + 4; ++k) seq.push_back(named(Tag::I));

    out.instance = TetrisInstance{b, seq, Goal::Clear};
    out.meta = {{"alley", g.alley()}, {"t-lock", g.tlock()}, {"corridor", g.corridor()}};
    for (int j = 0; j < g.s; ++j) out.meta.push_back({"bucket" + std::to_string(j), g.bucket(j)});

    const long pieces = static_cast<long>(seq.size());
    const long empty = b.count_empty();
    long outside = empty - count_empty(b, g.alley()) - count_empty(b, g.tlock());
    out.audit = area_audit(out.instance, out.meta,
                           {{"rows", g.R == 12 * s * T + 48 * s + 17},
                            {"pieces", pieces == 12 * s * T + 48 * s + 13},
                            {"empty_is_4x_pieces", empty == 4 * pieces},
                            {"before_t", outside == 4 * static_cast<long>(before_t) &&
                                             outside == 36 * s * T + 144 * s + 32}});
    out.audit.set("horizon_row", 0L);
    out.audit.set("pieces_before_t", static_cast<long>(before_t));
    out.audit.set("empty_outside_alley_tlock", outside);
    return out;
}

Trajectory intended_8col(const ThreePartition& p, const Triples& t, int extra_cols) {
    check_partition(p, t);
    (void)extra_cols;
    const int s = p.s(), T = p.T;
    Layout8 g{s, T, 12 * s * T + 48 * s + 17};
    const PieceKind O = named(Tag::O), I = named(Tag::I), S = named(Tag::S), Z = named(Tag::Z),
                    L = named(Tag::L), J = named(Tag::J), Tp = named(Tag::T);
    Trajectory tr;
    std::vector<int> cursor(static_cast<size_t>(s), T + 2);
    auto owner = bucket_of(p, t);
    for (size_t i = 0; i < p.a.size(); ++i) {
        int j = owner[i];
        int& k = cursor[static_cast<size_t>(j)];
        int n = g.notch(j, k);
        tr.push_back(move_for(L, {{n + 2, 2}, {n + 2, 3}, {n + 3, 3}, {n + 4, 3}}));
        for (int u = 0; u < p.a[i]; ++u) {
            n = g.notch(j, k);
            tr.push_back(move_for(O, {{n, 3}, {n, 4}, {n + 1, 3}, {n + 1, 4}}));
            tr.push_back(move_for(J, {{n - 1, 2}, {n - 1, 3}, {n, 2}, {n + 1, 2}}));
            tr.push_back(move_for(O, {{n - 3, 2}, {n - 3, 3}, {n - 2, 2}, {n - 2, 3}}));
            --k;
        }
        n = g.notch(j, k);
        tr.push_back(move_for(O, {{n, 3}, {n, 4}, {n + 1, 3}, {n + 1, 4}}));
        tr.push_back(move_for(I, column(2, n - 2, n + 1)));
        --k;
    }
    for (int j = 0; j < s; ++j) {
        int q = g.top(j);
        tr.push_back(move_for(L, {{q + 2, 2}, {q + 2, 3}, {q + 3, 3}, {q + 4, 3}}));
        tr.push_back(move_for(J, {{q + 1, 2}, {q + 1, 3}, {q + 1, 4}, {q + 2, 4}}));
        tr.push_back(move_for(L, {{q, 4}, {q, 5}, {q + 1, 5}, {q + 2, 5}}));
    }
    const int R = g.R;
    tr.push_back(move_for(Z, {{R - 4, 5}, {R - 4, 6}, {R - 3, 6}, {R - 3, 7}}));
    for (int a = R - 6; a >= 1; a -= 2) tr.push_back(move_for(S, {{a, 6}, {a + 1, 6}, {a + 1, 7}, {a + 2, 7}}));
    tr.push_back(move_for(J, {{0, 5}, {0, 6}, {0, 7}, {1, 7}}));
    tr.push_back(move_for(Tp, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}));
    const int rest = 3 * s * T + 12 * s + 4;
    for (int k = 0; k < rest; ++k) tr.push_back(Move{90, 0, std::nullopt});
    return tr;
}

namespace {

// 4-row geometry. Each bucket is a 2-tall shaft in rows 1-2 with notch pairs
// in row 3; the mouth is a 4-wide gap in row 0 at its right end.
struct Layout4 {
    int s, T, r;
    int N() const { return 3 * T; }
    int width_bucket() const { return 5 * N() + 9; }
    int x0(int j) const { return 6 + j * (width_bucket() + 2); }
    int notch(int j, int u) const { return x0(j) + 3 + 5 * u; }
    int filler() const { return x0(s) - 2; }
    int width() const { return filler() + 4 * (r - 4); }

    std::vector<Cell> bucket(int j) const {
        const int a = x0(j), p = notch(j, N()) - 1;
        std::vector<Cell> v;
        for (int c = a + 2; c <= p + 6; ++c) v.push_back({1, c});
        for (int c = a; c <= p + 6; ++c) v.push_back({2, c});
        for (int u = 0; u < N(); ++u) {
            v.push_back({3, notch(j, u)});
            v.push_back({3, notch(j, u) + 1});
        }
        for (int c : {p + 1, p + 2, p + 5, p + 6}) v.push_back({3, c});
        for (int c = p + 3; c <= p + 6; ++c) v.push_back({0, c});
        return v;
    }
    std::vector<Cell> tlock() const { return {{0, 0}, {0, 1}, {0, 2}, {1, 1}}; }
    std::vector<Cell> olock() const { return {{2, 3}, {2, 4}, {3, 3}, {3, 4}}; }
    std::vector<Cell> filler_cells() const {
        std::vector<Cell> v;
        for (int i = 0; i < r - 4; ++i)
            for (int c = 0; c < 4; ++c) v.push_back({4 + i, filler() + 4 * i + c});
        return v;
    }
};

}  // namespace

ReductionOutput gen_4row(const ThreePartition& p, int rows, bool strict) {
    if (rows < 4) throw Error(Errc::BadRows, "need at least 4 rows");
    ReductionOutput out;
    out.warnings = validate(p, strict);
    const long s = p.s(), T = p.T;
    Layout4 g{p.s(), p.T, rows};
    Board b(g.width(), rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < b.width(); ++c) b.set(r, c);
    carve(b, g.tlock());
    carve(b, g.olock());
    carve(b, g.filler_cells());
    for (int j = 0; j < g.s; ++j) carve(b, g.bucket(j));

    std::vector<PieceKind> seq;
    for (int a : p.a) {
        seq.push_back(named(Tag::L));
        for (int u = 0; u < 3 * a - 1; ++u) {
            seq.push_back(named(Tag::O));
            seq.push_back(named(Tag::J));
            seq.push_back(named(Tag::O));
        }
        seq.push_back(named(Tag::O));
        seq.push_back(named(Tag::I));
    }
    for (int j = 0; j < g.s; ++j)
        for (Tag t : {Tag::L, Tag::O, Tag::J, Tag::O, Tag::L, Tag::O}) seq.push_back(named(t));
    seq.push_back(named(Tag::T));
    const long through_t = static_cast<long>(seq.size());
    seq.push_back(named(Tag::O));
    for (int k = 0; k < rows - 4; ++k) seq.push_back(named(Tag::I));

    out.instance = TetrisInstance{b, seq, Goal::Clear};
    out.meta = {{"t-lock", g.tlock()}, {"o-lock", g.olock()}};
    for (int j = 0; j < g.s; ++j) out.meta.push_back({"bucket" + std::to_string(j), g.bucket(j)});
    if (rows > 4) out.meta.push_back({"filler", g.filler_cells()});

    long top_empty = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < b.width(); ++c) top_empty += !b.at(r, c);
    top_empty -= count_empty(b, g.olock());
    long trailing = 0;
    for (size_t k = seq.size(); k-- > 0 && seq[k].tag == Tag::I;) ++trailing;
    const long pieces = static_cast<long>(seq.size());
    out.audit = area_audit(out.instance, out.meta,
                           {{"pieces", pieces == 9 * s * T + 6 * s + 2 + (rows - 4)},
                            {"area_through_t", 4 * through_t == 4 * (9 * s * T + 6 * s + 1)},
                            {"top_rows_empty", top_empty == s * (36 * T + 24) + 4},
                            {"trailing_i", trailing == rows - 4}});
    out.audit.set("horizon_row", 0L);
    out.audit.set("area_through_t", 4 * through_t);
    out.audit.set("empty_top_rows_outside_o_lock", top_empty);
    out.audit.set("trailing_i", trailing);
    return out;
}

Trajectory intended_4row(const ThreePartition& p, const Triples& t, int rows) {
    if (rows < 4) throw Error(Errc::BadRows, "need at least 4 rows");
    check_partition(p, t);
    Layout4 g{p.s(), p.T, rows};
    const PieceKind O = named(Tag::O), I = named(Tag::I), L = named(Tag::L), J = named(Tag::J),
                    Tp = named(Tag::T);
    Trajectory tr;
    std::vector<int> cursor(t.size(), 0);
    auto owner = bucket_of(p, t);
    for (size_t i = 0; i < p.a.size(); ++i) {
        int j = owner[i];
        int& u = cursor[static_cast<size_t>(j)];
        int c = g.notch(j, u);
        tr.push_back(move_for(L, {{1, c - 1}, {2, c - 3}, {2, c - 2}, {2, c - 1}}));
        for (int k = 0; k < 3 * p.a[i] - 1; ++k) {
            c = g.notch(j, u);
            tr.push_back(move_for(O, {{2, c}, {2, c + 1}, {3, c}, {3, c + 1}}));
            tr.push_back(move_for(J, {{1, c}, {1, c + 1}, {1, c + 2}, {2, c + 2}}));
            tr.push_back(move_for(O, {{1, c + 3}, {1, c + 4}, {2, c + 3}, {2, c + 4}}));
            ++u;
        }
        c = g.notch(j, u);
        tr.push_back(move_for(O, {{2, c}, {2, c + 1}, {3, c}, {3, c + 1}}));
        tr.push_back(move_for(I, {{1, c}, {1, c + 1}, {1, c + 2}, {1, c + 3}}));
        ++u;
    }
    for (int j = 0; j < g.s; ++j) {
        const int q = g.notch(j, g.N()) - 1;
        tr.push_back(move_for(L, {{1, q}, {2, q - 2}, {2, q - 1}, {2, q}}));
        tr.push_back(move_for(O, {{2, q + 1}, {2, q + 2}, {3, q + 1}, {3, q + 2}}));
        tr.push_back(move_for(J, {{1, q + 1}, {1, q + 2}, {1, q + 3}, {2, q + 3}}));
        tr.push_back(move_for(O, {{2, q + 5}, {2, q + 6}, {3, q + 5}, {3, q + 6}}));
        tr.push_back(move_for(L, {{0, q + 3}, {0, q + 4}, {1, q + 4}, {2, q + 4}}));
        tr.push_back(move_for(O, {{0, q + 5}, {0, q + 6}, {1, q + 5}, {1, q + 6}}));
    }
    tr.push_back(move_for(Tp, g.tlock()));
    tr.push_back(move_for(O, g.olock()));
    for (int k = 0; k < rows - 4; ++k) tr.push_back(Move{0, g.filler() + 4 * k, std::nullopt});
    return tr;
}

ReductionOutput gen_1row(const ThreePartition& p, bool strict) {
    ReductionOutput out;
    out.warnings = validate(p, strict);
    const int s = p.s(), T = p.T, W = s * (T + 1);
    Board b(W, 1);
    std::vector<Landmark> meta;
    for (int k = 0; k < s; ++k) {
        b.set(0, (T + 1) * k + T);
        std::vector<Cell> gap;
        for (int c = 0; c < T; ++c) gap.push_back({0, (T + 1) * k + c});
        meta.push_back({"bucket" + std::to_string(k), gap});
    }
    std::vector<PieceKind> seq;
    for (int a : p.a) seq.push_back(PieceKind::bar(a, false));
    seq.push_back(PieceKind::bar(W, false));
    out.instance = TetrisInstance{b, seq, Goal::Survive};
    out.meta = meta;
    out.audit = area_audit(out.instance, out.meta, {{"width", W == s * (T + 1)}, {"pieces", seq.size() == 3u * s + 1}});
    return out;
}

Trajectory intended_1row(const ThreePartition& p, const Triples& t) {
    check_partition(p, t);
    const int T = p.T;
    std::vector<int> fill(t.size(), 0);
    auto owner = bucket_of(p, t);
    Trajectory tr;
    for (size_t i = 0; i < p.a.size(); ++i) {
        int j = owner[i];
        tr.push_back(Move{0, (T + 1) * j + fill[static_cast<size_t>(j)], 0});
        fill[static_cast<size_t>(j)] += p.a[i];
    }
    tr.push_back(Move{0, 0, 0});
    return tr;
}

ReductionOutput gen_2row_empty(const ThreePartition& p, bool strict) {
    ReductionOutput out;
    out.warnings = validate(p, strict);
    const int s = p.s(), T = p.T, period = 4 * T + 1, W = s * period + 2;
    std::vector<Cell> comb;
    for (int c = 0; c < W - 1; ++c) {
        comb.push_back({1, c});
        if (c % period == 0) comb.push_back({0, c});
    }
    std::vector<PieceKind> seq{PieceKind::custom(normalize(comb))};
    for (int a : p.a) seq.push_back(PieceKind::bar(4 * a, false));
    seq.push_back(PieceKind::bar(2, true));
    out.instance = TetrisInstance{Board(W, 2), seq, Goal::Survive};
    for (int k = 0; k < s; ++k) {
        std::vector<Cell> gap;
        for (int c = 1; c < period; ++c) gap.push_back({0, k * period + c});
        out.meta.push_back({"bucket" + std::to_string(k), gap});
    }
    out.audit = area_audit(out.instance, out.meta, {{"comb_width", seq[0].shape.width() == W - 1}});
    return out;
}

Trajectory intended_2row_empty(const ThreePartition& p, const Triples& t) {
    check_partition(p, t);
    const int s = p.s(), period = 4 * p.T + 1, W = s * period + 2;
    Trajectory tr{Move{0, 0, 0}};
    std::vector<int> fill(t.size(), 1);
    auto owner = bucket_of(p, t);
    for (size_t i = 0; i < p.a.size(); ++i) {
        int j = owner[i];
        tr.push_back(Move{0, j * period + fill[static_cast<size_t>(j)], 0});
        fill[static_cast<size_t>(j)] += 4 * p.a[i];
    }
    tr.push_back(Move{0, W - 1, 0});
    return tr;
}

namespace {

Board board_3col(int s, int T) {
    const int H = (3 * T + 1) * s;
    Board b(3, H);
    for (int y = 0; y < H; ++y) {
        int r = H - 1 - y;
        if (y % (3 * T + 1) == 0)
            b.set(r, 0);
        else
            b.set(r, 2);
    }
    return b;
}

}  // namespace

ReductionOutput gen_3col_empty(const ThreePartition& p, bool bootstrap, bool strict) {
    ReductionOutput out;
    out.warnings = validate(p, strict);
    const int s = p.s(), T = p.T, H = (3 * T + 1) * s;
    Board target = board_3col(s, T);
    std::vector<PieceKind> seq;
    Board start = target;
    if (bootstrap) {
        seq = gen_bootstrap(target, 3);
        start = bootstrap_board(target, 3);
    }
    const int off = start.height() - H;
    for (int a : p.a) seq.push_back(PieceKind::bar(3 * a, true));
    for (int k = 0; k < s; ++k) seq.push_back(PieceKind::bar(1, true));
    seq.push_back(PieceKind::bar(H, true));
    out.instance = TetrisInstance{start, seq, Goal::Clear};
    for (int k = 0; k < s; ++k) {
        int y0 = k * (3 * T + 1);
        std::vector<Cell> seg;
        for (int y = y0 + 1; y <= y0 + 3 * T; ++y) seg.push_back({off + H - 1 - y, 0});
        out.meta.push_back({"bucket" + std::to_string(k), seg});
    }
    std::vector<Cell> mid;
    for (int r = 0; r < H; ++r) mid.push_back({off + r, 1});
    out.meta.push_back({"corridor", mid});
    if (bootstrap) {
        out.warnings.push_back("replay needs clear_before_loss");
        out.audit = AuditReport{};
        out.audit.set("width", 3L);
        out.audit.set("height", static_cast<long>(start.height()));
        out.audit.set("goal", goal_name(Goal::Clear));
        out.audit.set("pieces", static_cast<long>(seq.size()));
        out.audit.set("bootstrap_pieces", static_cast<long>(seq.size() - p.a.size() - s - 1));
        out.audit.set("piece_area", piece_area(seq));
    } else {
        out.audit = area_audit(out.instance, out.meta, {{"area", piece_area(seq) == target.count_empty()}});
    }
    return out;
}

Trajectory intended_3col_empty(const ThreePartition& p, const Triples& t, bool bootstrap) {
    check_partition(p, t);
    const int s = p.s(), T = p.T, H = (3 * T + 1) * s;
    Trajectory tr;
    int off = 0;
    if (bootstrap) {
        Board target = board_3col(s, T);
        for (size_t k = 0; k < gen_bootstrap(target, 3).size(); ++k) tr.push_back(Move{0, 0, std::nullopt});
        off = bootstrap_board(target, 3).height() - H;
    }
    std::vector<int> fill(t.size(), 1);
    auto owner = bucket_of(p, t);
    for (size_t i = 0; i < p.a.size(); ++i) {
        int j = owner[i];
        int len = 3 * p.a[i];
        int ybot = j * (3 * T + 1) + fill[static_cast<size_t>(j)];
        fill[static_cast<size_t>(j)] += len;
        tr.push_back(Move{0, 0, off + H - 1 - (ybot + len - 1)});
    }
    for (int k = 0; k < s; ++k) tr.push_back(Move{0, 2, off + H - 1 - k * (3 * T + 1)});
    tr.push_back(Move{0, 1, off});
    return tr;
}

std::vector<PieceKind> gen_bootstrap(const Board& target, int c) {
    if (target.width() != c) throw Error(Errc::Unreachable, "target width differs from c");
    const int H = target.height();
    int top = H;  // first non-empty row from the top
    for (int r = 0; r < H; ++r)
        if (!target.row_empty(r)) {
            top = r;
            break;
        }
    for (int r = top; r < H; ++r) {
        if (target.row_full(r)) throw Error(Errc::Unreachable, "row " + std::to_string(r) + " is full");
        if (target.row_empty(r)) throw Error(Errc::Unreachable, "empty row under a filled one");
    }
    // c x c square with one extra cell in column i, above or below.
    auto piece = [c](int i, bool below) {
        std::vector<Cell> cells;
        int sq = below ? 0 : 1;
        for (int r = 0; r < c; ++r)
            for (int k = 0; k < c; ++k) cells.push_back({sq + r, k});
        cells.push_back({below ? c : 0, i});
        return PieceKind::custom(normalize(cells));
    };
    std::vector<PieceKind> seq;
    for (int r = H - 1; r >= top; --r) {
        bool first = true;
        for (int i = 0; i < c; ++i) {
            if (!target.at(r, i)) continue;
            // The first cell of a row can hang below the square only if
            // something holds it up.
            bool supported = r == H - 1 || target.at(r + 1, i);
            seq.push_back(piece(i, !first || supported));
            first = false;
        }
    }
    return seq;
}

Board bootstrap_board(const Board& target, int c) { return Board(c, target.height()); }

}  // namespace tetris
