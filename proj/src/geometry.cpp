#include "tetris/geometry.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <set>

#include "tetris/error.hpp"

namespace tetris {

const char* errc_name(Errc e) {
    switch (e) {
        case Errc::Empty: return "EMPTY";
        case Errc::Disconnected: return "DISCONNECTED";
        case Errc::IllegalPlacement: return "ILLEGAL_PLACEMENT";
        case Errc::LengthMismatch: return "LENGTH_MISMATCH";
        case Errc::Parse: return "PARSE_ERROR";
        case Errc::InvalidP3: return "INVALID_P3";
        case Errc::Degenerate: return "DEGENERATE";
        case Errc::BadPartition: return "BAD_PARTITION";
        case Errc::BadRows: return "BAD_ROWS";
        case Errc::Unreachable: return "UNREACHABLE";
        case Errc::NotTwoColumns: return "NOT_TWO_COLUMNS";
        case Errc::InvalidGlyph: return "INVALID_GLYPH";
        case Errc::UnknownChar: return "UNKNOWN_CHAR";
    }
    return "?";
}

bool Polyomino::contains(int r, int c) const {
    return std::binary_search(cells_.begin(), cells_.end(), Cell{r, c});
}

Polyomino Polyomino::rotated_cw() const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const Cell& x : cells_) out.push_back({x.col, h_ - 1 - x.row});
    return normalize(std::move(out));
}

std::string Polyomino::bitstring() const {
    std::string s;
    for (int r = 0; r < h_; ++r) {
        if (r) s += '/';
        for (int c = 0; c < w_; ++c) s += contains(r, c) ? '1' : '0';
    }
    return s;
}

Polyomino normalize(std::vector<Cell> cells) {
    if (cells.empty()) throw Error(Errc::Empty, "polyomino has no cells");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    int r0 = cells[0].row, c0 = cells[0].col, r1 = r0, c1 = c0;
    for (const Cell& x : cells) {
        r0 = std::min(r0, x.row);
        c0 = std::min(c0, x.col);
        r1 = std::max(r1, x.row);
        c1 = std::max(c1, x.col);
    }
    for (Cell& x : cells) {
        x.row -= r0;
        x.col -= c0;
    }
    std::sort(cells.begin(), cells.end());

    std::set<Cell> todo(cells.begin(), cells.end());
    std::queue<Cell> q;
    q.push(cells[0]);
    todo.erase(cells[0]);
    while (!q.empty()) {
        Cell x = q.front();
        q.pop();
        const Cell nb[4] = {{x.row - 1, x.col}, {x.row + 1, x.col}, {x.row, x.col - 1}, {x.row, x.col + 1}};
        for (const Cell& y : nb) {
            auto it = todo.find(y);
            if (it != todo.end()) {
                todo.erase(it);
                q.push(y);
            }
        }
    }
    if (!todo.empty()) throw Error(Errc::Disconnected, "polyomino cells are not edge-connected");

    Polyomino p;
    p.cells_ = std::move(cells);
    p.h_ = r1 - r0 + 1;
    p.w_ = c1 - c0 + 1;
    return p;
}

Polyomino rect(int h, int w) {
    std::vector<Cell> cells;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) cells.push_back({r, c});
    return normalize(std::move(cells));
}

namespace {

Polyomino from_rows(std::initializer_list<const char*> rows) {
    std::vector<Cell> cells;
    int r = 0;
    for (const char* row : rows) {
        for (int c = 0; row[c]; ++c)
            if (row[c] == '#') cells.push_back({r, c});
        ++r;
    }
    return normalize(std::move(cells));
}

}  // namespace

PieceKind PieceKind::named(Tag t) {
    PieceKind k;
    k.tag = t;
    switch (t) {
        case Tag::O: k.shape = from_rows({"##", "##"}); break;
        case Tag::I: k.shape = from_rows({"####"}); break;
        case Tag::S: k.shape = from_rows({".##", "##."}); break;
        case Tag::Z: k.shape = from_rows({"##.", ".##"}); break;
        case Tag::L: k.shape = from_rows({"..#", "###"}); break;
        case Tag::J: k.shape = from_rows({"#..", "###"}); break;
        case Tag::T: k.shape = from_rows({".#.", "###"}); break;
        case Tag::Custom: throw Error(Errc::Parse, "custom kind needs a shape");
    }
    return k;
}

PieceKind PieceKind::custom(const Polyomino& p) {
    PieceKind k;
    k.tag = Tag::Custom;
    k.shape = p;
    return k;
}

PieceKind PieceKind::bar(int len, bool vertical) {
    return custom(vertical ? rect(len, 1) : rect(1, len));
}

bool parse_tag(char ch, Tag& out) {
    switch (ch) {
        case 'O': out = Tag::O; return true;
        case 'I': out = Tag::I; return true;
        case 'S': out = Tag::S; return true;
        case 'Z': out = Tag::Z; return true;
        case 'L': out = Tag::L; return true;
        case 'J': out = Tag::J; return true;
        case 'T': out = Tag::T; return true;
        default: return false;
    }
}

char tag_char(Tag t) {
    static const char kChars[] = "OISZLJT?";
    return kChars[static_cast<int>(t)];
}

std::string PieceKind::name() const {
    if (tag != Tag::Custom) return std::string(1, tag_char(tag));
    return "poly:" + std::to_string(shape.height()) + "x" + std::to_string(shape.width()) + ":" +
           shape.bitstring();
}

PieceKind parse_kind(const std::string& s) {
    Tag t;
    if (s.size() == 1 && parse_tag(s[0], t)) return PieceKind::named(t);
    if (s.rfind("poly:", 0) != 0) throw Error(Errc::Parse, "unknown piece '" + s + "'");
    size_t x = s.find('x', 5), colon = s.find(':', 5);
    if (x == std::string::npos || colon == std::string::npos || x > colon)
        throw Error(Errc::Parse, "bad poly header '" + s + "'");
    int h = 0, w = 0;
    try {
        h = std::stoi(s.substr(5, x - 5));
        w = std::stoi(s.substr(x + 1, colon - x - 1));
    } catch (const std::exception&) {
        throw Error(Errc::Parse, "bad poly dimensions '" + s + "'");
    }
    std::string bits = s.substr(colon + 1);
    if (h <= 0 || w <= 0 || bits.size() != static_cast<size_t>(h * w + h - 1))
        throw Error(Errc::Parse, "poly bitstring does not match " + std::to_string(h) + "x" + std::to_string(w));
    std::vector<Cell> cells;
    for (int r = 0; r < h; ++r) {
        if (r && bits[r * (w + 1) - 1] != '/') throw Error(Errc::Parse, "poly rows must be joined by '/'");
        for (int c = 0; c < w; ++c) {
            char ch = bits[r * (w + 1) + c];
            if (ch == '1') cells.push_back({r, c});
            else if (ch != '0') throw Error(Errc::Parse, "poly bits must be 0 or 1");
        }
    }
    Polyomino p;
    try {
        p = normalize(cells);
    } catch (const Error& e) {
        throw Error(Errc::Parse, std::string("poly shape: ") + e.what());
    }
    if (p.height() != h || p.width() != w) throw Error(Errc::Parse, "poly has empty border rows or columns");
    return PieceKind::custom(p);
}

const std::vector<Polyomino>& orientations(const PieceKind& k) {
    static std::mutex mu;
    static std::map<Polyomino, std::vector<Polyomino>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k.shape);
    if (it != cache.end()) return it->second;
    std::vector<Polyomino> out{k.shape};
    for (int j = 1; j < 4; ++j) {
        Polyomino next = out.back().rotated_cw();
        if (next == out.front()) break;
        out.push_back(next);
    }
    return cache.emplace(k.shape, std::move(out)).first->second;
}

}  // namespace tetris
