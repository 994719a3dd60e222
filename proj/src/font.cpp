#include "tetris/font.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "tetris/engine.hpp"
#include "tetris/error.hpp"
#include "tetris/io.hpp"

namespace tetris {

namespace {

const char* kind_color(char k) {
    switch (k) {
        case 'O': return "#f0d000";
        case 'I': return "#00c8e0";
        case 'S': return "#30c030";
        case 'Z': return "#e03030";
        case 'L': return "#f09000";
        case 'J': return "#3050e0";
        case 'T': return "#a040d0";
        default: return "#808080";
    }
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int parse_int(const std::string& s, int line) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::Parse, "line " + std::to_string(line) + ": bad integer '" + s + "'", line);
    }
}

// Value of "key=value".
std::string field(const std::string& tok, const std::string& key, int line) {
    if (tok.rfind(key + "=", 0) != 0)
        throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected " + key + "=", line);
    return tok.substr(key.size() + 1);
}

std::vector<Cell> sorted(std::vector<Cell> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// One placed piece in a render.
struct Piece {
    char kind;
    std::vector<Cell> cells;
};

struct Layout {
    int width = 0;
    int height = 0;
    std::vector<Piece> pieces;
    std::vector<std::pair<const Glyph*, int>> glyphs;  // glyph, x offset
};

Layout layout(const Font& f, const std::string& text, RenderMode mode, int lift) {
    Layout out;
    const int rise = mode == RenderMode::Puzzle ? 6 * lift : 0;
    out.height = kGlyphRows + rise;
    int x = 0;
    bool first = true;
    for (char raw : text) {
        if (!first) x += f.spacing;
        first = false;
        if (raw == ' ') {
            x += 3;
            continue;
        }
        char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
        auto it = f.glyphs.find(ch);
        if (it == f.glyphs.end()) throw Error(Errc::UnknownChar, std::string("no glyph for '") + raw + "'");
        const Glyph& g = it->second;
        out.glyphs.push_back({&g, x});
        for (size_t j = 0; j < g.drops.size(); ++j) {
            char k = tag_char(g.drops[j].kind);
            int up = mode == RenderMode::Puzzle ? (6 - static_cast<int>(j)) * lift : 0;
            Piece p{k, {}};
            for (int r = 0; r < kGlyphRows; ++r)
                for (int c = 0; c < g.width; ++c)
                    if (g.target[r][c] == k) p.cells.push_back({r + rise - up, x + c});
            out.pieces.push_back(std::move(p));
        }
        x += g.width;
    }
    out.width = x;
    return out;
}

std::vector<std::string> grid_of(const Layout& l) {
    std::vector<std::string> grid(l.height, std::string(l.width, '.'));
    for (const auto& p : l.pieces)
        for (const auto& c : p.cells) {
            if (grid[c.row][c.col] != '.') throw Error(Errc::InvalidGlyph, "puzzle pieces overlap; raise the lift");
            grid[c.row][c.col] = p.kind;
        }
    return grid;
}

std::string ascii(const std::vector<std::string>& grid) {
    std::string s;
    for (const auto& row : grid) s += row + "\n";
    return s;
}

}  // namespace

GlyphReport validate_glyph(const Glyph& g) {
    GlyphReport rep;
    auto fail = [&](const std::string& why) {
        rep.pass = false;
        rep.problems.push_back(why);
    };
    if (g.drops.size() != 7) fail("7 pieces required");
    std::set<Tag> seen;
    for (const auto& d : g.drops) {
        if (d.kind == Tag::Custom) fail("not a tetromino");
        if (!seen.insert(d.kind).second) fail(std::string("duplicate kind ") + tag_char(d.kind));
    }
    if (static_cast<int>(g.target.size()) != kGlyphRows) fail("target must have 8 rows");
    for (size_t r = 0; r < g.target.size(); ++r) {
        const auto& row = g.target[r];
        if (static_cast<int>(row.size()) != g.width) {
            fail("target row " + std::to_string(r + 1) + " has the wrong width");
            continue;
        }
        if (g.width > 0 && row.find('.') == std::string::npos) fail("full row " + std::to_string(r + 1));
        for (char c : row) {
            Tag t;
            if (c != '.' && (!parse_tag(c, t) || t == Tag::Custom)) fail(std::string("bad target cell '") + c + "'");
        }
    }
    if (!rep.pass) return rep;

    Board b(g.width, kGlyphRows);
    int cells = 0;
    for (const auto& row : g.target) cells += static_cast<int>(std::count_if(row.begin(), row.end(), [](char c) { return c != '.'; }));
    if (cells != 28) fail("target has " + std::to_string(cells) + " cells, 28 required");

    for (size_t j = 0; j < g.drops.size() && rep.pass; ++j) {
        const auto& d = g.drops[j];
        std::string step = " at step " + std::to_string(j + 1);
        auto kind = PieceKind::named(d.kind);
        int rot = 0;
        try {
            rot = canonical_rot(kind, d.rot);
        } catch (const Error&) {
            fail("bad rotation" + step);
            break;
        }
        auto row = drop_row(b, kind, rot, d.col);
        if (!row) {
            fail("does not fit" + step);
            break;
        }
        if (*row < 0) {
            fail("taller than 8 rows" + step);
            break;
        }
        auto got = sorted(placement_cells(kind, Placement{rot, d.col, *row}));
        std::vector<Cell> want;
        char k = tag_char(d.kind);
        for (int r = 0; r < kGlyphRows; ++r)
            for (int c = 0; c < g.width; ++c)
                if (g.target[r][c] == k) want.push_back({r, c});
        if (got != want) {
            bool floats = want.size() == got.size() && !want.empty();
            int dr = floats ? want[0].row - got[0].row : 0;
            for (size_t i = 0; i < want.size() && floats; ++i)
                floats = want[i].col == got[i].col && want[i].row - got[i].row == dr;
            fail((floats && dr < 0 ? "unsupported" : "replay mismatch") + step);
            break;
        }
        for (const auto& c : got) b.set(c.row, c.col);
    }
    return rep;
}

Font read_font(std::istream& in) {
    Font f;
    std::string raw;
    int line = 0;
    auto next = [&](std::string& out) {
        while (std::getline(in, raw)) {
            ++line;
            out = trim(raw);
            if (!out.empty() && out[0] != '#') return true;
        }
        return false;
    };
    auto err = [&](const std::string& why) -> Error {
        return Error(Errc::Parse, "line " + std::to_string(line) + ": " + why, line);
    };
    std::string s;
    if (!next(s) || s != "FONT v1") throw err("expected 'FONT v1'");
    while (next(s)) {
        auto tok = split_ws(s);
        if (tok[0] == "spacing" && tok.size() == 2) {
            f.spacing = parse_int(tok[1], line);
            if (f.spacing < 0) throw err("negative spacing");
            continue;
        }
        if (tok.size() != 4 || tok[0] != "glyph" || tok[1].size() != 1 || tok[2] != "width")
            throw err("expected 'glyph <letter> width <w>'");
        Glyph g;
        g.letter = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[1][0])));
        g.width = parse_int(tok[3], line);
        if (f.glyphs.count(g.letter)) throw err(std::string("duplicate glyph ") + g.letter);
        if (!next(s) || s != "target") throw err("expected 'target'");
        // Target lines may be all dots, so they are read verbatim.
        for (int r = 0; r < kGlyphRows; ++r) {
            if (!std::getline(in, raw)) throw err("truncated target");
            ++line;
            g.target.push_back(trim(raw));
        }
        if (!next(s) || s != "drops") throw err("expected 'drops'");
        while (true) {
            if (!next(s)) throw err("missing 'end'");
            if (s == "end") break;
            auto dt = split_ws(s);
            Tag t;
            if (dt.size() != 3 || dt[0].size() != 1 || !parse_tag(dt[0][0], t) || t == Tag::Custom)
                throw err("expected '<kind> rot=<deg> col=<int>'");
            g.drops.push_back({t, parse_int(field(dt[1], "rot", line), line), parse_int(field(dt[2], "col", line), line)});
        }
        auto rep = validate_glyph(g);
        if (!rep.pass)
            throw Error(Errc::InvalidGlyph, std::string("glyph ") + g.letter + ": " + rep.problems.front());
        f.glyphs[g.letter] = std::move(g);
    }
    return f;
}

Font load_font(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Parse, "cannot open " + path, 0);
    return read_font(in);
}

void write_font(std::ostream& out, const Font& f) {
    out << "FONT v1\nspacing " << f.spacing << "\n";
    for (const auto& [ch, g] : f.glyphs) {
        out << "glyph " << ch << " width " << g.width << "\ntarget\n";
        for (const auto& row : g.target) out << row << "\n";
        out << "drops\n";
        for (const auto& d : g.drops) out << tag_char(d.kind) << " rot=" << d.rot << " col=" << d.col << "\n";
        out << "end\n";
    }
}

std::string render_text(const Font& f, const std::string& text, RenderMode mode, RenderFormat format, int lift) {
    if (lift < 1) throw Error(Errc::Parse, "lift must be positive", 0);
    auto l = layout(f, text, mode, lift);
    auto grid = grid_of(l);
    if (format == RenderFormat::Ascii) return ascii(grid);

    const int cell = 20;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << l.width * cell << "\" height=\"" << l.height * cell
       << "\" viewBox=\"0 0 " << l.width * cell << " " << l.height * cell << "\">\n";
    for (int r = 0; r < l.height; ++r)
        for (int c = 0; c < l.width; ++c) {
            char k = grid[r][c];
            if (k == '.') continue;
            os << "<rect x=\"" << c * cell << "\" y=\"" << r * cell << "\" width=\"" << cell << "\" height=\"" << cell
               << "\" fill=\"" << kind_color(k) << "\" stroke=\"#202020\" stroke-width=\"1\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

std::string settle_puzzle(const Font& f, const std::string& text, const std::string& puzzle_ascii) {
    std::vector<std::string> rows;
    std::istringstream in(puzzle_ascii);
    for (std::string s; std::getline(in, s);) rows.push_back(s);
    auto l = layout(f, text, RenderMode::Solved, 1);
    Board b(l.width, kGlyphRows);
    std::vector<std::string> out(kGlyphRows, std::string(l.width, '.'));
    for (const auto& [g, x] : l.glyphs) {
        for (const auto& d : g->drops) {
            char k = tag_char(d.kind);
            std::vector<Cell> cells;
            for (int r = 0; r < static_cast<int>(rows.size()); ++r)
                for (int c = x; c < x + g->width && c < static_cast<int>(rows[r].size()); ++c)
                    if (rows[r][c] == k) cells.push_back({r, c});
            if (cells.size() != 4) throw Error(Errc::Parse, std::string("puzzle has no whole ") + k + " piece", 0);
            int col = cells[0].col;
            for (const auto& c : cells) col = std::min(col, c.col);
            auto shape = normalize(cells);
            auto row = drop_row(b, shape, col);
            if (!row || *row < 0) throw Error(Errc::Parse, std::string("puzzle piece ") + k + " does not land", 0);
            for (const auto& c : shape.cells()) {
                b.set(*row + c.row, col + c.col);
                out[*row + c.row][col + c.col] = k;
            }
        }
    }
    return ascii(out);
}

}  // namespace tetris
