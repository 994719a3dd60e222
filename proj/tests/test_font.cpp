#include <doctest.h>

#include <sstream>

#include "tetris/error.hpp"
#include "tetris/font.hpp"

using namespace tetris;

namespace {

const Font& shipped() {
    static const Font f = load_font(TETRIS_FONT_PATH);
    return f;
}

Glyph glyph(char c) { return shipped().glyphs.at(c); }

Errc load_error(const std::string& text, std::string* what = nullptr) {
    std::istringstream in(text);
    try {
        read_font(in);
    } catch (const Error& e) {
        if (what) *what = e.what();
        return e.code();
    }
    FAIL("no error");
    return Errc::Empty;
}

std::string font_text(const Glyph& g) {
    Font f;
    f.glyphs[g.letter] = g;
    std::ostringstream os;
    write_font(os, f);
    return os.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// Drops each piece cell by cell with a plain collision loop, in drop order.
std::vector<std::string> fall(const Font& f, const std::string& text, std::vector<std::string> grid) {
    int x = 0;
    std::vector<std::string> out(kGlyphRows, std::string(grid[0].size(), '.'));
    int top = static_cast<int>(grid.size()) - kGlyphRows;
    for (char ch : text) {
        const Glyph& g = f.glyphs.at(ch);
        for (const auto& d : g.drops) {
            char k = tag_char(d.kind);
            std::vector<std::pair<int, int>> cells;
            for (int r = 0; r < static_cast<int>(grid.size()); ++r)
                for (int c = x; c < x + g.width; ++c)
                    if (grid[r][c] == k) cells.push_back({r - top, c});
            REQUIRE(cells.size() == 4);
            auto free = [&](int dr) {
                for (auto [r, c] : cells) {
                    int rr = r + dr;
                    if (rr >= kGlyphRows) return false;
                    if (rr >= 0 && out[rr][c] != '.') return false;
                }
                return true;
            };
            int dr = 0;
            while (free(dr + 1)) ++dr;
            for (auto [r, c] : cells) {
                REQUIRE(r + dr >= 0);
                out[r + dr][c] = k;
            }
        }
        x += g.width + f.spacing;
    }
    return out;
}

}  // namespace

TEST_CASE("shipped font") {
    const Font& f = shipped();
    CHECK(f.glyphs.size() == 26);
    for (char c = 'A'; c <= 'Z'; ++c) {
        INFO(c);
        REQUIRE(f.glyphs.count(c));
        const Glyph& g = f.glyphs.at(c);
        auto rep = validate_glyph(g);
        CHECK(rep.pass);
        int cells = 0;
        for (const auto& row : g.target)
            for (char ch : row) cells += ch != '.';
        CHECK(cells == 28);
        std::string kinds;
        for (const auto& d : g.drops) kinds += tag_char(d.kind);
        std::sort(kinds.begin(), kinds.end());
        CHECK(kinds == "IJLOSTZ");
    }
    std::ostringstream os;
    write_font(os, f);
    std::istringstream in(os.str());
    auto again = read_font(in);
    CHECK(again.glyphs.size() == 26);
    CHECK(again.spacing == f.spacing);
}

TEST_CASE("glyph errors") {
    Glyph g = glyph('A');

    SUBCASE("duplicate kind") {
        Glyph bad = g;
        for (auto& d : bad.drops)
            if (d.kind == Tag::T) d.kind = Tag::O;
        std::string what;
        CHECK(load_error(font_text(bad), &what) == Errc::InvalidGlyph);
        CHECK(what.find("duplicate kind O") != std::string::npos);
    }
    SUBCASE("six pieces") {
        Glyph bad = g;
        bad.drops.pop_back();
        auto rep = validate_glyph(bad);
        CHECK_FALSE(rep.pass);
        CHECK(rep.problems.front() == "7 pieces required");
    }
    SUBCASE("reordered") {
        // Some adjacent swap in the shipped glyphs lands a piece above its target.
        int mismatches = 0;
        for (const auto& [c, orig] : shipped().glyphs)
            for (size_t j = 0; j + 1 < orig.drops.size(); ++j) {
                Glyph bad = orig;
                std::swap(bad.drops[j], bad.drops[j + 1]);
                if (bad.drops[j].kind == orig.drops[j].kind) continue;
                auto rep = validate_glyph(bad);
                if (rep.pass) continue;
                mismatches += rep.problems.front().rfind("replay mismatch at step", 0) == 0;
            }
        CHECK(mismatches > 0);
        Glyph bad = g;
        std::rotate(bad.drops.begin(), bad.drops.begin() + 1, bad.drops.end());
        CHECK_FALSE(validate_glyph(bad).pass);
    }
    SUBCASE("unsupported") {
        // Lift the last piece of some glyph one row in its target.
        bool tried = false;
        for (const auto& [letter, orig] : shipped().glyphs) {
            Glyph bad = orig;
            char k = tag_char(bad.drops.back().kind);
            std::vector<std::string> t(kGlyphRows, std::string(bad.width, '.'));
            bool ok = true;
            for (int r = 0; r < kGlyphRows; ++r)
                for (int c = 0; c < bad.width; ++c)
                    if (bad.target[r][c] != '.' && bad.target[r][c] != k) t[r][c] = bad.target[r][c];
            for (int r = 0; r < kGlyphRows; ++r)
                for (int c = 0; c < bad.width; ++c)
                    if (bad.target[r][c] == k) {
                        if (r == 0 || t[r - 1][c] != '.') ok = false;
                        else t[r - 1][c] = k;
                    }
            for (const auto& row : t) ok = ok && row.find('.') != std::string::npos;
            if (!ok) continue;
            tried = true;
            bad.target = t;
            std::string what;
            CHECK(load_error(font_text(bad), &what) == Errc::InvalidGlyph);
            CHECK(what == std::string("glyph ") + letter + ": unsupported at step 7");
            break;
        }
        CHECK(tried);
    }
    SUBCASE("full row") {
        Glyph bad;
        bad.letter = 'Q';
        bad.width = 4;
        bad.target.assign(kGlyphRows, "....");
        bad.target[7] = "IIII";
        bad.drops = {{Tag::I, 90, 0}};
        auto rep = validate_glyph(bad);
        CHECK_FALSE(rep.pass);
        CHECK(std::find(rep.problems.begin(), rep.problems.end(), "full row 8") != rep.problems.end());
    }
    SUBCASE("parse errors carry the line") {
        std::string what;
        CHECK(load_error("FONT v2\n", &what) == Errc::Parse);
        auto text = font_text(g);
        auto pos = text.find("rot=");
        text.replace(pos, 4, "rotation=");
        CHECK(load_error(text, &what) == Errc::Parse);
        CHECK(what.find("line 14") == 0);
    }
}

TEST_CASE("render SOLVED") {
    const Font& f = shipped();
    auto out = lines(render_text(f, "I", RenderMode::Solved, RenderFormat::Ascii));
    CHECK(out == glyph('I').target);
    auto two = lines(render_text(f, "it", RenderMode::Solved, RenderFormat::Ascii));
    REQUIRE(two.size() == kGlyphRows);
    for (int r = 0; r < kGlyphRows; ++r)
        CHECK(two[r] == glyph('I').target[r] + std::string(f.spacing, '.') + glyph('T').target[r]);
    auto spaced = lines(render_text(f, "I I", RenderMode::Solved, RenderFormat::Ascii));
    CHECK(spaced[0].size() == 2 * glyph('I').width + 3 + 2 * f.spacing);
    CHECK_THROWS_AS(render_text(f, "?", RenderMode::Solved, RenderFormat::Ascii), Error);
    try {
        render_text(f, "A?", RenderMode::Puzzle, RenderFormat::Svg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownChar);
    }
}

TEST_CASE("PUZZLE drops back to SOLVED") {
    const Font& f = shipped();
    for (std::string text : {"TETRIS", "T", "ABCDEFGHIJKLM", "NOPQRSTUVWXYZ"}) {
        INFO(text);
        auto solved = render_text(f, text, RenderMode::Solved, RenderFormat::Ascii);
        auto puzzle = render_text(f, text, RenderMode::Puzzle, RenderFormat::Ascii);
        CHECK(lines(puzzle).size() == kGlyphRows + 6 * kGlyphRows);
        CHECK(puzzle != solved);
        CHECK(settle_puzzle(f, text, puzzle) == solved);
        CHECK(fall(f, text, lines(puzzle)) == lines(solved));
    }
}

TEST_CASE("SVG output") {
    const Font& f = shipped();
    auto a = render_text(f, "TETRIS", RenderMode::Puzzle, RenderFormat::Svg);
    auto b = render_text(f, "tetris", RenderMode::Puzzle, RenderFormat::Svg);
    CHECK(a == b);
    size_t rects = 0;
    for (size_t p = a.find("<rect"); p != std::string::npos; p = a.find("<rect", p + 1)) ++rects;
    CHECK(rects == 6 * 28);
    CHECK(a.rfind("<svg", 0) == 0);
}
