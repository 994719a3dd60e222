#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tetris/geometry.hpp"

namespace tetris {

constexpr int kGlyphRows = 8;

struct Drop {
    Tag kind = Tag::O;
    int rot = 0;
    int col = 0;
};

struct Glyph {
    char letter = '?';
    int width = 0;
    std::vector<std::string> target;  // kGlyphRows lines of kind letters or '.'
    std::vector<Drop> drops;
};

struct GlyphReport {
    bool pass = true;
    std::vector<std::string> problems;
};

struct Font {
    std::map<char, Glyph> glyphs;  // upper-case letters
    int spacing = 1;
};

// FONT v1. Throws Error(Parse) with the line number, or Error(InvalidGlyph)
// naming the letter and the first problem.
Font read_font(std::istream& in);
Font load_font(const std::string& path);
void write_font(std::ostream& out, const Font& f);

// Replays the drops as straight falls without line clears.
GlyphReport validate_glyph(const Glyph& g);

enum class RenderMode { Solved, Puzzle };
enum class RenderFormat { Ascii, Svg };

// Spaces become 3 blank columns. Other characters must be in the font
// (case-folded) or Error(UnknownChar) is thrown. PUZZLE lifts drop j
// (1-based) by (7 - j) * lift rows.
std::string render_text(const Font& f, const std::string& text, RenderMode mode, RenderFormat format,
                        int lift = kGlyphRows);

// Drops every piece of a PUZZLE ASCII rendering straight down, in each
// glyph's drop order, and returns the resulting ASCII grid.
std::string settle_puzzle(const Font& f, const std::string& text, const std::string& puzzle_ascii);

}  // namespace tetris
