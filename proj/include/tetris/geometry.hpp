#pragma once

#include <string>
#include <vector>

namespace tetris {

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

// Normalized, edge-connected cell set. Cells are kept sorted by (row, col).
class Polyomino {
public:
    Polyomino() = default;

    const std::vector<Cell>& cells() const { return cells_; }
    int size() const { return static_cast<int>(cells_.size()); }
    int height() const { return h_; }
    int width() const { return w_; }
    bool is_bar() const { return h_ == 1 || w_ == 1; }
    bool contains(int r, int c) const;

    Polyomino rotated_cw() const;
    std::string bitstring() const;  // rows of '0'/'1' joined by '/'

    bool operator==(const Polyomino& o) const { return cells_ == o.cells_; }
    bool operator<(const Polyomino& o) const { return cells_ < o.cells_; }

    friend Polyomino normalize(std::vector<Cell> cells);

private:
    std::vector<Cell> cells_;
    int h_ = 0;
    int w_ = 0;
};

// Throws Error(Empty) or Error(Disconnected).
Polyomino normalize(std::vector<Cell> cells);
Polyomino rect(int h, int w);

enum class Tag { O, I, S, Z, L, J, T, Custom };

struct PieceKind {
    Tag tag = Tag::Custom;
    Polyomino shape;

    static PieceKind named(Tag t);
    static PieceKind custom(const Polyomino& p);
    static PieceKind bar(int len, bool vertical);

    std::string name() const;  // "O" ... or "poly:<h>x<w>:<bits>"
    bool operator==(const PieceKind& o) const { return tag == o.tag && shape == o.shape; }
    bool operator<(const PieceKind& o) const {
        return tag != o.tag ? tag < o.tag : shape < o.shape;
    }
};

// Parses "O".."T" or "poly:<h>x<w>:<rows>". Throws Error(Parse) on bad input.
PieceKind parse_kind(const std::string& s);
bool parse_tag(char ch, Tag& out);
char tag_char(Tag t);

// Distinct clockwise rotations: element j is the shape after j quarter turns,
// truncated at the first repeat. Cached; the reference stays valid.
const std::vector<Polyomino>& orientations(const PieceKind& k);

}  // namespace tetris
