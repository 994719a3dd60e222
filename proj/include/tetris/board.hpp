#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tetris {

// Occupancy grid, row 0 at the top. Cells above row 0 read as empty; cells
// left/right of the board or below the bottom read as filled.
class Board {
public:
    Board() = default;
    Board(int width, int height) : w_(width), h_(height), cells_(static_cast<size_t>(width) * height, 0) {}

    int width() const { return w_; }
    int height() const { return h_; }

    bool in_bounds(int r, int c) const { return r >= 0 && r < h_ && c >= 0 && c < w_; }
    bool filled(int r, int c) const {
        if (c < 0 || c >= w_ || r >= h_) return true;
        if (r < 0) return false;
        return cells_[static_cast<size_t>(r) * w_ + c] != 0;
    }
    bool at(int r, int c) const { return cells_[static_cast<size_t>(r) * w_ + c] != 0; }
    void set(int r, int c, bool v = true) { cells_[static_cast<size_t>(r) * w_ + c] = v ? 1 : 0; }

    bool row_full(int r) const;
    bool row_empty(int r) const;
    bool has_full_row() const;
    bool empty() const;
    int count_filled() const;
    int count_empty() const { return w_ * h_ - count_filled(); }

    // Removes full rows, shifting everything above down; returns how many.
    int clear_full_rows();

    std::string to_string() const;  // '#'/'.' lines, top row first
    static Board from_lines(const std::vector<std::string>& lines);

    const std::vector<uint8_t>& raw() const { return cells_; }
    bool operator==(const Board& o) const = default;

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<uint8_t> cells_;
};

struct BoardHash {
    size_t operator()(const Board& b) const;
};

}  // namespace tetris
