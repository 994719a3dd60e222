#include "tetris/board.hpp"

#include <algorithm>

#include "tetris/error.hpp"

namespace tetris {

bool Board::row_full(int r) const {
    for (int c = 0; c < w_; ++c)
        if (!at(r, c)) return false;
    return true;
}

bool Board::row_empty(int r) const {
    for (int c = 0; c < w_; ++c)
        if (at(r, c)) return false;
    return true;
}

bool Board::has_full_row() const {
    for (int r = 0; r < h_; ++r)
        if (row_full(r)) return true;
    return false;
}

bool Board::empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](uint8_t v) { return v == 0; });
}

int Board::count_filled() const {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), uint8_t{1}));
}

int Board::clear_full_rows() {
    int dst = h_ - 1, cleared = 0;
    for (int src = h_ - 1; src >= 0; --src) {
        if (row_full(src)) {
            ++cleared;
            continue;
        }
        if (dst != src)
            std::copy_n(cells_.begin() + static_cast<long>(src) * w_, w_, cells_.begin() + static_cast<long>(dst) * w_);
        --dst;
    }
    if (cleared) std::fill(cells_.begin(), cells_.begin() + static_cast<long>(cleared) * w_, uint8_t{0});
    return cleared;
}

std::string Board::to_string() const {
    std::string s;
    s.reserve(static_cast<size_t>(h_) * (w_ + 1));
    for (int r = 0; r < h_; ++r) {
        for (int c = 0; c < w_; ++c) s += at(r, c) ? '#' : '.';
        s += '\n';
    }
    return s;
}

Board Board::from_lines(const std::vector<std::string>& lines) {
    if (lines.empty() || lines[0].empty()) throw Error(Errc::Parse, "board needs at least one row and column");
    Board b(static_cast<int>(lines[0].size()), static_cast<int>(lines.size()));
    for (int r = 0; r < b.h_; ++r) {
        if (static_cast<int>(lines[r].size()) != b.w_) throw Error(Errc::Parse, "ragged board row", r);
        for (int c = 0; c < b.w_; ++c) {
            char ch = lines[r][c];
            if (ch == '#') b.set(r, c);
            else if (ch != '.') throw Error(Errc::Parse, "board cells must be '#' or '.'", r);
        }
    }
    return b;
}

size_t BoardHash::operator()(const Board& b) const {
    // FNV-1a over the occupancy bytes plus dimensions.
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(b.width()));
    mix(static_cast<uint64_t>(b.height()));
    for (uint8_t v : b.raw()) mix(v);
    return static_cast<size_t>(h);
}

}  // namespace tetris
