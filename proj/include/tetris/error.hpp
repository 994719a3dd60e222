#pragma once

#include <stdexcept>
#include <string>

namespace tetris {

enum class Errc {
    Empty,
    Disconnected,
    IllegalPlacement,
    LengthMismatch,
    Parse,
    InvalidP3,
    Degenerate,
    BadPartition,
    BadRows,
    Unreachable,
    NotTwoColumns,
    InvalidGlyph,
    UnknownChar,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, int step = -1)
        : std::runtime_error(what), code_(code), step_(step) {}

    Errc code() const { return code_; }
    // Piece index for ILLEGAL_PLACEMENT, line number for PARSE errors; -1 otherwise.
    int step() const { return step_; }

private:
    Errc code_;
    int step_;
};

}  // namespace tetris
