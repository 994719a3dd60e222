#include "tetris/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tetris/error.hpp"

namespace tetris {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::string next(const char* what) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            return line;
        }
        throw fail(std::string("unexpected end of input, expected ") + what);
    }

    bool at_end() {
        std::string line;
        std::streampos pos = in_.tellg();
        while (std::getline(in_, line)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                in_.clear();
                in_.seekg(pos);
                return false;
            }
        }
        return true;
    }

    int keyed_int(const char* key) {
        auto toks = split_ws(next(key));
        if (toks.size() != 2 || toks[0] != key) throw fail(std::string("expected '") + key + " <int>'");
        return to_int(toks[1]);
    }

    int to_int(const std::string& s) {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw fail("bad integer '" + s + "'");
        }
    }

    Error fail(const std::string& msg) const {
        return Error(Errc::Parse, "line " + std::to_string(lineno_) + ": " + msg, lineno_);
    }

private:
    std::istream& in_;
    int lineno_ = 0;
};

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::Parse, "cannot open " + path, 0);
    return f;
}

}  // namespace

TetrisInstance read_instance(std::istream& in) {
    LineReader lr(in);
    if (split_ws(lr.next("header")) != std::vector<std::string>{"TETRIS", "v1"}) throw lr.fail("expected 'TETRIS v1'");
    int cols = lr.keyed_int("cols");
    int rows = lr.keyed_int("rows");
    if (cols < 1 || rows < 1) throw lr.fail("cols and rows must be positive");
    TetrisInstance inst;
    auto g = split_ws(lr.next("goal"));
    if (g.size() != 2 || g[0] != "goal" || (g[1] != "clear" && g[1] != "survive"))
        throw lr.fail("expected 'goal clear|survive'");
    inst.goal = g[1] == "clear" ? Goal::Clear : Goal::Survive;
    if (split_ws(lr.next("board")) != std::vector<std::string>{"board"}) throw lr.fail("expected 'board'");
    std::vector<std::string> lines;
    for (int r = 0; r < rows; ++r) {
        std::string line = lr.next("board row");
        if (static_cast<int>(line.size()) != cols || line.find_first_not_of("#.") != std::string::npos)
            throw lr.fail("board row must be " + std::to_string(cols) + " chars of '#' or '.'");
        lines.push_back(line);
    }
    inst.board = Board::from_lines(lines);
    int n = lr.keyed_int("pieces");
    if (n < 0) throw lr.fail("negative piece count");
    for (int i = 0; i < n; ++i) {
        auto toks = split_ws(lr.next("piece"));
        if (toks.size() != 1) throw lr.fail("one piece per line");
        try {
            inst.pieces.push_back(parse_kind(toks[0]));
        } catch (const Error& e) {
            throw lr.fail(e.what());
        }
    }
    if (!lr.at_end()) throw lr.fail("trailing content after pieces");
    return inst;
}

TetrisInstance read_instance_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_instance(f);
}

void write_instance(std::ostream& out, const TetrisInstance& inst) {
    out << "TETRIS v1\n"
        << "cols " << inst.board.width() << "\n"
        << "rows " << inst.board.height() << "\n"
        << "goal " << goal_name(inst.goal) << "\n"
        << "board\n"
        << inst.board.to_string() << "pieces " << inst.pieces.size() << "\n";
    for (const auto& k : inst.pieces) out << k.name() << "\n";
}

Trajectory read_trajectory(std::istream& in) {
    LineReader lr(in);
    if (split_ws(lr.next("header")) != std::vector<std::string>{"TRAJ", "v1"}) throw lr.fail("expected 'TRAJ v1'");
    Trajectory t;
    while (!lr.at_end()) {
        auto toks = split_ws(lr.next("move"));
        if (toks.size() < 2 || toks.size() > 3) throw lr.fail("expected 'rot=<deg> col=<int> [row=<int>]'");
        Move m;
        auto field = [&](const std::string& tok, const char* key) {
            std::string k = std::string(key) + "=";
            if (tok.rfind(k, 0) != 0) throw lr.fail("expected " + k);
            return lr.to_int(tok.substr(k.size()));
        };
        m.rot = field(toks[0], "rot");
        if (m.rot % 90 != 0 || m.rot < 0 || m.rot >= 360) throw lr.fail("rot must be 0, 90, 180 or 270");
        m.col = field(toks[1], "col");
        if (toks.size() == 3) m.row = field(toks[2], "row");
        t.push_back(m);
    }
    return t;
}

Trajectory read_trajectory_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_trajectory(f);
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
    out << "TRAJ v1\n";
    for (const Move& m : traj) {
        out << "rot=" << m.rot << " col=" << m.col;
        if (m.row) out << " row=" << *m.row;
        out << "\n";
    }
}

Landmarks read_landmarks(std::istream& in) {
    LineReader lr(in);
    if (split_ws(lr.next("header")) != std::vector<std::string>{"META", "v1"}) throw lr.fail("expected 'META v1'");
    Landmarks out;
    while (!lr.at_end()) {
        auto toks = split_ws(lr.next("landmark"));
        if (toks.size() < 2) throw lr.fail("expected '<name> <n> r,c ...'");
        Landmark l{toks[0], {}};
        int n = lr.to_int(toks[1]);
        if (n < 0 || static_cast<int>(toks.size()) != n + 2) throw lr.fail("cell count mismatch");
        for (int i = 0; i < n; ++i) {
            auto comma = toks[i + 2].find(',');
            if (comma == std::string::npos) throw lr.fail("cells are written r,c");
            l.cells.push_back({lr.to_int(toks[i + 2].substr(0, comma)), lr.to_int(toks[i + 2].substr(comma + 1))});
        }
        out.push_back(std::move(l));
    }
    return out;
}

Landmarks read_landmarks_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_landmarks(f);
}

void write_landmarks(std::ostream& out, const Landmarks& meta) {
    out << "META v1\n";
    for (const auto& l : meta) {
        out << l.name << " " << l.cells.size();
        for (const auto& c : l.cells) out << " " << c.row << "," << c.col;
        out << "\n";
    }
}

}  // namespace tetris
