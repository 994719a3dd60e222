#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tetris/error.hpp"
#include "tetris/font.hpp"
#include "tetris/io.hpp"
#include "tetris/polysolver.hpp"
#include "tetris/reductions.hpp"
#include "tetris/search.hpp"

using namespace tetris;

namespace {

enum Exit { kOk = 0, kNo = 1, kUsage = 2, kUnknown = 3 };

// Writes to path, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(Errc::Parse, "cannot write " + path, 0);
    f << text;
}

template <class F>
std::string to_text(F&& write) {
    std::ostringstream os;
    write(os);
    return os.str();
}

Model parse_model(const std::string& s) { return s == "strict" ? Model::Strict : Model::Generous; }

const char* flag(bool b) { return b ? "true" : "false"; }

struct GenArgs {
    std::string reduction, p3, out, solution, meta, audit;
    int rows = 4;
    int extra_cols = 0;
    bool relaxed = false;
    bool bootstrap = false;
};

int cmd_gen(const GenArgs& a) {
    auto p = read_p3_file(a.p3);
    bool strict = !a.relaxed;
    ReductionOutput out;
    std::function<Trajectory(const Triples&)> intended;
    if (a.reduction == "8col") {
        out = gen_8col(p, a.extra_cols, strict);
        intended = [&](const Triples& t) { return intended_8col(p, t, a.extra_cols); };
    } else if (a.reduction == "4row") {
        out = gen_4row(p, a.rows, strict);
        intended = [&](const Triples& t) { return intended_4row(p, t, a.rows); };
    } else if (a.reduction == "3col-empty") {
        out = gen_3col_empty(p, a.bootstrap, strict);
        intended = [&](const Triples& t) { return intended_3col_empty(p, t, a.bootstrap); };
    } else if (a.reduction == "2row-empty") {
        out = gen_2row_empty(p, strict);
        intended = [&](const Triples& t) { return intended_2row_empty(p, t); };
    } else {
        out = gen_1row(p, strict);
        intended = [&](const Triples& t) { return intended_1row(p, t); };
    }
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
    if (!a.solution.empty()) {
        auto t = solve_3partition_bruteforce(p);
        if (!t) {
            std::cerr << "no partition\n";
            return kNo;
        }
        emit(a.solution, to_text([&](std::ostream& os) { write_trajectory(os, intended(*t)); }));
    }
    emit(a.out, to_text([&](std::ostream& os) { write_instance(os, out.instance); }));
    if (!a.meta.empty()) emit(a.meta, to_text([&](std::ostream& os) { write_landmarks(os, out.meta); }));
    if (!a.audit.empty()) emit(a.audit, out.audit.text());
    return kOk;
}

struct SolveArgs {
    std::string engine = "auto", inst, model = "generous";
    long max_nodes = 5'000'000;
    double max_seconds = 60.0;
};

int cmd_solve(const SolveArgs& a) {
    auto inst = read_instance_file(a.inst);
    std::string engine = a.engine;
    const Board& b = inst.board;
    if (engine == "auto") {
        if (b.width() == 1) engine = "1col";
        else if (b.height() == 1) engine = "1row";
        else if (b.width() == 2) engine = "2col";
        else engine = "brute";
    }
    GameConfig cfg{parse_model(a.model), false};
    std::optional<PolyVerdict> v;
    if (engine == "2col") {
        try {
            v = solve_2col(inst, cfg);
        } catch (const Error& e) {
            if (a.engine != "auto" || e.code() != Errc::NotTwoColumns) throw;
            std::cerr << "engine: 2col not applicable (" << e.what() << "), using brute\n";
            engine = "brute";
        }
    } else if (engine == "1row") {
        v = solve_1row(inst);
    } else if (engine == "1col") {
        v = solve_1col(inst);
    }
    std::cerr << "engine: " << engine << "\n";
    if (!v) {
        SearchLimits lim{a.max_nodes, a.max_seconds, true};
        TetrisInstance s = inst;
        s.goal = Goal::Survive;
        auto rs = brute_force(s, cfg, lim);
        PolyVerdict pv;
        bool unknown = rs.verdict == Verdict::Indeterminate;
        pv.survivable = rs.verdict == Verdict::Solvable;
        if (pv.survivable) {
            s.goal = Goal::Clear;
            auto rc = brute_force(s, cfg, lim);
            unknown = rc.verdict == Verdict::Indeterminate;
            pv.clearable = rc.verdict == Verdict::Solvable;
        }
        if (unknown) {
            std::cout << "indeterminate\n";
            return kUnknown;
        }
        v = pv;
    }
    std::cout << "survivable=" << flag(v->survivable) << " clearable=" << flag(v->clearable) << "\n";
    bool ok = inst.goal == Goal::Survive ? v->survivable : v->clearable;
    return ok ? kOk : kNo;
}

struct VerifyArgs {
    std::string inst, traj, meta, model = "strict";
    bool clear_before_loss = false;
};

int cmd_verify(const VerifyArgs& a) {
    auto inst = read_instance_file(a.inst);
    auto traj = read_trajectory_file(a.traj);
    Landmarks meta;
    if (!a.meta.empty()) meta = read_landmarks_file(a.meta);
    GameConfig cfg{parse_model(a.model), a.clear_before_loss};
    VerifyReport rep;
    try {
        rep = verify(inst, traj, cfg, meta);
    } catch (const Error& e) {
        if (e.code() != Errc::IllegalPlacement && e.code() != Errc::LengthMismatch) throw;
        std::cout << "error: " << errc_name(e.code()) << " at step " << e.step() << ": " << e.what() << "\n";
        return kNo;
    }
    for (const auto& s : rep.log) {
        std::cout << "step " << s.step << " rot=" << s.placement.rot << " col=" << s.placement.col
                  << " row=" << s.placement.row << " cleared=" << s.rows_cleared;
        for (const auto& ev : s.events) std::cout << " [" << ev << "]";
        std::cout << "\n";
    }
    std::cout << rep.outcome.describe() << "\n";
    std::cout << "goal " << goal_name(inst.goal) << (rep.goal_met ? " met" : " NOT met") << "\n";
    return rep.goal_met ? kOk : kNo;
}

int cmd_audit(const std::string& path, const std::string& meta_path) {
    auto inst = read_instance_file(path);
    Landmarks meta;
    if (!meta_path.empty()) meta = read_landmarks_file(meta_path);
    auto rep = area_audit(inst, meta);
    std::cout << rep.text();
    return rep.pass ? kOk : kNo;
}

// Empty cells of landmark i are drawn as 'a' + i; filled cells stay '#'.
std::vector<std::string> annotated(const Board& b, const Landmarks& meta, std::string* legend) {
    std::vector<std::string> grid;
    std::istringstream in(b.to_string());
    for (std::string l; std::getline(in, l);) grid.push_back(l);
    for (size_t i = 0; i < meta.size() && i < 26; ++i) {
        char mark = static_cast<char>('a' + i);
        int n = 0;
        for (const auto& c : meta[i].cells)
            if (b.in_bounds(c.row, c.col) && !b.at(c.row, c.col)) {
                grid[c.row][c.col] = mark;
                ++n;
            }
        *legend += std::string(1, mark) + " = " + meta[i].name + " (" + std::to_string(n) + " empty)\n";
    }
    return grid;
}

int cmd_render(const std::string& path, const std::string& format, const std::string& meta_path,
               const std::string& out) {
    auto inst = read_instance_file(path);
    Landmarks meta;
    if (!meta_path.empty()) meta = read_landmarks_file(meta_path);
    std::string legend;
    auto grid = annotated(inst.board, meta, &legend);
    std::ostringstream os;
    if (format == "ascii") {
        for (const auto& row : grid) os << row << "\n";
        os << legend;
    } else {
        const int cell = 12;
        int w = inst.board.width(), h = inst.board.height();
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * cell << "\" height=\"" << h * cell
           << "\" viewBox=\"0 0 " << w * cell << " " << h * cell << "\">\n";
        os << "<rect x=\"0\" y=\"0\" width=\"" << w * cell << "\" height=\"" << h * cell << "\" fill=\"#ffffff\"/>\n";
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) {
                char ch = grid[r][c];
                if (ch == '.') continue;
                const char* fill = ch == '#' ? "#404040" : "#9fd0ff";
                os << "<rect x=\"" << c * cell << "\" y=\"" << r * cell << "\" width=\"" << cell << "\" height=\""
                   << cell << "\" fill=\"" << fill << "\"/>\n";
            }
        os << "</svg>\n";
    }
    emit(out, os.str());
    return kOk;
}

int cmd_font_validate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Parse, "cannot open " + path, 0);
    try {
        auto f = read_font(in);
        for (const auto& [c, g] : f.glyphs) std::cout << c << " ok\n";
        std::cout << f.glyphs.size() << " glyphs valid\n";
        return kOk;
    } catch (const Error& e) {
        if (e.code() != Errc::InvalidGlyph) throw;
        std::cout << "invalid: " << e.what() << "\n";
        return kNo;
    }
}

int cmd_font_render(const std::string& path, const std::string& text, const std::string& mode,
                    const std::string& format, int lift, const std::string& out) {
    auto f = load_font(path);
    emit(out, render_text(f, text, mode == "puzzle" ? RenderMode::Puzzle : RenderMode::Solved,
                          format == "svg" ? RenderFormat::Svg : RenderFormat::Ascii, lift));
    return kOk;
}

int exit_for(const Error& e) {
    switch (e.code()) {
        case Errc::InvalidP3:
        case Errc::Degenerate:
        case Errc::InvalidGlyph:
        case Errc::IllegalPlacement:
        case Errc::Unreachable:
            return kNo;
        default:
            return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Narrow-board Tetris: reductions, solvers, verifier and font"};
    app.require_subcommand(1);
    int code = kOk;

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "compile a 3-Partition instance into a Tetris instance");
    gen->add_option("--reduction", ga.reduction)->required()->check(CLI::IsMember({"8col", "4row", "3col-empty", "2row-empty", "1row"}));
    gen->add_option("p3", ga.p3, "P3 v1 file")->required();
    gen->add_option("-o,--output", ga.out, "instance output (default stdout)");
    gen->add_option("--rows", ga.rows, "rows for 4row");
    gen->add_option("--extra-cols", ga.extra_cols, "filled columns beyond the 8th for 8col");
    gen->add_flag("--relaxed", ga.relaxed, "accept a_i outside (T/4, T/2) with a warning");
    gen->add_flag("--bootstrap", ga.bootstrap, "3col-empty: start from an empty board");
    gen->add_option("--with-solution", ga.solution, "write the intended trajectory here");
    gen->add_option("--meta", ga.meta, "write landmark metadata here");
    gen->add_option("--audit", ga.audit, "write the audit report here");
    gen->callback([&] { code = cmd_gen(ga); });

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "decide survivability and clearability");
    solve->add_option("--engine", sa.engine)->check(CLI::IsMember({"auto", "brute", "2col", "1row", "1col"}));
    solve->add_option("instance", sa.inst)->required();
    solve->add_option("--model", sa.model)->check(CLI::IsMember({"strict", "generous"}));
    solve->add_option("--max-nodes", sa.max_nodes);
    solve->add_option("--max-seconds", sa.max_seconds);
    solve->callback([&] { code = cmd_solve(sa); });

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "replay a trajectory");
    ver->add_option("instance", va.inst)->required();
    ver->add_option("trajectory", va.traj)->required();
    ver->add_option("--model", va.model)->check(CLI::IsMember({"strict", "generous"}));
    ver->add_flag("--clear-before-loss", va.clear_before_loss);
    ver->add_option("--meta", va.meta, "landmark metadata for event logging");
    ver->callback([&] { code = cmd_verify(va); });

    std::string audit_inst, audit_meta;
    auto* aud = app.add_subcommand("audit", "area accounting");
    aud->add_option("instance", audit_inst)->required();
    aud->add_option("--meta", audit_meta);
    aud->callback([&] { code = cmd_audit(audit_inst, audit_meta); });

    std::string r_inst, r_format = "ascii", r_meta, r_out;
    auto* ren = app.add_subcommand("render", "draw an instance board");
    ren->add_option("instance", r_inst)->required();
    ren->add_option("--format", r_format)->check(CLI::IsMember({"ascii", "svg"}));
    ren->add_option("--meta", r_meta, "annotate empty landmark cells");
    ren->add_option("-o,--output", r_out);
    ren->callback([&] { code = cmd_render(r_inst, r_format, r_meta, r_out); });

    std::string font_path = TETRIS_DEFAULT_FONT;
    auto* font = app.add_subcommand("font", "tetromino font");
    font->require_subcommand(1);
    font->add_option("--font", font_path, "FONT v1 file");
    auto* fv = font->add_subcommand("validate", "check every glyph");
    fv->callback([&] { code = cmd_font_validate(font_path); });
    std::string text, mode = "solved", fformat = "ascii", fout;
    int lift = kGlyphRows;
    auto* fr = font->add_subcommand("render", "render text");
    fr->add_option("--text", text)->required();
    fr->add_option("--mode", mode)->check(CLI::IsMember({"solved", "puzzle"}));
    fr->add_option("--format", fformat)->check(CLI::IsMember({"ascii", "svg"}));
    fr->add_option("--lift", lift, "rows between consecutive puzzle pieces");
    fr->add_option("-o,--output", fout);
    fr->callback([&] { code = cmd_font_render(font_path, text, mode, fformat, lift, fout); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_for(e);
    }
    return code;
}
