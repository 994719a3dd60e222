#include <doctest.h>

#include <random>

#include "tetris/search.hpp"

using namespace tetris;

namespace {

PieceKind named(char c) {
    Tag t;
    parse_tag(c, t);
    return PieceKind::named(t);
}

std::vector<PieceKind> pieces(const std::string& s) {
    std::vector<PieceKind> out;
    for (char c : s) out.push_back(named(c));
    return out;
}

}  // namespace

TEST_CASE("brute force finds and verifies small clears") {
    TetrisInstance inst{Board(4, 4), pieces("I"), Goal::Clear};
    auto r = brute_force(inst, {});
    REQUIRE(r.verdict == Verdict::Solvable);
    CHECK(play(inst, r.trajectory, {}).cleared);

    TetrisInstance two{Board(2, 4), pieces("OO"), Goal::Clear};
    auto r2 = brute_force(two, {});
    REQUIRE(r2.verdict == Verdict::Solvable);
    CHECK(play(two, r2.trajectory, {}).cleared);
}

TEST_CASE("brute force proves small impossibilities") {
    TetrisInstance odd{Board(3, 4), pieces("O"), Goal::Clear};
    auto r = brute_force(odd, {Model::Generous, false});
    CHECK(r.verdict == Verdict::Unsolvable);
    CHECK(r.model_independent);

    // The O can only rest with a cell above the top row.
    TetrisInstance tall{Board::from_lines({"..", "#."}), pieces("O"), Goal::Survive};
    auto r2 = brute_force(tall, {});
    CHECK(r2.verdict == Verdict::Unsolvable);
    CHECK_FALSE(r2.model_independent);
}

TEST_CASE("node limit yields indeterminate") {
    TetrisInstance inst{Board(6, 6), pieces("TSZLJ"), Goal::Survive};
    SearchLimits lim;
    lim.max_nodes = 3;
    CHECK(brute_force(inst, {}, lim).verdict == Verdict::Indeterminate);
}

TEST_CASE("transposition table does not change verdicts") {
    std::mt19937 rng(7);
    const std::string kinds = "OISZLJT";
    for (int t = 0; t < 40; ++t) {
        int w = 3 + static_cast<int>(rng() % 3);
        Board b(w, 5);
        for (int r = 3; r < 5; ++r)
            for (int c = 0; c < w; ++c) b.set(r, c, rng() % 2);
        for (int r = 0; r < 5; ++r)
            if (b.row_full(r)) b.set(r, 0, false);
        std::string seq;
        for (int k = 0; k < 3; ++k) seq += kinds[rng() % kinds.size()];
        TetrisInstance inst{b, pieces(seq), t % 2 ? Goal::Clear : Goal::Survive};
        SearchLimits on, off;
        off.transposition = false;
        auto a = brute_force(inst, {}, on);
        auto c = brute_force(inst, {}, off);
        CHECK(a.verdict == c.verdict);
        if (a.verdict == Verdict::Solvable) CHECK(play(inst, a.trajectory, {}).meets(inst.goal));
    }
}

TEST_CASE("verify reports landmark events") {
    // The O fills the lock, clearing the two rows that seal the alley.
    Board b = Board::from_lines({"#..", "#..", ".##", ".##"});
    TetrisInstance inst{b, pieces("O"), Goal::Survive};
    Landmarks lm{{"lock", {{0, 1}, {0, 2}, {1, 1}, {1, 2}}}, {"alley", {{2, 0}, {3, 0}}}};
    auto rep = verify(inst, {Move{0, 1, std::nullopt}}, {}, lm);
    CHECK(rep.goal_met);
    REQUIRE(rep.log.size() == 1);
    CHECK(rep.log[0].rows_cleared == 2);
    CHECK(rep.log[0].events == std::vector<std::string>{"lock filled", "alley opened"});
}

TEST_CASE("area audit") {
    TetrisInstance inst{Board::from_lines({"....", "##..", "##.."}), pieces("OI"), Goal::Clear};
    auto a = area_audit(inst, {{"well", {{1, 2}, {1, 3}, {2, 2}, {2, 3}}}});
    CHECK(a.pass);
    auto txt = a.text();
    CHECK(txt.find("piece_area = 8") != std::string::npos);
    CHECK(txt.find("empty.well = 4") != std::string::npos);

    TetrisInstance bad{Board::from_lines({"....", "##.."}), pieces("T"), Goal::Clear};
    CHECK_FALSE(area_audit(bad).pass);
    auto b2 = area_audit(bad, {}, {{"made_up", true}});
    CHECK(b2.text().find("check.made_up = pass") != std::string::npos);
}
