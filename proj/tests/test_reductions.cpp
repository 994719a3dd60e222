#include <doctest.h>

#include <random>
#include <sstream>

#include "tetris/error.hpp"
#include "tetris/reductions.hpp"

using namespace tetris;

namespace {

ThreePartition P(std::vector<int> a, int T) { return ThreePartition{std::move(a), T}; }

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error");
    return Errc::Empty;
}

}  // namespace

TEST_CASE("3-partition checks") {
    auto r = check_3partition(P({2, 2, 3}, 7));
    CHECK(r.s == 1);
    CHECK(r.valid(true));
    CHECK(check_3partition(P({4, 4, 4, 4, 4, 6}, 13)).valid(true));
    auto w = check_3partition(P({1, 1, 4}, 6));
    CHECK(w.sum_ok);
    CHECK_FALSE(w.window_ok);
    CHECK(w.valid(false));
}

TEST_CASE("3-partition brute force") {
    auto t = solve_3partition_bruteforce(P({2, 2, 3}, 7));
    REQUIRE(t);
    CHECK(*t == Triples{{0, 1, 2}});
    auto two = P({4, 4, 5, 4, 4, 5}, 13);
    auto t2 = solve_3partition_bruteforce(two);
    REQUIRE(t2);
    CHECK_NOTHROW(check_partition(two, *t2));
    CHECK_FALSE(solve_3partition_bruteforce(P({4, 4, 4, 4, 4, 6}, 13)));
    CHECK(code_of([&] { check_partition(two, {{0, 1, 3}, {2, 4, 5}}); }) == Errc::BadPartition);
}

TEST_CASE("P3 round trip and parse errors") {
    std::ostringstream os;
    write_p3(os, P({4, 4, 5, 4, 4, 5}, 13));
    std::istringstream in(os.str());
    auto p = read_p3(in);
    CHECK(p.T == 13);
    CHECK(p.a == std::vector<int>{4, 4, 5, 4, 4, 5});
    std::istringstream bad("P3 v1\nT x\na 1 2 3\n");
    CHECK(code_of([&] { read_p3(bad); }) == Errc::Parse);
}

TEST_CASE("8-column instance counts") {
    auto out = gen_8col(P({2, 2, 3}, 7));
    const auto& b = out.instance.board;
    CHECK(b.width() == 8);
    CHECK(b.height() == 149);
    CHECK(out.instance.pieces.size() == 145);
    CHECK(b.count_empty() == 580);
    CHECK(piece_area(out.instance.pieces) == 580);
    CHECK(out.audit.pass);
    CHECK_FALSE(b.has_full_row());
    CHECK(code_of([] { gen_8col(P({}, 7)); }) == Errc::Degenerate);
    CHECK(code_of([] { gen_8col(P({1, 1, 4}, 6)); }) == Errc::InvalidP3);
    CHECK(gen_8col(P({1, 1, 4}, 6), 0, false).warnings.size() == 1);
    auto wide = gen_8col(P({2, 2, 3}, 7), 2);
    CHECK(wide.instance.board.width() == 10);
    CHECK(wide.instance.board.count_empty() == 580);
}

TEST_CASE("8-column intended play clears under STRICT") {
    auto p = P({2, 2, 3}, 7);
    auto out = gen_8col(p);
    auto tr = intended_8col(p, {{0, 1, 2}});
    CHECK(tr.size() == 145);
    auto rep = verify(out.instance, tr, {}, out.meta);
    CHECK(rep.outcome.describe() == "survived cleared=true");
    REQUIRE(rep.goal_met);
    // The T fills the lock and opens the alley in one step.
    const auto& t_step = rep.log[145 - 3 * 1 * 7 - 12 - 4 - 1];
    CHECK(t_step.rows_cleared == 1);
    CHECK(std::find(t_step.events.begin(), t_step.events.end(), "t-lock filled") != t_step.events.end());
    CHECK(std::find(t_step.events.begin(), t_step.events.end(), "alley opened") != t_step.events.end());

    auto q = P({4, 4, 5, 4, 4, 5}, 13);
    auto tq = solve_3partition_bruteforce(q);
    REQUIRE(tq);
    auto oq = gen_8col(q, 1);
    CHECK(play(oq.instance, intended_8col(q, *tq, 1), {}).cleared);
    CHECK(code_of([&] { intended_8col(q, {{0, 1, 3}, {2, 4, 5}}); }) == Errc::BadPartition);
}

TEST_CASE("1-row reduction") {
    auto out = gen_1row(P({2, 2, 3, 3, 2, 2}, 7));
    CHECK(out.instance.board.to_string() == ".......#.......#\n");
    CHECK(out.instance.pieces.size() == 7);
    auto p = P({2, 2, 3}, 7);
    auto o1 = gen_1row(p);
    CHECK(play(o1.instance, intended_1row(p, {{0, 1, 2}}), {}).meets(Goal::Survive));
    auto no = gen_1row(P({4, 4, 4, 4, 4, 6}, 13));
    CHECK(brute_force(no.instance, {Model::Generous, false}).verdict == Verdict::Unsolvable);
}

TEST_CASE("2-row empty reduction") {
    auto p = P({4, 4, 5, 4, 4, 5}, 13);
    auto out = gen_2row_empty(p);
    CHECK(out.instance.board.width() == 108);
    CHECK(out.instance.board.height() == 2);
    const auto& comb = out.instance.pieces[0].shape;
    CHECK(comb.width() == 107);
    CHECK(comb.contains(0, 0));
    CHECK(comb.contains(0, 53));
    CHECK(comb.contains(0, 106));
    CHECK_FALSE(comb.contains(0, 52));
    auto o = play(out.instance, intended_2row_empty(p, *solve_3partition_bruteforce(p)), {});
    CHECK(o.cleared);
}

TEST_CASE("3-column reduction") {
    auto fig = gen_3col_empty(P({1, 1, 1, 1, 1, 1, 1, 1, 1}, 3), false, false);
    const auto& b = fig.instance.board;
    CHECK(b.width() == 3);
    CHECK(b.height() == 30);
    for (int y = 0; y < 30; ++y) {
        int r = 29 - y;
        CHECK(b.at(r, 0) == (y % 10 == 0));
        CHECK_FALSE(b.at(r, 1));
        CHECK(b.at(r, 2) == (y % 10 != 0));
    }
    auto p = P({2, 2, 3}, 7);
    auto out = gen_3col_empty(p);
    CHECK(out.audit.pass);
    CHECK(play(out.instance, intended_3col_empty(p, {{0, 1, 2}}), {}).cleared);
    CHECK(brute_force(out.instance, {Model::Generous, false}).verdict == Verdict::Solvable);

    auto boot = gen_3col_empty(p, true);
    GameConfig cfg{Model::Strict, true};
    CHECK(play(boot.instance, intended_3col_empty(p, {{0, 1, 2}}, true), cfg).cleared);
}

TEST_CASE("bootstrap rebuilds canonical boards") {
    Board one(8, 10);
    one.set(9, 3);
    auto seq = gen_bootstrap(one, 8);
    REQUIRE(seq.size() == 1);
    CHECK(seq[0].shape.height() == 9);
    CHECK(seq[0].shape.contains(8, 3));
    CHECK(gen_bootstrap(Board(8, 5), 8).empty());

    Board full = Board::from_lines({"...", "###"});
    CHECK(code_of([&] { gen_bootstrap(full, 3); }) == Errc::Unreachable);
    Board gap = Board::from_lines({"#..", "...", "#.."});
    CHECK(code_of([&] { gen_bootstrap(gap, 3); }) == Errc::Unreachable);

    std::mt19937 rng(11);
    GameConfig cfg{Model::Strict, true};
    for (int k = 0; k < 20; ++k) {
        int h = 1 + static_cast<int>(rng() % 12);
        int filled = static_cast<int>(rng() % (h + 1));
        Board t(8, h);
        for (int r = h - filled; r < h; ++r) {
            do {
                for (int c = 0; c < 8; ++c) t.set(r, c, rng() % 2);
            } while (t.row_full(r) || t.row_empty(r));
        }
        auto pieces = gen_bootstrap(t, 8);
        TetrisInstance inst{bootstrap_board(t, 8), pieces, Goal::Survive};
        Board after;
        auto o = play(inst, Trajectory(pieces.size(), Move{0, 0, std::nullopt}), cfg,
                      [&](int, const Placement&, const StepResult& r) { after = r.board_after; });
        REQUIRE_FALSE(o.lost);
        CHECK((pieces.empty() ? inst.board : after) == t);
    }
}

TEST_CASE("bootstrap rebuilds the lower rows of an 8-column instance") {
    auto out = gen_8col(P({2, 2, 3}, 7));
    Board t(8, 40);
    const auto& b = out.instance.board;
    for (int r = 0; r < 40; ++r)
        for (int c = 0; c < 8; ++c) t.set(r, c, b.at(b.height() - 40 + r, c));
    auto pieces = gen_bootstrap(t, 8);
    TetrisInstance inst{bootstrap_board(t, 8), pieces, Goal::Survive};
    Board after;
    auto o = play(inst, Trajectory(pieces.size(), Move{0, 0, std::nullopt}), {Model::Strict, true},
                  [&](int, const Placement&, const StepResult& r) { after = r.board_after; });
    REQUIRE_FALSE(o.lost);
    CHECK(after == t);
}

TEST_CASE("4-row instance counts") {
    auto out = gen_4row(P({2, 2, 3}, 7), 4);
    CHECK(out.instance.board.height() == 4);
    CHECK(out.instance.pieces.size() == 71);
    CHECK(out.audit.pass);
    CHECK(out.audit.text().find("area_through_t = 280") != std::string::npos);
    CHECK(out.audit.text().find("empty_top_rows_outside_o_lock = 280") != std::string::npos);
    CHECK_FALSE(out.instance.board.has_full_row());
    auto six = gen_4row(P({2, 2, 3}, 7), 6);
    CHECK(six.instance.pieces.size() == 73);
    CHECK(six.audit.pass);
    CHECK(code_of([] { gen_4row(P({2, 2, 3}, 7), 3); }) == Errc::BadRows);
}

TEST_CASE("4-row intended play clears under STRICT") {
    auto p = P({2, 2, 3}, 7);
    for (int rows : {4, 6}) {
        auto out = gen_4row(p, rows);
        auto rep = verify(out.instance, intended_4row(p, {{0, 1, 2}}, rows), {}, out.meta);
        CHECK(rep.goal_met);
        CHECK(rep.outcome.cleared);
        if (rows == 6) {
            REQUIRE(rep.log.size() == 73);
            CHECK(rep.log[71].rows_cleared >= 1);
            CHECK(rep.log[72].rows_cleared >= 1);
        }
    }
    auto q = P({4, 4, 5, 4, 4, 5}, 13);
    auto o = gen_4row(q, 5);
    CHECK(play(o.instance, intended_4row(q, *solve_3partition_bruteforce(q), 5), {}).cleared);
    CHECK(code_of([&] { intended_4row(q, {{0, 1, 3}, {2, 4, 5}}, 4); }) == Errc::BadPartition);
}
