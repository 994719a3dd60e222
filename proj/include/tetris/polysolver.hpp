#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "tetris/engine.hpp"

namespace tetris {

// Stack symbols of the 2-column automaton. A row is either "#." or ".#";
// kBottom marks the floor and never appears in a board.
enum class RowSymbol : uint8_t { LR = 0, RL = 1 };
constexpr int kBottom = 2;
constexpr int kStackSymbols = 3;
constexpr int kEpsilon = -1;

enum class AcceptMode { AnyLive, EmptyStack };

// Strings are written top of stack first.
struct PdaTransition {
    int from = 0;
    int input = kEpsilon;
    std::vector<int> pop;
    int to = 0;
    std::vector<int> push;
};

struct Pda {
    int num_states = 0;
    int initial = 0;
    int dead = -1;
    int num_inputs = 0;
    std::vector<PdaTransition> transitions;
    AcceptMode mode = AcceptMode::AnyLive;
    // AnyLive accepts in any of these states; EmptyStack additionally needs
    // the stack to hold only the bottom marker.
    std::vector<uint8_t> accepting;
    std::vector<int> height;  // rows on the stack for between-piece states, -1 otherwise
    int h = 0;
    int k = 0;
};

// sigma[i] is input symbol i. h == 0 takes the board height; h < 0 caps it
// at |b| + k * max_pieces.
Pda build_pda(const std::vector<PieceKind>& sigma, const Board& b, int h, Goal goal,
              const GameConfig& cfg = {Model::Generous, false}, int max_pieces = 0);

// Nondeterministic simulation over memoized configurations.
bool pda_accepts(const Pda& pda, const std::vector<int>& word);

// Stacks (bottom first) reachable by reading one input symbol from the
// between-piece state for `stack`. *dead is set when some run enters the
// dead state.
std::set<std::vector<int>> pda_piece_successors(const Pda& pda, const std::vector<int>& stack, int input,
                                                bool* dead = nullptr);

struct CnfGrammar {
    int num_nonterminals = 0;
    int num_terminals = 0;
    int start = -1;  // -1: empty language (apart from the nullable flag)
    bool nullable_start = false;
    std::vector<std::array<int, 2>> unary;   // A -> a
    std::vector<std::array<int, 3>> binary;  // A -> B C
};

CnfGrammar pda_to_cnf(const Pda& pda);

bool cyk_accepts(const CnfGrammar& g, const std::vector<int>& word);

struct PolyVerdict {
    bool survivable = false;
    bool clearable = false;
};

// Distinct kinds in order of first appearance, and the word over them.
std::vector<PieceKind> piece_alphabet(const std::vector<PieceKind>& pieces, std::vector<int>* word = nullptr);

// Throws Error(NotTwoColumns) unless the board has 2 columns and is a stack
// of half-filled rows.
PolyVerdict solve_2col(const TetrisInstance& inst, const GameConfig& cfg = {Model::Generous, false}, int h = 0);

PolyVerdict solve_1row(const TetrisInstance& inst);
PolyVerdict solve_1col(const TetrisInstance& inst);

}  // namespace tetris
