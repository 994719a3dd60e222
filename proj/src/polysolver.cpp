#include "tetris/polysolver.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "tetris/error.hpp"

namespace tetris {

namespace {

// Rows of a 2-column board, bottom first. Throws unless it is a stack of
// half rows under empty rows.
std::vector<int> stack_of(const Board& b) {
    if (b.width() != 2) throw Error(Errc::NotTwoColumns, "board has " + std::to_string(b.width()) + " columns");
    std::vector<int> rows;
    bool top = false;
    for (int r = b.height() - 1; r >= 0; --r) {
        bool l = b.at(r, 0), rt = b.at(r, 1);
        if (l && rt) throw Error(Errc::NotTwoColumns, "2-column board has a full row");
        if (!l && !rt) {
            top = true;
            continue;
        }
        if (top) throw Error(Errc::NotTwoColumns, "2-column board has an empty row under a filled one");
        rows.push_back(l ? 0 : 1);
    }
    return rows;
}

enum class Below { Floor, Row, Deep };

struct Pattern {
    int a = 0;  // run symbol
    int m = 0;  // run length
    Below below = Below::Floor;
};

struct Result {
    std::vector<int> rows;  // new rows above the untouched part, top first
    bool operator<(const Result& o) const { return rows < o.rows; }
};

// Every surviving outcome of dropping `kind` onto the pattern with e empty
// rows of headroom.
std::vector<Result> outcomes(const PieceKind& kind, const Pattern& p, int e, const GameConfig& cfg) {
    int base = p.below == Below::Floor ? 0 : 1;
    Board b(2, e + p.m + base);
    for (int i = 0; i < p.m; ++i) b.set(e + i, p.a == 0 ? 0 : 1);
    if (base) b.set(e + p.m, p.a == 0 ? 1 : 0);
    std::set<Result> out;
    for (const auto& pl : enumerate_placements(b, kind, cfg.model)) {
        auto st = lock_piece(b, kind, pl, cfg);
        if (st.lost) continue;
        const Board& a = st.board_after;
        int H = a.height() - base;
        if (base && (a.at(H, 0) != b.at(H, 0) || a.at(H, 1) != b.at(H, 1)))
            throw std::logic_error("pattern floor row changed");
        Result r;
        bool seen = false;
        for (int row = 0; row < H; ++row) {
            bool l = a.at(row, 0), rt = a.at(row, 1);
            if (!l && !rt) {
                if (seen) throw std::logic_error("gap row in 2-column outcome");
                continue;
            }
            seen = true;
            r.rows.push_back(l ? 0 : 1);
        }
        out.insert(r);
    }
    return {out.begin(), out.end()};
}

std::vector<int> top_first(const std::vector<int>& bottom_first) { return {bottom_first.rbegin(), bottom_first.rend()}; }

}  // namespace

std::vector<PieceKind> piece_alphabet(const std::vector<PieceKind>& pieces, std::vector<int>* word) {
    std::vector<PieceKind> sigma;
    if (word) word->clear();
    for (const auto& p : pieces) {
        auto it = std::find(sigma.begin(), sigma.end(), p);
        int idx = static_cast<int>(it - sigma.begin());
        if (it == sigma.end()) sigma.push_back(p);
        if (word) word->push_back(idx);
    }
    return sigma;
}

Pda build_pda(const std::vector<PieceKind>& sigma, const Board& b, int h, Goal goal, const GameConfig& cfg,
              int max_pieces) {
    auto base = stack_of(b);
    int k = 1;
    for (const auto& s : sigma) k = std::max({k, s.shape.height(), s.shape.width()});
    if (h == 0) h = b.height();
    if (h < 0) h = static_cast<int>(base.size()) + k * std::max(max_pieces, 0);

    Pda pda;
    pda.mode = goal == Goal::Survive ? AcceptMode::AnyLive : AcceptMode::EmptyStack;
    pda.num_inputs = static_cast<int>(sigma.size());
    pda.h = h;
    pda.k = k;
    auto add_state = [&](int height) {
        pda.height.push_back(height);
        pda.accepting.push_back(0);
        return pda.num_states++;
    };
    pda.initial = add_state(-1);
    pda.dead = add_state(-1);
    std::vector<int> main(h + 1);
    for (int c = 0; c <= h; ++c) {
        main[c] = add_state(c);
        if (pda.mode == AcceptMode::AnyLive || c == 0) pda.accepting[main[c]] = 1;
    }
    for (int x = 0; x < pda.num_inputs; ++x) pda.transitions.push_back({pda.dead, x, {}, pda.dead, {}});

    int c0 = static_cast<int>(base.size());
    auto init_push = top_first(base);
    init_push.push_back(kBottom);
    pda.transitions.push_back({pda.initial, kEpsilon, {kBottom}, c0 <= h ? main[c0] : pda.dead, init_push});

    std::map<std::tuple<int, int, int, int, int>, std::vector<Result>> memo;
    for (int c = 0; c <= h; ++c) {
        int e = std::min(h - c, k);
        std::vector<Pattern> pats;
        for (int a = 0; a < 2; ++a) {
            if (c >= 1 && c <= k + 1) pats.push_back({a, c, Below::Floor});
            for (int m = 1; m <= k && m + 1 <= c; ++m) pats.push_back({a, m, Below::Row});
            if (c >= k + 2) pats.push_back({a, k + 1, Below::Deep});
        }
        if (c == 0) pats.push_back({0, 0, Below::Floor});
        for (const auto& p : pats) {
            std::vector<int> pop(p.m, p.a);
            std::vector<int> tail;
            // A floor run is known from the height alone.
            if (p.below == Below::Row) tail.push_back(1 - p.a);
            pop.insert(pop.end(), tail.begin(), tail.end());
            int ready = add_state(-1);
            pda.transitions.push_back({main[c], kEpsilon, pop, ready, {}});
            for (int x = 0; x < pda.num_inputs; ++x) {
                auto key = std::make_tuple(x, p.a, p.m, static_cast<int>(p.below), e);
                auto it = memo.find(key);
                if (it == memo.end()) it = memo.emplace(key, outcomes(sigma[x], p, e, cfg)).first;
                if (it->second.empty()) {
                    pda.transitions.push_back({ready, x, {}, pda.dead, {}});
                    continue;
                }
                for (const auto& r : it->second) {
                    int c2 = c - p.m + static_cast<int>(r.rows.size());
                    auto push = r.rows;
                    push.insert(push.end(), tail.begin(), tail.end());
                    pda.transitions.push_back({ready, x, {}, c2 <= h ? main[c2] : pda.dead, push});
                }
            }
        }
    }
    return pda;
}

bool pda_accepts(const Pda& pda, const std::vector<int>& word) {
    using Config = std::pair<int, std::vector<int>>;  // state, stack bottom first
    std::vector<std::vector<const PdaTransition*>> by_state(pda.num_states);
    for (const auto& t : pda.transitions) by_state[t.from].push_back(&t);

    auto step = [&](const Config& cf, int input, std::vector<Config>& out) {
        for (const auto* t : by_state[cf.first]) {
            if (t->input != input) continue;
            const auto& st = cf.second;
            if (t->pop.size() > st.size()) continue;
            bool ok = true;
            for (size_t i = 0; i < t->pop.size() && ok; ++i) ok = st[st.size() - 1 - i] == t->pop[i];
            if (!ok) continue;
            Config n{t->to, {st.begin(), st.end() - static_cast<long>(t->pop.size())}};
            for (auto it = t->push.rbegin(); it != t->push.rend(); ++it) n.second.push_back(*it);
            out.push_back(std::move(n));
        }
    };
    auto closure = [&](std::set<Config> cur) {
        std::deque<Config> q(cur.begin(), cur.end());
        while (!q.empty()) {
            auto cf = q.front();
            q.pop_front();
            std::vector<Config> nx;
            step(cf, kEpsilon, nx);
            for (auto& n : nx)
                if (cur.insert(n).second) q.push_back(n);
        }
        return cur;
    };

    auto cur = closure({{pda.initial, {kBottom}}});
    for (int x : word) {
        std::set<Config> nx;
        for (const auto& cf : cur) {
            std::vector<Config> out;
            step(cf, x, out);
            nx.insert(out.begin(), out.end());
        }
        cur = closure(std::move(nx));
        if (cur.empty()) return false;
    }
    for (const auto& [s, st] : cur) {
        if (!pda.accepting[s]) continue;
        if (pda.mode == AcceptMode::AnyLive) return true;
        if (st.size() == 1 && st[0] == kBottom) return true;
    }
    return false;
}

namespace {

// Pops exactly one symbol; pushes up to two, top first.
struct NTrans {
    int p, a, X, q, n, Y1, Y2;
};

struct Normalized {
    int num_states = 0;
    int start = 0;
    int accept = 0;
    std::vector<NTrans> t;
};

Normalized normalize(const Pda& pda) {
    Normalized out;
    out.num_states = pda.num_states;
    auto fresh = [&] { return out.num_states++; };
    std::map<std::tuple<int, int, std::vector<int>>, int> pop_state;
    std::map<std::pair<int, std::vector<int>>, int> push_state;

    // State that still has to push `rest` (top first) before entering q.
    std::function<int(int, const std::vector<int>&)> pusher = [&](int q, const std::vector<int>& rest) -> int {
        if (rest.empty()) return q;
        auto key = std::make_pair(q, rest);
        auto it = push_state.find(key);
        if (it != push_state.end()) return it->second;
        int s = fresh();
        push_state[key] = s;
        int nxt = pusher(q, std::vector<int>(rest.begin(), rest.end() - 1));
        for (int X = 0; X < kStackSymbols; ++X) out.t.push_back({s, kEpsilon, X, nxt, 2, rest.back(), X});
        return s;
    };

    auto add = [&](const PdaTransition& tr) {
        const auto& w = tr.pop;
        int cur = tr.from;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            int a = i == 0 ? tr.input : kEpsilon;
            std::vector<int> prefix(w.begin(), w.begin() + static_cast<long>(i) + 1);
            auto key = std::make_tuple(tr.from, tr.input, prefix);
            auto it = pop_state.find(key);
            if (it == pop_state.end()) {
                int s = fresh();
                it = pop_state.emplace(key, s).first;
                out.t.push_back({cur, a, w[i], s, 0, 0, 0});
            }
            cur = it->second;
        }
        int a = w.size() <= 1 ? tr.input : kEpsilon;
        const auto& v = tr.push;
        if (v.empty()) {
            out.t.push_back({cur, a, w.back(), tr.to, 0, 0, 0});
        } else {
            int nxt = pusher(tr.to, std::vector<int>(v.begin(), v.end() - 1));
            out.t.push_back({cur, a, w.back(), nxt, 1, v.back(), 0});
        }
    };

    for (const auto& tr : pda.transitions) {
        if (!tr.pop.empty()) {
            add(tr);
            continue;
        }
        for (int X = 0; X < kStackSymbols; ++X) {
            auto t2 = tr;
            t2.pop = {X};
            t2.push.push_back(X);
            add(t2);
        }
    }

    out.start = pda.initial;
    out.accept = fresh();
    if (pda.mode == AcceptMode::AnyLive) {
        int drain = fresh();
        for (int s = 0; s < pda.num_states; ++s) {
            if (!pda.accepting[s]) continue;
            for (int X = 0; X < kBottom; ++X) out.t.push_back({s, kEpsilon, X, drain, 0, 0, 0});
            out.t.push_back({s, kEpsilon, kBottom, out.accept, 0, 0, 0});
        }
        for (int X = 0; X < kBottom; ++X) out.t.push_back({drain, kEpsilon, X, drain, 0, 0, 0});
        out.t.push_back({drain, kEpsilon, kBottom, out.accept, 0, 0, 0});
    } else {
        for (int s = 0; s < pda.num_states; ++s)
            if (pda.accepting[s]) out.t.push_back({s, kEpsilon, kBottom, out.accept, 0, 0, 0});
    }
    return out;
}

// Context-free productions before normal form: lhs -> [a] rhs..., with
// a == kEpsilon when absent.
struct Prod {
    int lhs;
    int a;
    std::vector<int> rhs;
};

// Keeps productive nonterminals reachable from start; renumbers densely.
// Returns the new start or -1.
int reduce(std::vector<Prod>& prods, int& n, int start) {
    std::vector<uint8_t> productive(n, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : prods) {
            if (productive[p.lhs]) continue;
            bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](int s) { return productive[s] != 0; });
            if (ok) productive[p.lhs] = 1, changed = true;
        }
    }
    if (start < 0 || !productive[start]) {
        prods.clear();
        n = 0;
        return -1;
    }
    std::vector<std::vector<const Prod*>> by_lhs(n);
    for (const auto& p : prods)
        if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](int s) { return productive[s] != 0; }))
            by_lhs[p.lhs].push_back(&p);
    std::vector<int> id(n, -1);
    std::vector<int> order{start};
    id[start] = 0;
    for (size_t i = 0; i < order.size(); ++i)
        for (const auto* p : by_lhs[order[i]])
            for (int s : p->rhs)
                if (id[s] < 0) id[s] = static_cast<int>(order.size()), order.push_back(s);
    std::vector<Prod> kept;
    for (int old : order)
        for (const auto* p : by_lhs[old]) {
            Prod q{id[old], p->a, {}};
            for (int s : p->rhs) q.rhs.push_back(id[s]);
            kept.push_back(std::move(q));
        }
    prods = std::move(kept);
    n = static_cast<int>(order.size());
    return 0;
}

}  // namespace

std::set<std::vector<int>> pda_piece_successors(const Pda& pda, const std::vector<int>& stack, int input,
                                                bool* dead) {
    using Config = std::pair<int, std::vector<int>>;
    auto fire = [&](const Config& cf, int x) {
        std::vector<Config> out;
        for (const auto& t : pda.transitions) {
            if (t.from != cf.first || t.input != x) continue;
            const auto& st = cf.second;
            if (t.pop.size() > st.size()) continue;
            bool ok = true;
            for (size_t i = 0; i < t.pop.size() && ok; ++i) ok = st[st.size() - 1 - i] == t.pop[i];
            if (!ok) continue;
            Config n{t.to, {st.begin(), st.end() - static_cast<long>(t.pop.size())}};
            for (auto it = t.push.rbegin(); it != t.push.rend(); ++it) n.second.push_back(*it);
            out.push_back(std::move(n));
        }
        return out;
    };
    int from = -1;
    for (int s = 0; s < pda.num_states; ++s)
        if (pda.height[s] == static_cast<int>(stack.size()) - 1) from = s;
    std::set<std::vector<int>> out;
    if (from < 0) return out;
    for (const auto& ready : fire({from, stack}, kEpsilon))
        for (auto& n : fire(ready, input)) {
            if (n.first == pda.dead) {
                if (dead) *dead = true;
                continue;
            }
            out.insert(std::move(n.second));
        }
    return out;
}

CnfGrammar pda_to_cnf(const Pda& pda) {
    auto nz = normalize(pda);
    const int S = nz.num_states;

    // Saturate the productive triples [p X q]: from p with X on top, some run
    // ends in q with X popped.
    std::unordered_map<long, int> tid;
    std::vector<std::array<int, 3>> triples;
    auto key = [&](int p, int X, int q) { return (static_cast<long>(p) * kStackSymbols + X) * S + q; };
    std::vector<std::vector<int>> out_of(static_cast<size_t>(S) * kStackSymbols);  // (p,X) -> q list
    std::vector<std::vector<int>> into(static_cast<size_t>(S) * kStackSymbols);    // (X,q) -> p list
    std::vector<std::vector<const NTrans*>> by_top(static_cast<size_t>(S) * kStackSymbols);  // (q,Y1)
    std::vector<std::vector<const NTrans*>> by_second(kStackSymbols);                         // Y2
    for (const auto& t : nz.t) {
        if (t.n >= 1) by_top[static_cast<size_t>(t.q) * kStackSymbols + t.Y1].push_back(&t);
        if (t.n == 2) by_second[t.Y2].push_back(&t);
    }
    std::deque<int> work;
    auto found = [&](int p, int X, int q) {
        if (tid.emplace(key(p, X, q), static_cast<int>(triples.size())).second) {
            triples.push_back({p, X, q});
            out_of[static_cast<size_t>(p) * kStackSymbols + X].push_back(q);
            into[static_cast<size_t>(q) * kStackSymbols + X].push_back(p);
            work.push_back(static_cast<int>(triples.size()) - 1);
        }
    };
    for (const auto& t : nz.t)
        if (t.n == 0) found(t.p, t.X, t.q);
    while (!work.empty()) {
        auto [p, X, q] = triples[work.front()];
        work.pop_front();
        // As the first (or only) pushed symbol: t pushes X from state p.
        for (const auto* t : by_top[static_cast<size_t>(p) * kStackSymbols + X]) {
            if (t->n == 1) {
                found(t->p, t->X, q);
            } else {
                auto outs = out_of[static_cast<size_t>(q) * kStackSymbols + t->Y2];
                for (int r : outs) found(t->p, t->X, r);
            }
        }
        // As the second pushed symbol, popped from p.
        for (const auto* t : by_second[X]) {
            if (tid.count(key(t->q, t->Y1, p))) found(t->p, t->X, q);
        }
    }

    int start = -1;
    auto si = tid.find(key(nz.start, kBottom, nz.accept));
    if (si != tid.end()) start = si->second;

    std::vector<Prod> prods;
    for (const auto& t : nz.t) {
        if (t.n == 0) {
            prods.push_back({tid.at(key(t.p, t.X, t.q)), t.a, {}});
        } else if (t.n == 1) {
            for (int r : out_of[static_cast<size_t>(t.q) * kStackSymbols + t.Y1])
                prods.push_back({tid.at(key(t.p, t.X, r)), t.a, {tid.at(key(t.q, t.Y1, r))}});
        } else {
            for (int s : out_of[static_cast<size_t>(t.q) * kStackSymbols + t.Y1])
                for (int r : out_of[static_cast<size_t>(s) * kStackSymbols + t.Y2])
                    prods.push_back({tid.at(key(t.p, t.X, r)), t.a,
                                     {tid.at(key(t.q, t.Y1, s)), tid.at(key(s, t.Y2, r))}});
        }
    }
    int n = static_cast<int>(triples.size());
    CnfGrammar g;
    g.num_terminals = pda.num_inputs;
    start = reduce(prods, n, start);
    if (start < 0) return g;

    // Nullable nonterminals, then drop them from right-hand sides.
    std::vector<uint8_t> nullable(n, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : prods) {
            if (nullable[p.lhs] || p.a != kEpsilon) continue;
            if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](int s) { return nullable[s] != 0; }))
                nullable[p.lhs] = 1, changed = true;
        }
    }
    g.nullable_start = nullable[start];

    // Symbols: terminals are encoded as -(a + 1).
    std::set<std::pair<int, std::vector<int>>> rules;
    for (const auto& p : prods) {
        std::vector<int> syms;
        if (p.a != kEpsilon) syms.push_back(-(p.a + 1));
        syms.insert(syms.end(), p.rhs.begin(), p.rhs.end());
        int m = static_cast<int>(syms.size());
        for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<int> v;
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                if (mask >> i & 1) {
                    if (syms[i] < 0 || !nullable[syms[i]]) ok = false;
                } else {
                    v.push_back(syms[i]);
                }
            }
            if (ok && !v.empty()) rules.insert({p.lhs, v});
        }
    }

    // Unit closure.
    std::vector<std::vector<int>> unit(n);
    for (const auto& [a, v] : rules)
        if (v.size() == 1 && v[0] >= 0 && v[0] != a) unit[a].push_back(v[0]);
    std::vector<std::vector<const std::vector<int>*>> nonunit(n);
    for (const auto& [a, v] : rules)
        if (!(v.size() == 1 && v[0] >= 0)) nonunit[a].push_back(&v);

    std::vector<Prod> flat;
    std::vector<int> mark(n, -1);
    for (int a = 0; a < n; ++a) {
        std::vector<int> reach{a};
        mark[a] = a;
        for (size_t i = 0; i < reach.size(); ++i)
            for (int b : unit[reach[i]])
                if (mark[b] != a) mark[b] = a, reach.push_back(b);
        std::set<std::vector<int>> mine;
        for (int b : reach)
            for (const auto* v : nonunit[b]) mine.insert(*v);
        for (const auto& v : mine) flat.push_back({a, kEpsilon, v});
    }

    // Binarize: terminals inside longer rules get wrapper nonterminals.
    int next = n;
    std::map<int, int> wrap;
    std::map<std::pair<int, int>, int> pair_nt;
    std::vector<Prod> cnf;
    auto sym = [&](int s) {
        if (s >= 0) return s;
        auto it = wrap.find(s);
        if (it != wrap.end()) return it->second;
        int w = next++;
        wrap[s] = w;
        cnf.push_back({w, -s - 1, {}});
        return w;
    };
    for (const auto& p : flat) {
        const auto& v = p.rhs;
        if (v.size() == 1) {
            cnf.push_back({p.lhs, -v[0] - 1, {}});
        } else if (v.size() == 2) {
            cnf.push_back({p.lhs, kEpsilon, {sym(v[0]), sym(v[1])}});
        } else {
            auto pr = std::make_pair(sym(v[1]), sym(v[2]));
            auto it = pair_nt.find(pr);
            if (it == pair_nt.end()) {
                it = pair_nt.emplace(pr, next++).first;
                cnf.push_back({it->second, kEpsilon, {pr.first, pr.second}});
            }
            cnf.push_back({p.lhs, kEpsilon, {sym(v[0]), it->second}});
        }
    }
    n = next;
    start = reduce(cnf, n, start);
    g.num_nonterminals = n;
    g.start = start;
    for (const auto& p : cnf) {
        if (p.rhs.empty())
            g.unary.push_back({p.lhs, p.a});
        else
            g.binary.push_back({p.lhs, p.rhs[0], p.rhs[1]});
    }
    return g;
}

bool cyk_accepts(const CnfGrammar& g, const std::vector<int>& word) {
    if (word.empty()) return g.nullable_start;
    if (g.start < 0) return false;
    const int n = static_cast<int>(word.size());
    const int N = g.num_nonterminals;
    const int words = (N + 63) / 64;
    std::vector<std::vector<std::pair<int, int>>> by_left(N);  // B -> (A, C)
    for (const auto& r : g.binary) by_left[r[1]].push_back({r[0], r[2]});
    std::vector<std::vector<int>> by_term(g.num_terminals);
    for (const auto& u : g.unary)
        if (u[1] >= 0 && u[1] < g.num_terminals) by_term[u[1]].push_back(u[0]);

    // table[i][len-1]: bitset of nonterminals deriving word[i, i+len).
    std::vector<uint64_t> table(static_cast<size_t>(n) * n * words, 0);
    auto cell = [&](int i, int len) { return &table[(static_cast<size_t>(i) * n + (len - 1)) * words]; };
    std::vector<std::vector<std::vector<int>>> lists(n, std::vector<std::vector<int>>(n));
    auto add = [&](int i, int len, int A) {
        uint64_t* c = cell(i, len);
        if (c[A >> 6] >> (A & 63) & 1) return;
        c[A >> 6] |= uint64_t{1} << (A & 63);
        lists[i][len - 1].push_back(A);
    };
    for (int i = 0; i < n; ++i) {
        if (word[i] < 0 || word[i] >= g.num_terminals) return false;
        for (int A : by_term[word[i]]) add(i, 1, A);
    }
    for (int len = 2; len <= n; ++len)
        for (int i = 0; i + len <= n; ++i)
            for (int l = 1; l < len; ++l) {
                const uint64_t* right = cell(i + l, len - l);
                for (int B : lists[i][l - 1])
                    for (auto [A, C] : by_left[B])
                        if (right[C >> 6] >> (C & 63) & 1) add(i, len, A);
            }
    const uint64_t* top = cell(0, n);
    return top[g.start >> 6] >> (g.start & 63) & 1;
}

PolyVerdict solve_2col(const TetrisInstance& inst, const GameConfig& cfg, int h) {
    std::vector<int> word;
    auto sigma = piece_alphabet(inst.pieces, &word);
    int n = static_cast<int>(word.size());
    PolyVerdict v;
    v.survivable = cyk_accepts(pda_to_cnf(build_pda(sigma, inst.board, h, Goal::Survive, cfg, n)), word);
    if (v.survivable)
        v.clearable = cyk_accepts(pda_to_cnf(build_pda(sigma, inst.board, h, Goal::Clear, cfg, n)), word);
    return v;
}

namespace {

// Length of the horizontal bar a kind can lie as, or 0.
int bar_length(const PieceKind& k) {
    const auto& s = k.shape;
    return s.is_bar() ? s.size() : 0;
}

}  // namespace

PolyVerdict solve_1row(const TetrisInstance& inst) {
    const Board& b = inst.board;
    if (b.height() != 1) throw Error(Errc::BadRows, "1-row solver needs a board of height 1");
    const int W = b.width();
    const int n = static_cast<int>(inst.pieces.size());
    std::vector<int> len(n);
    for (int i = 0; i < n; ++i) {
        int l = bar_length(inst.pieces[i]);
        len[i] = l > 0 && l <= W ? l : 0;
    }

    // Rounds on an empty row from piece i: each round ends exactly when the
    // prefix area reaches W.
    std::vector<int> memo_state(n + 1, -1);
    std::vector<PolyVerdict> memo(n + 1);
    auto from_empty = [&](int i) {
        if (memo_state[i] >= 0) return memo[i];
        int used = 0;
        PolyVerdict v{true, true};
        for (int j = i; j < n; ++j) {
            if (!len[j] || used + len[j] > W) {
                v = {false, false};
                break;
            }
            used += len[j];
            if (used == W) used = 0;
        }
        if (v.survivable) v.clearable = used == 0;
        memo_state[i] = 1;
        return memo[i] = v;
    };
    if (b.row_empty(0)) return from_empty(0);

    std::vector<int> gaps;
    for (int c = 0, run = 0; c <= W; ++c) {
        if (c < W && !b.at(0, c)) {
            ++run;
        } else {
            if (run) gaps.push_back(run);
            run = 0;
        }
    }
    bool same = true;
    for (int i = 1; i < n; ++i) same = same && len[i] == len[0];

    // First round: fill the gaps; the row clears once every gap is used up.
    if (same && n > 0 && len[0] > 0) {
        int L = len[0];
        long slots = 0;
        bool exact = true;
        for (int g : gaps) slots += g / L, exact = exact && g % L == 0;
        if (n <= slots && !(exact && n == slots)) return {true, false};
        if (!exact) return {false, false};
        return from_empty(static_cast<int>(slots));
    }

    std::map<std::pair<int, std::vector<int>>, PolyVerdict> seen;
    std::function<PolyVerdict(int, std::vector<int>)> go = [&](int i, std::vector<int> g) -> PolyVerdict {
        g.erase(std::remove(g.begin(), g.end(), 0), g.end());
        if (g.empty()) return from_empty(i);
        if (i == n) return {true, false};
        std::sort(g.begin(), g.end());
        auto key = std::make_pair(i, g);
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        PolyVerdict best;
        if (len[i]) {
            for (size_t j = 0; j < g.size(); ++j) {
                if (g[j] < len[i] || (j > 0 && g[j] == g[j - 1])) continue;
                auto h = g;
                h[j] -= len[i];
                auto r = go(i + 1, h);
                best.survivable = best.survivable || r.survivable;
                best.clearable = best.clearable || r.clearable;
                if (best.clearable) break;
            }
        }
        return seen[key] = best;
    };
    if (gaps.empty()) return {n == 0, false};
    return go(0, gaps);
}

PolyVerdict solve_1col(const TetrisInstance& inst) {
    const Board& b = inst.board;
    if (b.width() != 1) throw Error(Errc::NotTwoColumns, "1-column solver needs a board of width 1");
    int room = b.height();
    for (int r = 0; r < b.height(); ++r)
        if (b.at(r, 0)) {
            room = r;
            break;
        }
    for (const auto& p : inst.pieces) {
        int l = bar_length(p);
        if (!l || l > room) return {false, false};
        room = b.height();
    }
    return {true, !inst.pieces.empty() || b.empty()};
}

}  // namespace tetris
