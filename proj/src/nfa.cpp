#include "rif/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "nfa_detail.hpp"
#include "rif/error.hpp"
#include "rif/limits.hpp"

namespace rif {

using detail::Closure;
using detail::SetTable;
using detail::StateSet;

// ---------------------------------------------------------------------------
// Nfa

Nfa::Nfa(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
    if (!alphabet_)
        throw PreconditionError("automaton requires an alphabet");
}

State Nfa::add_state() {
    out_.emplace_back();
    initial_.push_back(0);
    final_.push_back(0);
    return static_cast<State>(out_.size() - 1);
}

State Nfa::add_states(std::size_t count) {
    auto first = static_cast<State>(out_.size());
    out_.resize(out_.size() + count);
    initial_.resize(out_.size(), 0);
    final_.resize(out_.size(), 0);
    return first;
}

void Nfa::add_transition(State src, Symbol label, State dst) {
    if (src >= num_states() || dst >= num_states())
        throw PreconditionError("transition endpoint out of range");
    if (label != kEpsilon && label >= alphabet_->size())
        throw AlphabetError("transition label " + std::to_string(label) + " outside the alphabet");
    out_[src].push_back({label, dst});
}

void Nfa::set_initial(State s, bool value) { initial_.at(s) = value ? 1 : 0; }
void Nfa::set_final(State s, bool value) { final_.at(s) = value ? 1 : 0; }

std::size_t Nfa::num_transitions() const noexcept {
    std::size_t n = 0;
    for (const auto& e : out_)
        n += e.size();
    return n;
}

std::vector<State> Nfa::initial_states() const {
    std::vector<State> out;
    for (State s = 0; s < num_states(); ++s)
        if (initial_[s])
            out.push_back(s);
    return out;
}

std::vector<State> Nfa::final_states() const {
    std::vector<State> out;
    for (State s = 0; s < num_states(); ++s)
        if (final_[s])
            out.push_back(s);
    return out;
}

std::vector<Transition> Nfa::transitions() const {
    std::vector<Transition> out;
    for (State s = 0; s < num_states(); ++s)
        for (const auto& e : out_[s])
            out.push_back({s, e.label, e.dst});
    std::sort(out.begin(), out.end());
    return out;
}

bool Nfa::has_epsilon() const noexcept {
    for (const auto& edges : out_)
        for (const auto& e : edges)
            if (e.label == kEpsilon)
                return true;
    return false;
}

// ---------------------------------------------------------------------------
// detail

namespace detail {

void sort_unique(StateSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

Closure::Closure(const Nfa& a) : nfa_(a), closure_(a.num_states()) {
    std::vector<State> stack;
    std::vector<std::uint8_t> seen(a.num_states(), 0);
    for (State s = 0; s < a.num_states(); ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        StateSet& c = closure_[s];
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            State q = stack.back();
            stack.pop_back();
            c.push_back(q);
            for (const auto& e : a.out(q))
                if (e.label == kEpsilon && !seen[e.dst]) {
                    seen[e.dst] = 1;
                    stack.push_back(e.dst);
                }
        }
        std::sort(c.begin(), c.end());
    }
}

StateSet Closure::of(const StateSet& seeds) const {
    StateSet out;
    for (State s : seeds)
        out.insert(out.end(), closure_[s].begin(), closure_[s].end());
    sort_unique(out);
    return out;
}

StateSet Closure::post(const StateSet& set, Symbol a) const {
    StateSet out;
    for (State s : set)
        for (const auto& e : nfa_.out(s))
            if (e.label == a)
                out.insert(out.end(), closure_[e.dst].begin(), closure_[e.dst].end());
    sort_unique(out);
    return out;
}

StateSet Closure::initial() const { return of(nfa_.initial_states()); }

bool Closure::any_final(const StateSet& set) const {
    return std::any_of(set.begin(), set.end(), [&](State s) { return nfa_.is_final(s); });
}

} // namespace detail

// ---------------------------------------------------------------------------
// Elementary languages

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view operation) {
    if (a == b || a->same_symbols(*b))
        return;
    throw AlphabetMismatch(std::string(operation) + ": operands use different alphabets");
}

Nfa empty_language(AlphabetPtr alphabet) { return Nfa(std::move(alphabet)); }

Nfa epsilon_language(AlphabetPtr alphabet) {
    Nfa out(std::move(alphabet));
    State s = out.add_state();
    out.set_initial(s);
    out.set_final(s);
    return out;
}

Nfa symbol_star(AlphabetPtr alphabet, const SymbolSet& symbols) {
    Nfa out(std::move(alphabet));
    State s = out.add_state();
    out.set_initial(s);
    out.set_final(s);
    for (Symbol a : symbols)
        out.add_transition(s, a, s);
    return out;
}

Nfa universal(AlphabetPtr alphabet) {
    auto all = alphabet->all();
    return symbol_star(std::move(alphabet), all);
}

Nfa word_language(AlphabetPtr alphabet, const Word& word) {
    Nfa out(std::move(alphabet));
    State s = out.add_state();
    out.set_initial(s);
    for (Symbol a : word) {
        State t = out.add_state();
        out.add_transition(s, a, t);
        s = t;
    }
    out.set_final(s);
    return out;
}

Nfa finite_language(AlphabetPtr alphabet, std::span<const Word> words) {
    // prefix tree
    Nfa out(alphabet);
    State root = out.add_state();
    out.set_initial(root);
    std::map<std::pair<State, Symbol>, State> child;
    for (const auto& w : words) {
        State s = root;
        for (Symbol a : w) {
            auto [it, inserted] = child.emplace(std::pair{s, a}, 0);
            if (inserted) {
                it->second = out.add_state();
                out.add_transition(s, a, it->second);
            }
            s = it->second;
        }
        out.set_final(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rational operations

namespace {

// Copies `a` into `out`, returning the offset of its states.
State embed(Nfa& out, const Nfa& a, bool keep_initial, bool keep_final) {
    State base = out.add_states(a.num_states());
    for (State s = 0; s < a.num_states(); ++s) {
        for (const auto& e : a.out(s))
            out.add_transition(base + s, e.label, base + e.dst);
        if (keep_initial && a.is_initial(s))
            out.set_initial(base + s);
        if (keep_final && a.is_final(s))
            out.set_final(base + s);
    }
    return base;
}

} // namespace

Nfa unite(const Nfa& a, const Nfa& b) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "union");
    Nfa out(a.alphabet());
    embed(out, a, true, true);
    embed(out, b, true, true);
    return out;
}

Nfa concat(const Nfa& a, const Nfa& b) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "concatenation");
    Nfa out(a.alphabet());
    State ba = embed(out, a, true, false);
    State bb = embed(out, b, false, true);
    for (State f : a.final_states())
        for (State i : b.initial_states())
            out.add_transition(ba + f, kEpsilon, bb + i);
    return out;
}

Nfa star(const Nfa& a) {
    Nfa out(a.alphabet());
    State hub = out.add_state();
    out.set_initial(hub);
    out.set_final(hub);
    State base = embed(out, a, false, false);
    for (State i : a.initial_states())
        out.add_transition(hub, kEpsilon, base + i);
    for (State f : a.final_states())
        out.add_transition(base + f, kEpsilon, hub);
    return out;
}

Nfa remove_epsilon(const Nfa& a) {
    if (!a.has_epsilon())
        return a;
    Closure cl(a);
    Nfa out(a.alphabet());
    out.add_states(a.num_states());
    for (State s = 0; s < a.num_states(); ++s) {
        if (a.is_initial(s))
            out.set_initial(s);
        std::vector<Edge> edges;
        for (State q : cl.of(s)) {
            if (a.is_final(q))
                out.set_final(s);
            for (const auto& e : a.out(q))
                if (e.label != kEpsilon)
                    edges.push_back(e);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const auto& e : edges)
            out.add_transition(s, e.label, e.dst);
    }
    return trim(out);
}

Nfa trim(const Nfa& a) {
    const std::size_t n = a.num_states();
    std::vector<std::uint8_t> fwd(n, 0), bwd(n, 0);
    std::vector<std::vector<State>> rev(n);
    std::vector<State> stack;
    for (State s = 0; s < n; ++s)
        for (const auto& e : a.out(s))
            rev[e.dst].push_back(s);
    for (State s : a.initial_states()) {
        fwd[s] = 1;
        stack.push_back(s);
    }
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (const auto& e : a.out(s))
            if (!fwd[e.dst]) {
                fwd[e.dst] = 1;
                stack.push_back(e.dst);
            }
    }
    for (State s : a.final_states()) {
        bwd[s] = 1;
        stack.push_back(s);
    }
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (State p : rev[s])
            if (!bwd[p]) {
                bwd[p] = 1;
                stack.push_back(p);
            }
    }
    std::vector<State> rename(n, kEpsilon);
    Nfa out(a.alphabet());
    for (State s = 0; s < n; ++s)
        if (fwd[s] && bwd[s])
            rename[s] = out.add_state();
    for (State s = 0; s < n; ++s) {
        if (rename[s] == kEpsilon)
            continue;
        out.set_initial(rename[s], a.is_initial(s));
        out.set_final(rename[s], a.is_final(s));
        for (const auto& e : a.out(s))
            if (rename[e.dst] != kEpsilon)
                out.add_transition(rename[s], e.label, rename[e.dst]);
    }
    return out;
}

Nfa determinize(const Nfa& a) {
    Closure cl(a);
    const std::size_t k = a.alphabet()->size();
    SetTable table;
    Nfa out(a.alphabet());
    table.intern(cl.initial());
    out.add_state();
    out.set_initial(0);
    for (State id = 0; id < table.size(); ++id) {
        StateSet current = table.at(id);
        out.set_final(id, cl.any_final(current));
        for (Symbol sym = 0; sym < k; ++sym) {
            auto [next, inserted] = table.intern(cl.post(current, sym));
            if (inserted) {
                check_state_limit(table.size(), "subset construction");
                out.add_state();
            }
            out.add_transition(id, sym, next);
        }
    }
    return out;
}

Nfa minimize(const Nfa& a) {
    Nfa d = determinize(a);
    const std::size_t n = d.num_states();
    const std::size_t k = d.alphabet()->size();
    // delta[s*k + sym]
    std::vector<State> delta(n * k);
    for (State s = 0; s < n; ++s)
        for (const auto& e : d.out(s))
            delta[s * k + e.label] = e.dst;

    // Moore refinement.
    std::vector<State> cls(n);
    for (State s = 0; s < n; ++s)
        cls[s] = d.is_final(s) ? 1 : 0;
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<State>, State> sig_ids;
        std::vector<State> next(n);
        for (State s = 0; s < n; ++s) {
            std::vector<State> sig;
            sig.reserve(k + 1);
            sig.push_back(cls[s]);
            for (std::size_t sym = 0; sym < k; ++sym)
                sig.push_back(cls[delta[s * k + sym]]);
            auto [it, _] = sig_ids.emplace(std::move(sig), static_cast<State>(sig_ids.size()));
            next[s] = it->second;
        }
        bool stable = sig_ids.size() == classes;
        classes = sig_ids.size();
        cls = std::move(next);
        if (stable)
            break;
    }

    // Renumber classes in BFS order from the initial state for a canonical result.
    std::vector<State> order(classes, kEpsilon);
    std::vector<State> rep;
    std::deque<State> queue{0};
    order[cls[0]] = 0;
    rep.push_back(0);
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (std::size_t sym = 0; sym < k; ++sym) {
            State t = delta[s * k + sym];
            if (order[cls[t]] == kEpsilon) {
                order[cls[t]] = static_cast<State>(rep.size());
                rep.push_back(t);
                queue.push_back(t);
            }
        }
    }
    Nfa out(d.alphabet());
    out.add_states(rep.size());
    out.set_initial(0);
    for (State c = 0; c < rep.size(); ++c) {
        State s = rep[c];
        out.set_final(c, d.is_final(s));
        for (std::size_t sym = 0; sym < k; ++sym)
            out.add_transition(c, static_cast<Symbol>(sym), order[cls[delta[s * k + sym]]]);
    }
    return out;
}

Nfa complement(const Nfa& a) {
    Nfa d = determinize(a);
    for (State s = 0; s < d.num_states(); ++s)
        d.set_final(s, !d.is_final(s));
    return d;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "intersection");
    Nfa ea = remove_epsilon(a);
    Nfa eb = remove_epsilon(b);
    Nfa out(a.alphabet());
    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::pair<State, State>> pairs;
    auto id_of = [&](State p, State q) {
        auto key = (std::uint64_t{p} << 32) | q;
        auto [it, inserted] = ids.emplace(key, static_cast<State>(pairs.size()));
        if (inserted) {
            pairs.emplace_back(p, q);
            out.add_state();
            check_state_limit(pairs.size(), "intersection product");
        }
        return it->second;
    };
    for (State p : ea.initial_states())
        for (State q : eb.initial_states())
            out.set_initial(id_of(p, q));
    for (State id = 0; id < pairs.size(); ++id) {
        auto [p, q] = pairs[id];
        out.set_final(id, ea.is_final(p) && eb.is_final(q));
        for (const auto& e1 : ea.out(p))
            for (const auto& e2 : eb.out(q))
                if (e1.label == e2.label)
                    out.add_transition(id, e1.label, id_of(e1.dst, e2.dst));
    }
    return trim(out);
}

Nfa rebind(const Nfa& a, AlphabetPtr target) {
    std::vector<Symbol> map(a.alphabet()->size());
    for (Symbol s = 0; s < map.size(); ++s) {
        auto t = target->find(a.alphabet()->name(s));
        if (!t)
            throw AlphabetMismatch("symbol '" + a.alphabet()->name(s) + "' missing from target alphabet");
        map[s] = *t;
    }
    Nfa out(std::move(target));
    out.add_states(a.num_states());
    for (State s = 0; s < a.num_states(); ++s) {
        out.set_initial(s, a.is_initial(s));
        out.set_final(s, a.is_final(s));
        for (const auto& e : a.out(s))
            out.add_transition(s, e.label == kEpsilon ? kEpsilon : map[e.label], e.dst);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Queries

bool accepts(const Nfa& a, const Word& word) {
    Closure cl(a);
    StateSet cur = cl.initial();
    for (Symbol s : word) {
        if (cur.empty())
            return false;
        cur = cl.post(cur, s);
    }
    return cl.any_final(cur);
}

namespace {

Word rebuild(const std::vector<std::pair<State, Symbol>>& parent, State node) {
    Word w;
    while (parent[node].first != kEpsilon) {
        w.push_back(parent[node].second);
        node = parent[node].first;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

} // namespace

EmptinessResult is_empty(const Nfa& a) {
    // Breadth-first search over groups of states that share their least word.
    // Groups are expanded in length-lexicographic order of those words and by
    // symbol, so the first group holding a final state gives the least
    // accepted word.
    Nfa e = remove_epsilon(a);
    std::vector<std::uint8_t> seen(e.num_states(), 0);
    std::vector<StateSet> groups;
    std::vector<std::pair<State, Symbol>> parent;
    StateSet init = e.initial_states();
    for (State s : init)
        seen[s] = 1;
    if (init.empty())
        return {true, std::nullopt};
    groups.push_back(init);
    parent.emplace_back(kEpsilon, kEpsilon);
    const std::size_t k = e.alphabet()->size();
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (State s : groups[g])
            if (e.is_final(s))
                return {false, Witness{rebuild(parent, static_cast<State>(g)), Operand::first}};
        std::vector<StateSet> by_symbol(k);
        for (State s : groups[g])
            for (const auto& edge : e.out(s))
                by_symbol[edge.label].push_back(edge.dst);
        for (Symbol sym = 0; sym < k; ++sym) {
            StateSet next;
            for (State t : by_symbol[sym])
                if (!seen[t]) {
                    seen[t] = 1;
                    next.push_back(t);
                }
            if (next.empty())
                continue;
            detail::sort_unique(next);
            groups.push_back(std::move(next));
            parent.emplace_back(static_cast<State>(g), sym);
        }
    }
    return {true, std::nullopt};
}

namespace {

InclusionResult includes_by_complement(const Nfa& a, const Nfa& b) {
    auto r = is_empty(intersect(a, complement(b)));
    if (r.empty)
        return {true, std::nullopt};
    return {false, r.witness};
}

InclusionResult includes_by_antichain(const Nfa& a, const Nfa& b) {
    // Search over pairs (P, S): P the states of `a` reached by some word w that
    // are not subsumed, S the macrostate of `b` after w. A state p is pruned
    // when a pair (p, S') with S' ⊆ S was already visited: every continuation
    // that is a counterexample from (p, S) is one from (p, S') too, and the
    // earlier word is not larger.
    Nfa ea = remove_epsilon(a);
    Closure cb(b);
    const std::size_t nb = b.num_states();
    const std::size_t k = ea.alphabet()->size();

    struct Group {
        StateSet p;
        State macro;
    };
    SetTable macros;
    std::vector<detail::Bits> macro_bits;
    std::vector<Group> groups;
    std::vector<std::pair<State, Symbol>> parent;
    std::vector<std::vector<State>> visited(ea.num_states());
    std::size_t pairs = 0;

    auto macro_id = [&](const StateSet& set) {
        auto [id, inserted] = macros.intern(set);
        if (inserted)
            macro_bits.emplace_back(nb, set);
        return id;
    };
    auto admit = [&](State p, State m) {
        for (State v : visited[p])
            if (macro_bits[v].subset_of(macro_bits[m]))
                return false;
        visited[p].push_back(m);
        check_state_limit(++pairs, "inclusion search");
        return true;
    };
    auto add_group = [&](StateSet ps, State m, State from, Symbol sym) -> std::optional<Witness> {
        StateSet kept;
        for (State p : ps)
            if (admit(p, m))
                kept.push_back(p);
        if (kept.empty())
            return std::nullopt;
        bool rejected = !cb.any_final(macros.at(m));
        groups.push_back({std::move(kept), m});
        parent.emplace_back(from, sym);
        if (rejected)
            for (State p : groups.back().p)
                if (ea.is_final(p))
                    return Witness{rebuild(parent, static_cast<State>(groups.size() - 1)), Operand::first};
        return std::nullopt;
    };

    if (auto w = add_group(ea.initial_states(), macro_id(cb.initial()), kEpsilon, kEpsilon))
        return {false, w};
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::vector<StateSet> by_symbol(k);
        for (State p : groups[g].p)
            for (const auto& e : ea.out(p))
                by_symbol[e.label].push_back(e.dst);
        for (Symbol sym = 0; sym < k; ++sym) {
            if (by_symbol[sym].empty())
                continue;
            detail::sort_unique(by_symbol[sym]);
            State m = macro_id(cb.post(macros.at(groups[g].macro), sym));
            if (auto w = add_group(std::move(by_symbol[sym]), m, static_cast<State>(g), sym))
                return {false, w};
        }
    }
    return {true, std::nullopt};
}

} // namespace

InclusionResult includes(const Nfa& a, const Nfa& b, InclusionEngine engine) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "inclusion");
    if (engine == InclusionEngine::complement)
        return includes_by_complement(a, b);
    return includes_by_antichain(a, b);
}

bool equivalent(const Nfa& a, const Nfa& b) { return includes(a, b).holds && includes(b, a).holds; }

std::vector<Word> enumerate(const Nfa& a, std::size_t max_len) {
    Nfa t = trim(a);
    Closure cl(t);
    const std::size_t k = t.alphabet()->size();
    std::vector<Word> out;
    std::vector<std::pair<Word, StateSet>> level;
    StateSet init = cl.initial();
    if (!init.empty())
        level.emplace_back(Word{}, std::move(init));
    for (std::size_t len = 0; !level.empty(); ++len) {
        for (const auto& [w, set] : level)
            if (cl.any_final(set))
                out.push_back(w);
        if (len == max_len)
            break;
        std::vector<std::pair<Word, StateSet>> next;
        for (const auto& [w, set] : level)
            for (Symbol sym = 0; sym < k; ++sym) {
                StateSet t = cl.post(set, sym);
                if (t.empty())
                    continue;
                Word w2 = w;
                w2.push_back(sym);
                next.emplace_back(std::move(w2), std::move(t));
            }
        level = std::move(next);
    }
    return out;
}

} // namespace rif
