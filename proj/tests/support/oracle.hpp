#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls the library's algorithms; only the raw automaton/transducer accessors.

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "rif/nfa.hpp"
#include "rif/transducer.hpp"

namespace oracle {

using rif::Nfa;
using rif::State;
using rif::Symbol;
using rif::Word;

/// Membership by exploring (state, position) configurations.
inline bool member(const Nfa& a, const Word& w) {
    std::set<std::pair<State, std::size_t>> seen;
    std::deque<std::pair<State, std::size_t>> todo;
    for (State s = 0; s < a.num_states(); ++s)
        if (a.is_initial(s)) {
            seen.insert({s, 0});
            todo.push_back({s, 0});
        }
    while (!todo.empty()) {
        auto [s, i] = todo.front();
        todo.pop_front();
        if (i == w.size() && a.is_final(s))
            return true;
        for (const auto& e : a.out(s)) {
            std::pair<State, std::size_t> next;
            if (e.label == rif::kEpsilon)
                next = {e.dst, i};
            else if (i < w.size() && e.label == w[i])
                next = {e.dst, i + 1};
            else
                continue;
            if (seen.insert(next).second)
                todo.push_back(next);
        }
    }
    return false;
}

/// All words over symbols [0, k) of length <= max_len, length-lexicographic order.
inline std::vector<Word> all_words(std::size_t k, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Symbol a = 0; a < k; ++a) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

/// Length-lexicographic order.
inline bool ll_less(const Word& a, const Word& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

/// Accepted words up to max_len by brute force, in length-lexicographic order.
inline std::vector<Word> language(const Nfa& a, std::size_t max_len) {
    std::vector<Word> out;
    for (const auto& w : all_words(a.alphabet()->size(), max_len))
        if (member(a, w))
            out.push_back(w);
    return out;
}

/// Least word (up to max_len) accepted by `a` and rejected by `b`.
inline std::optional<Word> least_difference(const Nfa& a, const Nfa& b, std::size_t max_len) {
    for (const auto& w : all_words(a.alphabet()->size(), max_len))
        if (member(a, w) && !member(b, w))
            return w;
    return std::nullopt;
}

/// Random NFA, occasionally with ε-moves.
inline Nfa random_nfa(std::mt19937& rng, rif::AlphabetPtr alphabet, std::size_t states, double density = 0.3,
                      double eps_density = 0.05) {
    Nfa a(alphabet);
    a.add_states(states);
    std::uniform_real_distribution<double> u(0, 1);
    for (State s = 0; s < states; ++s) {
        a.set_initial(s, s == 0 || u(rng) < 0.1);
        a.set_final(s, u(rng) < 0.35);
        for (State t = 0; t < states; ++t) {
            for (Symbol x = 0; x < alphabet->size(); ++x)
                if (u(rng) < density)
                    a.add_transition(s, x, t);
            if (s != t && u(rng) < eps_density)
                a.add_transition(s, rif::kEpsilon, t);
        }
    }
    return a;
}

/// Random finite language: `count` words of length <= max_len.
inline std::vector<Word> random_words(std::mt19937& rng, std::size_t k, std::size_t count, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(k - 1));
    std::set<Word> words;
    for (std::size_t i = 0; i < count; ++i) {
        Word w(len(rng));
        for (auto& x : w)
            x = sym(rng);
        words.insert(w);
    }
    return {words.begin(), words.end()};
}

using Pair = std::pair<Word, Word>;
using Relation = std::set<Pair>;

/// Pairs (u, v) labelling accepting paths, with |u| <= max_in and |v| <= max_out.
inline Relation relation(const rif::Transducer& t, std::size_t max_in, std::size_t max_out) {
    using Config = std::tuple<State, Word, Word>;
    std::set<Config> seen;
    std::deque<Config> todo;
    Relation out;
    for (State s = 0; s < t.num_states(); ++s)
        if (t.is_initial(s)) {
            seen.insert({s, {}, {}});
            todo.push_back({s, {}, {}});
        }
    while (!todo.empty()) {
        auto [s, u, v] = todo.front();
        todo.pop_front();
        if (t.is_final(s))
            out.insert({u, v});
        for (const auto& e : t.out(s)) {
            Word u2 = u, v2 = v;
            if (e.in != rif::kEpsilon)
                u2.push_back(e.in);
            if (e.out != rif::kEpsilon)
                v2.push_back(e.out);
            if (u2.size() > max_in || v2.size() > max_out)
                continue;
            Config c{e.dst, std::move(u2), std::move(v2)};
            if (seen.insert(c).second)
                todo.push_back(std::move(c));
        }
    }
    return out;
}

/// Image of one word: all v with (w, v) in the relation and |v| <= max_out.
inline std::set<Word> image(const rif::Transducer& t, const Word& w, std::size_t max_out) {
    std::set<Word> out;
    for (const auto& [u, v] : relation(t, w.size(), max_out))
        if (u == w)
            out.insert(v);
    return out;
}

/// Random normalized transducer; labels are letter-or-ε on each side.
inline rif::Transducer random_transducer(std::mt19937& rng, rif::AlphabetPtr in, rif::AlphabetPtr out,
                                         std::size_t states, double density = 0.15) {
    rif::Transducer t(in, out);
    t.add_states(states);
    std::uniform_real_distribution<double> u(0, 1);
    for (State s = 0; s < states; ++s) {
        t.set_initial(s, s == 0);
        t.set_final(s, u(rng) < 0.4);
        for (State d = 0; d < states; ++d)
            for (Symbol a = 0; a <= in->size(); ++a)
                for (Symbol b = 0; b <= out->size(); ++b) {
                    Symbol x = a == in->size() ? rif::kEpsilon : a;
                    Symbol y = b == out->size() ? rif::kEpsilon : b;
                    if (x == rif::kEpsilon && y == rif::kEpsilon)
                        continue;
                    double p = x == rif::kEpsilon ? density / 3 : density;
                    if (u(rng) < p)
                        t.add_transition(s, x, y, d);
                }
    }
    return t;
}

} // namespace oracle
