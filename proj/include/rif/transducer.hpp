#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rif/nfa.hpp"

namespace rif {

/// Transducer edge in normalized form: at most one symbol per side.
struct TEdge {
    Symbol in;  // kEpsilon for ε
    Symbol out; // kEpsilon for ε
    State dst;
    auto operator<=>(const TEdge&) const = default;
};

enum class ObserverKind { static_view, dynamic_view, orwellian, relational };

std::string_view kind_name(ObserverKind kind);

/// Descriptive metadata carried by observers. Claims are checked before use.
struct ObserverTag {
    std::string name;
    ObserverKind kind = ObserverKind::relational;
    bool idempotent_claimed = false;
    bool functional_claimed = false;
    bool operator==(const ObserverTag&) const = default;
};

/**
 * Finite transducer realizing a rational relation between words over
 * in_alphabet() and out_alphabet(). Edges are normalized; word labels are
 * split on insertion by add_word_transition().
 */
class Transducer {
public:
    Transducer(AlphabetPtr in, AlphabetPtr out);

    const AlphabetPtr& in_alphabet() const noexcept { return in_; }
    const AlphabetPtr& out_alphabet() const noexcept { return out_; }

    State add_state();
    State add_states(std::size_t count);
    void add_transition(State src, Symbol in, Symbol out, State dst);
    /// Adds a path realizing in|out, with fresh intermediate states when needed.
    void add_word_transition(State src, const Word& in, const Word& out, State dst);
    void set_initial(State s, bool value = true);
    void set_final(State s, bool value = true);

    std::size_t num_states() const noexcept { return out_edges_.size(); }
    std::size_t num_transitions() const noexcept;
    const std::vector<TEdge>& out(State s) const { return out_edges_.at(s); }
    bool is_initial(State s) const { return initial_.at(s) != 0; }
    bool is_final(State s) const { return final_.at(s) != 0; }
    std::vector<State> initial_states() const;
    std::vector<State> final_states() const;

    const ObserverTag& tag() const noexcept { return tag_; }
    void set_tag(ObserverTag tag) { tag_ = std::move(tag); }

private:
    AlphabetPtr in_;
    AlphabetPtr out_;
    std::vector<std::vector<TEdge>> out_edges_;
    std::vector<std::uint8_t> initial_;
    std::vector<std::uint8_t> final_;
    ObserverTag tag_;
};

/// Raw transducer whose edges carry arbitrary word pairs.
struct WordTransducer {
    struct WordEdge {
        State src;
        Word in;
        Word out;
        State dst;
    };
    AlphabetPtr in_alphabet;
    AlphabetPtr out_alphabet;
    std::size_t states = 0;
    std::vector<State> initial;
    std::vector<State> finals;
    std::vector<WordEdge> edges;
};

/// Same relation with at most one symbol per side on every edge.
Transducer normalize(const WordTransducer& raw);

/// Image O(L): product with `l` on the input side, keeping output labels.
Nfa apply(const Transducer& t, const Nfa& l);
/// Image of a single word.
Nfa apply(const Transducer& t, const Word& w);
/// Relation composition: first t1, then t2.
Transducer compose(const Transducer& t1, const Transducer& t2);
Transducer inverse(const Transducer& t);
Nfa domain(const Transducer& t);
Nfa range(const Transducer& t);
/// {(u, v) in R(t) | u in p}.
Transducer restrict_domain(const Transducer& t, const Nfa& p);
/// State-disjoint union of relations.
Transducer union_t(std::span<const Transducer> ts);
/// Id_P = {(w, w) | w in P}.
Transducer identity(const Nfa& p);
/// Identity relation on all words over the alphabet (one state).
Transducer identity(AlphabetPtr alphabet);
Transducer trim(const Transducer& t);

/// Exact functionality test (squaring construction with delays).
bool is_functional(const Transducer& t);

/// Every edge copies its input symbol (a|a), erases it (a|ε) or is ε|ε.
bool is_erasing_shaped(const Transducer& t);

/**
 * {w in l | O(w) != w} for a functional erasing-shaped observer: the words of
 * l accepted by a run that uses at least one erasing edge. Throws
 * PreconditionError for other transducers.
 */
Nfa non_fixpoints(const Transducer& t, const Nfa& l);

/**
 * Exact idempotency test for a functional observer with identical input and
 * output symbols: O∘O = O iff both have the same domain and their union is
 * still a function. Returns false for non-functional input.
 */
bool is_idempotent(const Transducer& t);

} // namespace rif
