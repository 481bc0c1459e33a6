#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rif/alphabet.hpp"

namespace rif {

using State = std::uint32_t;

struct Edge {
    Symbol label; // kEpsilon for an ε-move
    State dst;
    auto operator<=>(const Edge&) const = default;
};

struct Transition {
    State src;
    Symbol label;
    State dst;
    auto operator<=>(const Transition&) const = default;
};

/**
 * Nondeterministic finite automaton with ε-transitions.
 *
 * States are the integers [0, num_states()). Built incrementally, then treated
 * as an immutable value by every operation below; operations never modify
 * their arguments and are safe to run concurrently on shared automata.
 */
class Nfa {
public:
    explicit Nfa(AlphabetPtr alphabet);

    const AlphabetPtr& alphabet() const noexcept { return alphabet_; }

    State add_state();
    State add_states(std::size_t count);
    void add_transition(State src, Symbol label, State dst);
    void set_initial(State s, bool value = true);
    void set_final(State s, bool value = true);

    std::size_t num_states() const noexcept { return out_.size(); }
    std::size_t num_transitions() const noexcept;
    bool is_initial(State s) const { return initial_.at(s) != 0; }
    bool is_final(State s) const { return final_.at(s) != 0; }
    std::vector<State> initial_states() const;
    std::vector<State> final_states() const;
    const std::vector<Edge>& out(State s) const { return out_.at(s); }
    std::vector<Transition> transitions() const;
    bool has_epsilon() const noexcept;

private:
    AlphabetPtr alphabet_;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::uint8_t> initial_;
    std::vector<std::uint8_t> final_;
};

/// Which operand of a binary relation a witness word belongs to.
enum class Operand { first, second };

/// A word demonstrating a claim, e.g. membership in first operand but not the second.
struct Witness {
    Word word;
    Operand side = Operand::first;
};

struct EmptinessResult {
    bool empty = true;
    std::optional<Witness> witness; // length-lexicographically least accepted word
};

struct InclusionResult {
    bool holds = true;
    std::optional<Witness> witness; // least word of the first language missing from the second
};

enum class InclusionEngine {
    complement, // determinize and complement the right side, intersect, search
    antichain,  // on-the-fly subset search with subsumption pruning
};

// Elementary languages.
Nfa empty_language(AlphabetPtr alphabet);
Nfa epsilon_language(AlphabetPtr alphabet);
Nfa universal(AlphabetPtr alphabet);
Nfa symbol_star(AlphabetPtr alphabet, const SymbolSet& symbols);
Nfa word_language(AlphabetPtr alphabet, const Word& word);
Nfa finite_language(AlphabetPtr alphabet, std::span<const Word> words);

// Rational operations.
Nfa concat(const Nfa& a, const Nfa& b);
Nfa star(const Nfa& a);
Nfa unite(const Nfa& a, const Nfa& b);
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa complement(const Nfa& a);

// Normal forms.
Nfa remove_epsilon(const Nfa& a);
Nfa trim(const Nfa& a);
/// Complete deterministic automaton (with explicit sink when needed).
Nfa determinize(const Nfa& a);
/// Minimal complete DFA.
Nfa minimize(const Nfa& a);
/// Same automaton over another alphabet; symbols are matched by name.
Nfa rebind(const Nfa& a, AlphabetPtr target);

// Decision procedures and queries.
bool accepts(const Nfa& a, const Word& word);
EmptinessResult is_empty(const Nfa& a);
InclusionResult includes(const Nfa& a, const Nfa& b, InclusionEngine engine = InclusionEngine::antichain);
bool equivalent(const Nfa& a, const Nfa& b);
/// Accepted words of length <= max_len in length-lexicographic order.
std::vector<Word> enumerate(const Nfa& a, std::size_t max_len);

/// Throws AlphabetMismatch when the two alphabets differ.
void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view operation);

// Synchronized product.

enum class SyncMode {
    broadcast, // every component holding the barred partner moves with the offerer
    handshake, // exactly one holder of the barred partner moves with the offerer
};

struct Complement {
    std::string barred;
    SyncMode mode = SyncMode::broadcast;
};

/**
 * Synchronized product of component LTSs on complementary actions.
 *
 * `complement_pairs` maps an unbarred action name to its barred partner. A
 * joint step on unbarred action a is one component offering a, joined by the
 * holders of the barred partner according to its SyncMode; components not
 * involved stay put. An action whose barred partner nobody holds is free.
 * Symbols starting with '~' must be declared as a barred partner. Every
 * product state is final. The result alphabet defaults to the unbarred
 * symbols in order of first appearance.
 */
Nfa sync_product(std::span<const Nfa> components, const std::map<std::string, Complement>& complement_pairs,
                 AlphabetPtr result_alphabet = nullptr);

} // namespace rif
