#pragma once

// Helpers shared by the automaton and transducer constructions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "rif/nfa.hpp"

namespace rif::detail {

using StateSet = std::vector<State>; // sorted, duplicate-free

struct StateSetHash {
    std::size_t operator()(const StateSet& s) const noexcept {
        std::size_t h = s.size();
        for (State x : s)
            h ^= std::hash<State>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

/// Hash-consing table from state sets to dense ids.
class SetTable {
public:
    /// Returns (id, inserted).
    std::pair<State, bool> intern(const StateSet& s) {
        auto [it, inserted] = ids_.emplace(s, static_cast<State>(sets_.size()));
        if (inserted)
            sets_.push_back(s);
        return {it->second, inserted};
    }
    const StateSet& at(State id) const { return sets_[id]; }
    std::size_t size() const noexcept { return sets_.size(); }

private:
    std::unordered_map<StateSet, State, StateSetHash> ids_;
    std::vector<StateSet> sets_;
};

/// Precomputed ε-closures of every state.
class Closure {
public:
    explicit Closure(const Nfa& a);
    const StateSet& of(State s) const { return closure_[s]; }
    StateSet of(const StateSet& seeds) const;
    /// ε-closure of the a-successors of `set`.
    StateSet post(const StateSet& set, Symbol a) const;
    StateSet initial() const;
    bool any_final(const StateSet& set) const;

private:
    const Nfa& nfa_;
    std::vector<StateSet> closure_;
};

/// Fixed-width bitset over states, used by the antichain search.
class Bits {
public:
    Bits() = default;
    Bits(std::size_t n, const StateSet& members) : words_((n + 63) / 64, 0) {
        for (State s : members)
            words_[s / 64] |= std::uint64_t{1} << (s % 64);
    }
    bool subset_of(const Bits& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i])
                return false;
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

void sort_unique(StateSet& s);

} // namespace rif::detail
