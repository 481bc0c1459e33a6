#pragma once

#include <random>

#include "rif/observers.hpp"
#include "rif/transducer.hpp"
#include "support/oracle.hpp"

namespace gen {

using namespace rif;

/// Input-deterministic, complete, all states final; each edge copies or erases.
inline Transducer random_sequential_eraser(std::mt19937& rng, AlphabetPtr A, std::size_t states) {
    Transducer t(A, A);
    t.add_states(states);
    t.set_initial(0);
    for (State s = 0; s < states; ++s) {
        t.set_final(s);
        for (Symbol a = 0; a < A->size(); ++a)
            t.add_transition(s, a, rng() % 2 ? a : kEpsilon, static_cast<State>(rng() % states));
    }
    return t;
}

/// Observer O with O(O(w)) = O(w) on every word up to length k.
inline bool idempotent_on_samples(const Transducer& t, std::size_t k) {
    for (const auto& w : oracle::all_words(t.in_alphabet()->size(), k)) {
        auto once = oracle::image(t, w, k);
        if (once.size() != 1)
            return false;
        if (oracle::image(t, *once.begin(), k) != once)
            return false;
    }
    return true;
}

/**
 * Erasing-shaped idempotent functions over A, cycling through projections,
 * projections unless declassified, and random sequential erasers that pass
 * the exact idempotency test (with a projection as fallback).
 */
inline Transducer random_idempotent_eraser(std::mt19937& rng, AlphabetPtr A, int round) {
    if (round % 3 == 0) {
        SymbolSet keep;
        for (Symbol a = 0; a < A->size(); ++a)
            if (rng() % 2)
                keep.insert(a);
        return projection(A, keep);
    }
    if (round % 3 == 1 && A->size() >= 3) {
        Alphabet roled(A->symbols());
        std::vector<Role> roles{Role::visible, Role::confidential, Role::declassify};
        std::shuffle(roles.begin(), roles.end(), rng);
        for (Symbol a = 0; a < A->size(); ++a)
            roled.set_role(a, a < 3 ? roles[a] : roles[rng() % 3]);
        return ini_projection(make_alphabet(roled)).transducer();
    }
    for (int attempt = 0; attempt < 500; ++attempt) {
        auto t = random_sequential_eraser(rng, A, 1 + rng() % 3);
        if (is_idempotent(t))
            return t;
    }
    return projection(A, {0});
}

} // namespace gen
