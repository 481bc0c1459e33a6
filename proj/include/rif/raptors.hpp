#pragma once

#include <set>

#include "rif/nfa.hpp"

namespace rif {

struct RaptorsConfig {
    std::size_t goats = 1;
    std::size_t raptors = 1;
    std::set<int> open_gates{1, 3}; // subset of {1, 2, 3}
    bool dismantled = false;        // no gate components at all
    SyncMode ambush_sync = SyncMode::broadcast; // how h_k meets the gates holding ~h_k
};

/// l1 l2 l3 h1 h2 h3 d1 d2 d3 with V = {l}, C = {h}, D = {d} and C(d_i) = {h_i}.
AlphabetPtr raptors_alphabet();

/**
 * DR(n, m): goats, raptors and gates synchronized on complementary actions.
 * Gates react to every l_k/h_k step (broadcast); a catch d_k takes exactly one
 * goat standing in section k (handshake). All product states are final.
 */
Nfa gen_raptors(const RaptorsConfig& config);

} // namespace rif
