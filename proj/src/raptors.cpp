#include "rif/raptors.hpp"

#include "rif/error.hpp"

namespace rif {

namespace {

std::string idx(const char* base, int k) { return base + std::to_string(k); }

// k - 1 mod 3 on 1..3
int prev(int k) { return k == 1 ? 3 : k - 1; }

Nfa goat() {
    auto A = make_alphabet(std::vector<std::string>{"l1", "l2", "l3", "~d1", "~d2", "~d3"});
    Nfa g(A);
    State p1 = g.add_state(), p2 = g.add_state(), p3 = g.add_state(), p4 = g.add_state();
    g.set_initial(p2);
    for (State s : {p1, p2, p3, p4})
        g.set_final(s);
    g.add_transition(p1, A->at("l2"), p2);
    g.add_transition(p2, A->at("l3"), p3);
    g.add_transition(p3, A->at("l1"), p1);
    g.add_transition(p1, A->at("~d1"), p4);
    g.add_transition(p2, A->at("~d2"), p4);
    g.add_transition(p3, A->at("~d3"), p4);
    return g;
}

Nfa raptor() {
    auto A = make_alphabet(std::vector<std::string>{"h1", "h2", "h3", "d1", "d2", "d3"});
    Nfa r(A);
    State q0 = r.add_state();
    r.set_initial(q0);
    r.set_final(q0);
    for (int k = 1; k <= 3; ++k) {
        State qk = r.add_state();
        r.set_final(qk);
        r.add_transition(q0, A->at(idx("h", k)), qk);
        r.add_transition(qk, A->at(idx("d", k)), q0);
    }
    return r;
}

Nfa gate(int k, bool open) {
    auto A = make_alphabet(std::vector<std::string>{idx("~l", k), idx("~h", k), idx("~h", prev(k))});
    Nfa g(A);
    State closed = g.add_state(), opened = g.add_state();
    g.set_final(closed);
    g.set_final(opened);
    g.set_initial(open ? opened : closed);
    g.add_transition(opened, A->at(idx("~l", k)), opened);
    g.add_transition(opened, A->at(idx("~h", k)), opened);
    g.add_transition(closed, A->at(idx("~h", k)), opened);
    g.add_transition(opened, A->at(idx("~h", prev(k))), closed);
    return g;
}

} // namespace

AlphabetPtr raptors_alphabet() {
    Alphabet a({"l1", "l2", "l3", "h1", "h2", "h3", "d1", "d2", "d3"});
    for (int k = 1; k <= 3; ++k) {
        a.set_role(a.at(idx("l", k)), Role::visible);
        a.set_role(a.at(idx("h", k)), Role::confidential);
        a.set_role(a.at(idx("d", k)), Role::declassify);
        a.set_declass(a.at(idx("d", k)), {a.at(idx("h", k))});
    }
    return make_alphabet(std::move(a));
}

Nfa gen_raptors(const RaptorsConfig& config) {
    if (config.goats == 0 || config.raptors == 0)
        throw PreconditionError("the Dining Raptors need at least one goat and one raptor");
    for (int g : config.open_gates)
        if (g < 1 || g > 3)
            throw PreconditionError("gate " + std::to_string(g) + " does not exist; gates are 1, 2, 3");
    std::vector<Nfa> components;
    for (std::size_t i = 0; i < config.goats; ++i)
        components.push_back(goat());
    for (std::size_t j = 0; j < config.raptors; ++j)
        components.push_back(raptor());
    if (!config.dismantled)
        for (int k = 1; k <= 3; ++k)
            components.push_back(gate(k, config.open_gates.contains(k)));
    std::map<std::string, Complement> pairs;
    for (int k = 1; k <= 3; ++k) {
        pairs[idx("l", k)] = {idx("~l", k), SyncMode::broadcast};
        pairs[idx("h", k)] = {idx("~h", k), config.ambush_sync};
        pairs[idx("d", k)] = {idx("~d", k), SyncMode::handshake};
    }
    return sync_product(components, pairs, raptors_alphabet());
}

} // namespace rif
