#include <algorithm>
#include <deque>
#include <unordered_map>

#include "nfa_detail.hpp"
#include "rif/error.hpp"
#include "rif/limits.hpp"
#include "rif/nfa.hpp"

namespace rif {

namespace {

bool is_barred_name(const std::string& name) { return !name.empty() && name.front() == '~'; }

} // namespace

Nfa sync_product(std::span<const Nfa> components, const std::map<std::string, Complement>& complement_pairs,
                 AlphabetPtr result_alphabet) {
    if (components.empty())
        throw PreconditionError("sync_product needs at least one component");

    std::map<std::string, std::string> partner_of_barred;
    for (const auto& [plain, comp] : complement_pairs) {
        if (is_barred_name(plain))
            throw PreconditionError("'" + plain + "' is barred and cannot be the unbarred side of a pair");
        partner_of_barred[comp.barred] = plain;
    }

    std::vector<std::string> plain_order;
    for (const auto& c : components) {
        if (c.has_epsilon())
            throw PreconditionError("sync_product components must be ε-free");
        for (const auto& name : c.alphabet()->symbols()) {
            if (is_barred_name(name) || partner_of_barred.contains(name)) {
                if (!partner_of_barred.contains(name))
                    throw PreconditionError("barred symbol '" + name + "' has no declared unbarred partner");
                continue;
            }
            if (std::find(plain_order.begin(), plain_order.end(), name) == plain_order.end())
                plain_order.push_back(name);
        }
    }
    if (!result_alphabet)
        result_alphabet = make_alphabet(plain_order);
    for (const auto& name : plain_order)
        if (!result_alphabet->contains(name))
            throw AlphabetMismatch("result alphabet lacks action '" + name + "'");

    const std::size_t n = components.size();

    // For each result symbol: which components offer it, and which hold its barred partner
    // (with the local symbol ids).
    struct Role {
        std::vector<std::pair<std::size_t, Symbol>> offerers;
        std::vector<std::pair<std::size_t, Symbol>> holders;
        SyncMode mode = SyncMode::broadcast;
    };
    std::vector<Role> roles(result_alphabet->size());
    for (Symbol a = 0; a < result_alphabet->size(); ++a) {
        const auto& name = result_alphabet->name(a);
        auto pair = complement_pairs.find(name);
        if (pair != complement_pairs.end())
            roles[a].mode = pair->second.mode;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& alpha = *components[i].alphabet();
            if (auto s = alpha.find(name))
                roles[a].offerers.emplace_back(i, *s);
            if (pair != complement_pairs.end())
                if (auto s = alpha.find(pair->second.barred))
                    roles[a].holders.emplace_back(i, *s);
        }
    }

    using Tuple = detail::StateSet; // one local state per component (not sorted)
    std::unordered_map<Tuple, State, detail::StateSetHash> ids;
    std::vector<Tuple> tuples;
    Nfa out(result_alphabet);

    auto id_of = [&](const Tuple& t) {
        auto [it, inserted] = ids.emplace(t, static_cast<State>(tuples.size()));
        if (inserted) {
            tuples.push_back(t);
            State s = out.add_state();
            out.set_final(s);
            check_state_limit(tuples.size(), "synchronized product");
        }
        return it->second;
    };

    // initial tuples: cartesian product of initial states
    std::vector<Tuple> inits{Tuple{}};
    for (const auto& c : components) {
        std::vector<Tuple> next;
        for (const auto& t : inits)
            for (State s : c.initial_states()) {
                Tuple u = t;
                u.push_back(s);
                next.push_back(std::move(u));
            }
        inits = std::move(next);
    }
    for (const auto& t : inits)
        out.set_initial(id_of(t));

    auto targets = [&](std::size_t comp, State s, Symbol local) {
        std::vector<State> r;
        for (const auto& e : components[comp].out(s))
            if (e.label == local)
                r.push_back(e.dst);
        return r;
    };

    for (State id = 0; id < tuples.size(); ++id) {
        for (Symbol a = 0; a < result_alphabet->size(); ++a) {
            const Role& role = roles[a];
            for (auto [i, local] : role.offerers) {
                for (State next_i : targets(i, tuples[id][i], local)) {
                    Tuple base = tuples[id];
                    base[i] = next_i;
                    std::vector<std::pair<std::size_t, Symbol>> holders;
                    for (const auto& h : role.holders)
                        if (h.first != i)
                            holders.push_back(h);
                    if (holders.empty()) {
                        out.add_transition(id, a, id_of(base));
                        continue;
                    }
                    if (role.mode == SyncMode::handshake) {
                        for (auto [j, barred] : holders)
                            for (State next_j : targets(j, base[j], barred)) {
                                Tuple t = base;
                                t[j] = next_j;
                                out.add_transition(id, a, id_of(t));
                            }
                        continue;
                    }
                    // broadcast: every holder moves; expand nondeterministic choices
                    std::vector<Tuple> partial{base};
                    for (auto [j, barred] : holders) {
                        std::vector<Tuple> next;
                        for (const auto& t : partial)
                            for (State next_j : targets(j, t[j], barred)) {
                                Tuple u = t;
                                u[j] = next_j;
                                next.push_back(std::move(u));
                            }
                        partial = std::move(next);
                        if (partial.empty())
                            break;
                    }
                    for (const auto& t : partial)
                        out.add_transition(id, a, id_of(t));
                }
            }
        }
    }
    return out;
}

} // namespace rif
