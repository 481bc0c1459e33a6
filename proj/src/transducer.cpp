#include "rif/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "nfa_detail.hpp"
#include "rif/error.hpp"
#include "rif/limits.hpp"

namespace rif {

std::string_view kind_name(ObserverKind kind) {
    switch (kind) {
    case ObserverKind::static_view: return "static";
    case ObserverKind::dynamic_view: return "dynamic";
    case ObserverKind::orwellian: return "orwellian";
    case ObserverKind::relational: return "relational";
    }
    return "relational";
}

// ---------------------------------------------------------------------------
// Transducer

Transducer::Transducer(AlphabetPtr in, AlphabetPtr out) : in_(std::move(in)), out_(std::move(out)) {
    if (!in_ || !out_)
        throw PreconditionError("transducer requires input and output alphabets");
}

State Transducer::add_state() {
    out_edges_.emplace_back();
    initial_.push_back(0);
    final_.push_back(0);
    return static_cast<State>(out_edges_.size() - 1);
}

State Transducer::add_states(std::size_t count) {
    auto first = static_cast<State>(out_edges_.size());
    out_edges_.resize(out_edges_.size() + count);
    initial_.resize(out_edges_.size(), 0);
    final_.resize(out_edges_.size(), 0);
    return first;
}

void Transducer::add_transition(State src, Symbol in, Symbol out, State dst) {
    if (src >= num_states() || dst >= num_states())
        throw PreconditionError("transition endpoint out of range");
    if (in != kEpsilon && in >= in_->size())
        throw AlphabetError("input label outside the input alphabet");
    if (out != kEpsilon && out >= out_->size())
        throw AlphabetError("output label outside the output alphabet");
    out_edges_[src].push_back({in, out, dst});
}

void Transducer::add_word_transition(State src, const Word& in, const Word& out, State dst) {
    std::size_t steps = std::max<std::size_t>(1, std::max(in.size(), out.size()));
    State cur = src;
    for (std::size_t i = 0; i < steps; ++i) {
        State next = i + 1 == steps ? dst : add_state();
        add_transition(cur, i < in.size() ? in[i] : kEpsilon, i < out.size() ? out[i] : kEpsilon, next);
        cur = next;
    }
}

void Transducer::set_initial(State s, bool value) { initial_.at(s) = value ? 1 : 0; }
void Transducer::set_final(State s, bool value) { final_.at(s) = value ? 1 : 0; }

std::size_t Transducer::num_transitions() const noexcept {
    std::size_t n = 0;
    for (const auto& e : out_edges_)
        n += e.size();
    return n;
}

std::vector<State> Transducer::initial_states() const {
    std::vector<State> r;
    for (State s = 0; s < num_states(); ++s)
        if (initial_[s])
            r.push_back(s);
    return r;
}

std::vector<State> Transducer::final_states() const {
    std::vector<State> r;
    for (State s = 0; s < num_states(); ++s)
        if (final_[s])
            r.push_back(s);
    return r;
}

Transducer normalize(const WordTransducer& raw) {
    Transducer t(raw.in_alphabet, raw.out_alphabet);
    t.add_states(raw.states);
    for (State s : raw.initial)
        t.set_initial(s);
    for (State s : raw.finals)
        t.set_final(s);
    for (const auto& e : raw.edges)
        t.add_word_transition(e.src, e.in, e.out, e.dst);
    return t;
}

// ---------------------------------------------------------------------------
// Products

namespace {

// Pair-indexed state table used by the product constructions.
class PairTable {
public:
    explicit PairTable(std::string_view construction) : construction_(construction) {}
    std::pair<State, bool> intern(State a, State b) {
        auto key = (std::uint64_t{a} << 32) | b;
        auto [it, inserted] = ids_.emplace(key, static_cast<State>(pairs_.size()));
        if (inserted) {
            pairs_.emplace_back(a, b);
            check_state_limit(pairs_.size(), construction_);
        }
        return {it->second, inserted};
    }
    std::pair<State, State> at(State id) const { return pairs_[id]; }
    std::size_t size() const noexcept { return pairs_.size(); }

private:
    std::string_view construction_;
    std::unordered_map<std::uint64_t, State> ids_;
    std::vector<std::pair<State, State>> pairs_;
};

} // namespace

Nfa apply(const Transducer& t, const Nfa& l) {
    require_same_alphabet(t.in_alphabet(), l.alphabet(), "apply");
    Nfa el = remove_epsilon(l);
    Nfa out(t.out_alphabet());
    PairTable table("transducer application");
    auto id_of = [&](State q, State p) {
        auto [id, inserted] = table.intern(q, p);
        if (inserted)
            out.add_state();
        return id;
    };
    for (State q : t.initial_states())
        for (State p : el.initial_states())
            out.set_initial(id_of(q, p));
    for (State id = 0; id < table.size(); ++id) {
        auto [q, p] = table.at(id);
        out.set_final(id, t.is_final(q) && el.is_final(p));
        for (const auto& e : t.out(q)) {
            if (e.in == kEpsilon) {
                out.add_transition(id, e.out, id_of(e.dst, p));
                continue;
            }
            for (const auto& f : el.out(p))
                if (f.label == e.in)
                    out.add_transition(id, e.out, id_of(e.dst, f.dst));
        }
    }
    return trim(out);
}

Nfa apply(const Transducer& t, const Word& w) { return apply(t, word_language(t.in_alphabet(), w)); }

Transducer compose(const Transducer& t1, const Transducer& t2) {
    require_same_alphabet(t1.out_alphabet(), t2.in_alphabet(), "compose");
    Transducer out(t1.in_alphabet(), t2.out_alphabet());
    PairTable table("transducer composition");
    auto id_of = [&](State a, State b) {
        auto [id, inserted] = table.intern(a, b);
        if (inserted)
            out.add_state();
        return id;
    };
    for (State a : t1.initial_states())
        for (State b : t2.initial_states())
            out.set_initial(id_of(a, b));
    for (State id = 0; id < table.size(); ++id) {
        auto [a, b] = table.at(id);
        out.set_final(id, t1.is_final(a) && t2.is_final(b));
        for (const auto& e : t1.out(a)) {
            if (e.out == kEpsilon) {
                out.add_transition(id, e.in, kEpsilon, id_of(e.dst, b));
                continue;
            }
            for (const auto& f : t2.out(b))
                if (f.in == e.out)
                    out.add_transition(id, e.in, f.out, id_of(e.dst, f.dst));
        }
        for (const auto& f : t2.out(b))
            if (f.in == kEpsilon)
                out.add_transition(id, kEpsilon, f.out, id_of(a, f.dst));
    }
    return trim(out);
}

Transducer inverse(const Transducer& t) {
    Transducer out(t.out_alphabet(), t.in_alphabet());
    out.add_states(t.num_states());
    for (State s = 0; s < t.num_states(); ++s) {
        out.set_initial(s, t.is_initial(s));
        out.set_final(s, t.is_final(s));
        for (const auto& e : t.out(s))
            out.add_transition(s, e.out, e.in, e.dst);
    }
    ObserverTag tag = t.tag();
    if (!tag.name.empty())
        tag.name += "^-1";
    tag.kind = ObserverKind::relational;
    tag.functional_claimed = false;
    tag.idempotent_claimed = false;
    out.set_tag(tag);
    return out;
}

namespace {

Nfa project(const Transducer& t, bool input_side) {
    Nfa out(input_side ? t.in_alphabet() : t.out_alphabet());
    out.add_states(t.num_states());
    for (State s = 0; s < t.num_states(); ++s) {
        out.set_initial(s, t.is_initial(s));
        out.set_final(s, t.is_final(s));
        for (const auto& e : t.out(s))
            out.add_transition(s, input_side ? e.in : e.out, e.dst);
    }
    return trim(out);
}

} // namespace

Nfa domain(const Transducer& t) { return project(t, true); }
Nfa range(const Transducer& t) { return project(t, false); }

Transducer restrict_domain(const Transducer& t, const Nfa& p) {
    require_same_alphabet(t.in_alphabet(), p.alphabet(), "restrict_domain");
    Nfa ep = remove_epsilon(p);
    Transducer out(t.in_alphabet(), t.out_alphabet());
    PairTable table("domain restriction");
    auto id_of = [&](State q, State r) {
        auto [id, inserted] = table.intern(q, r);
        if (inserted)
            out.add_state();
        return id;
    };
    for (State q : t.initial_states())
        for (State r : ep.initial_states())
            out.set_initial(id_of(q, r));
    for (State id = 0; id < table.size(); ++id) {
        auto [q, r] = table.at(id);
        out.set_final(id, t.is_final(q) && ep.is_final(r));
        for (const auto& e : t.out(q)) {
            if (e.in == kEpsilon) {
                out.add_transition(id, kEpsilon, e.out, id_of(e.dst, r));
                continue;
            }
            for (const auto& f : ep.out(r))
                if (f.label == e.in)
                    out.add_transition(id, e.in, e.out, id_of(e.dst, f.dst));
        }
    }
    Transducer result = trim(out);
    result.set_tag(t.tag());
    return result;
}

Transducer union_t(std::span<const Transducer> ts) {
    if (ts.empty())
        throw PreconditionError("union_t needs at least one transducer");
    Transducer out(ts.front().in_alphabet(), ts.front().out_alphabet());
    for (const auto& t : ts) {
        require_same_alphabet(t.in_alphabet(), out.in_alphabet(), "union_t");
        require_same_alphabet(t.out_alphabet(), out.out_alphabet(), "union_t");
        State base = out.add_states(t.num_states());
        for (State s = 0; s < t.num_states(); ++s) {
            out.set_initial(base + s, t.is_initial(s));
            out.set_final(base + s, t.is_final(s));
            for (const auto& e : t.out(s))
                out.add_transition(base + s, e.in, e.out, base + e.dst);
        }
    }
    if (ts.size() == 1)
        out.set_tag(ts.front().tag());
    return out;
}

Transducer identity(const Nfa& p) {
    Transducer out(p.alphabet(), p.alphabet());
    out.add_states(p.num_states());
    for (State s = 0; s < p.num_states(); ++s) {
        out.set_initial(s, p.is_initial(s));
        out.set_final(s, p.is_final(s));
        for (const auto& e : p.out(s))
            out.add_transition(s, e.label, e.label, e.dst);
    }
    out.set_tag({"Id", ObserverKind::static_view, true, true});
    return out;
}

Transducer identity(AlphabetPtr alphabet) { return identity(universal(std::move(alphabet))); }

Transducer trim(const Transducer& t) {
    const std::size_t n = t.num_states();
    std::vector<std::uint8_t> fwd(n, 0), bwd(n, 0);
    std::vector<std::vector<State>> rev(n);
    std::vector<State> stack;
    for (State s = 0; s < n; ++s)
        for (const auto& e : t.out(s))
            rev[e.dst].push_back(s);
    for (State s : t.initial_states()) {
        fwd[s] = 1;
        stack.push_back(s);
    }
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (const auto& e : t.out(s))
            if (!fwd[e.dst]) {
                fwd[e.dst] = 1;
                stack.push_back(e.dst);
            }
    }
    for (State s : t.final_states()) {
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
    Transducer out(t.in_alphabet(), t.out_alphabet());
    for (State s = 0; s < n; ++s)
        if (fwd[s] && bwd[s])
            rename[s] = out.add_state();
    for (State s = 0; s < n; ++s) {
        if (rename[s] == kEpsilon)
            continue;
        out.set_initial(rename[s], t.is_initial(s));
        out.set_final(rename[s], t.is_final(s));
        for (const auto& e : t.out(s))
            if (rename[e.dst] != kEpsilon)
                out.add_transition(rename[s], e.in, e.out, rename[e.dst]);
    }
    out.set_tag(t.tag());
    return out;
}

// ---------------------------------------------------------------------------
// Functionality

namespace {

// Real-time form: every edge reads exactly one input symbol and may write a
// word; final states carry a final output word.
struct RealTime {
    struct Edge {
        Symbol in;
        Word out;
        State dst;
    };
    std::vector<std::vector<Edge>> edges;
    std::vector<std::optional<Word>> final_out;
    std::vector<State> initial;
    std::size_t max_out = 0;
};

// Builds the real-time form of a trim transducer, or returns nullopt when an
// ε-input path already shows two outputs for one input.
std::optional<RealTime> real_time(const Transducer& t) {
    const std::size_t n = t.num_states();
    RealTime rt;
    rt.edges.resize(n);
    rt.final_out.resize(n);
    rt.initial = t.initial_states();
    for (State s = 0; s < n; ++s) {
        // ε-input closure with accumulated outputs. Since t is trim, two
        // different outputs reaching one state yield two outputs for one input.
        std::map<State, Word> reach{{s, Word{}}};
        std::deque<State> todo{s};
        while (!todo.empty()) {
            State q = todo.front();
            todo.pop_front();
            for (const auto& e : t.out(q)) {
                if (e.in != kEpsilon)
                    continue;
                Word w = reach[q];
                if (e.out != kEpsilon)
                    w.push_back(e.out);
                auto it = reach.find(e.dst);
                if (it == reach.end()) {
                    reach.emplace(e.dst, std::move(w));
                    todo.push_back(e.dst);
                } else if (it->second != w) {
                    return std::nullopt;
                }
            }
        }
        for (const auto& [q, w] : reach) {
            if (t.is_final(q)) {
                if (rt.final_out[s] && *rt.final_out[s] != w)
                    return std::nullopt;
                rt.final_out[s] = w;
                rt.max_out = std::max(rt.max_out, w.size());
            }
            for (const auto& e : t.out(q)) {
                if (e.in == kEpsilon)
                    continue;
                Word out = w;
                if (e.out != kEpsilon)
                    out.push_back(e.out);
                rt.max_out = std::max(rt.max_out, out.size());
                rt.edges[s].push_back({e.in, std::move(out), e.dst});
            }
        }
    }
    return rt;
}

// Output delay between the two runs: the unmatched suffix of the run that is ahead.
struct Delay {
    Word ahead;
    bool first_ahead = true;
    bool operator==(const Delay& o) const {
        return ahead == o.ahead && (ahead.empty() || first_ahead == o.first_ahead);
    }
};

// Extends a delay by outputs u (first run) and v (second run). nullopt on divergence.
std::optional<Delay> extend(const Delay& d, const Word& u, const Word& v) {
    Word x, y;
    if (d.first_ahead) {
        x = d.ahead;
    } else {
        y = d.ahead;
    }
    x.insert(x.end(), u.begin(), u.end());
    y.insert(y.end(), v.begin(), v.end());
    std::size_t k = 0;
    while (k < x.size() && k < y.size() && x[k] == y[k])
        ++k;
    if (k < x.size() && k < y.size())
        return std::nullopt;
    if (k < x.size())
        return Delay{Word(x.begin() + k, x.end()), true};
    return Delay{Word(y.begin() + k, y.end()), false};
}

} // namespace

bool is_functional(const Transducer& input) {
    Transducer t = trim(input);
    auto rt_opt = real_time(t);
    if (!rt_opt)
        return false;
    const RealTime& rt = *rt_opt;

    // Square of the real-time form, restricted to co-accessible pairs.
    PairTable table("functionality square");
    struct SqEdge {
        State dst;
        const Word* u;
        const Word* v;
    };
    std::vector<std::vector<SqEdge>> sq;
    auto id_of = [&](State a, State b) {
        auto [id, inserted] = table.intern(a, b);
        if (inserted)
            sq.emplace_back();
        return id;
    };
    std::vector<State> roots;
    for (State a : rt.initial)
        for (State b : rt.initial)
            roots.push_back(id_of(a, b));
    for (State id = 0; id < table.size(); ++id) {
        auto [a, b] = table.at(id);
        for (const auto& e : rt.edges[a])
            for (const auto& f : rt.edges[b])
                if (e.in == f.in) {
                    State dst = id_of(e.dst, f.dst);
                    sq[id].push_back({dst, &e.out, &f.out});
                }
    }
    const std::size_t n = table.size();
    std::vector<std::uint8_t> coacc(n, 0);
    {
        std::vector<std::vector<State>> rev(n);
        for (State s = 0; s < n; ++s)
            for (const auto& e : sq[s])
                rev[e.dst].push_back(s);
        std::vector<State> stack;
        for (State s = 0; s < n; ++s) {
            auto [a, b] = table.at(s);
            if (rt.final_out[a] && rt.final_out[b]) {
                coacc[s] = 1;
                stack.push_back(s);
            }
        }
        while (!stack.empty()) {
            State s = stack.back();
            stack.pop_back();
            for (State p : rev[s])
                if (!coacc[p]) {
                    coacc[p] = 1;
                    stack.push_back(p);
                }
        }
    }

    // Every trim square state must carry one delay; its length is bounded by
    // |square| * (max output length + 1).
    const std::size_t bound = n * (rt.max_out + 1);
    std::vector<std::optional<Delay>> delay(n);
    std::deque<State> todo;
    for (State r : roots)
        if (coacc[r] && !delay[r]) {
            delay[r] = Delay{};
            todo.push_back(r);
        }
    while (!todo.empty()) {
        State s = todo.front();
        todo.pop_front();
        auto [a, b] = table.at(s);
        if (rt.final_out[a] && rt.final_out[b]) {
            auto end = extend(*delay[s], *rt.final_out[a], *rt.final_out[b]);
            if (!end || !end->ahead.empty())
                return false;
        }
        for (const auto& e : sq[s]) {
            if (!coacc[e.dst])
                continue;
            auto d = extend(*delay[s], *e.u, *e.v);
            if (!d || d->ahead.size() > bound)
                return false;
            if (!delay[e.dst]) {
                delay[e.dst] = std::move(d);
                todo.push_back(e.dst);
            } else if (!(*delay[e.dst] == *d)) {
                return false;
            }
        }
    }
    return true;
}

bool is_erasing_shaped(const Transducer& t) {
    const auto& in = *t.in_alphabet();
    const auto& out = *t.out_alphabet();
    for (State s = 0; s < t.num_states(); ++s)
        for (const auto& e : t.out(s)) {
            if (e.out == kEpsilon)
                continue;
            if (e.in == kEpsilon || in.name(e.in) != out.name(e.out))
                return false;
        }
    return true;
}

Nfa non_fixpoints(const Transducer& t, const Nfa& l) {
    if (!is_erasing_shaped(t))
        throw PreconditionError("non_fixpoints: observer is not erasing-shaped (labels a|a, a|ε)");
    if (!is_functional(t))
        throw PreconditionError("non_fixpoints: observer is not functional");
    require_same_alphabet(t.in_alphabet(), l.alphabet(), "non_fixpoints");
    Nfa el = remove_epsilon(l);
    Nfa out(l.alphabet());
    // states: (q, p, erased-flag)
    PairTable table("non-fixpoint product");
    std::vector<std::uint8_t> flag;
    auto id_of = [&](State q, State p, bool f) {
        auto [id, inserted] = table.intern(q * 2 + (f ? 1 : 0), p);
        if (inserted) {
            out.add_state();
            flag.push_back(f ? 1 : 0);
        }
        return id;
    };
    for (State q : t.initial_states())
        for (State p : el.initial_states())
            out.set_initial(id_of(q, p, false));
    for (State id = 0; id < table.size(); ++id) {
        auto [qf, p] = table.at(id);
        State q = qf / 2;
        bool f = flag[id] != 0;
        out.set_final(id, f && t.is_final(q) && el.is_final(p));
        for (const auto& e : t.out(q)) {
            if (e.in == kEpsilon) {
                out.add_transition(id, kEpsilon, id_of(e.dst, p, f));
                continue;
            }
            bool erased = f || e.out == kEpsilon;
            for (const auto& g : el.out(p))
                if (g.label == e.in)
                    out.add_transition(id, e.in, id_of(e.dst, g.dst, erased));
        }
    }
    return trim(out);
}

bool is_idempotent(const Transducer& t) {
    if (!t.in_alphabet()->same_symbols(*t.out_alphabet()))
        throw PreconditionError("is_idempotent: input and output alphabets differ");
    if (!is_functional(t))
        return false;
    Transducer twice = compose(t, t);
    if (!equivalent(domain(twice), domain(t)))
        return false;
    std::vector<Transducer> both{twice, t};
    return is_functional(union_t(both));
}

} // namespace rif
