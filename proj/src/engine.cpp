#include "rif/engine.hpp"

#include <chrono>

#include "rif/error.hpp"

namespace rif {

AlphabetPtr Evaluator::alphabet_of(const ExprPtr& e) const { return alphabet_at(e, "expr"); }

AlphabetPtr Evaluator::alphabet_at(const ExprPtr& e, const std::string& path) const {
    auto mismatch = [&](const Alphabet& x, const Alphabet& y) {
        if (!x.same_symbols(y))
            throw AlphabetMismatch("alphabet mismatch at " + path + " in " + to_string(*e));
    };
    struct Visitor {
        const Evaluator& self;
        const std::string& path;
        const decltype(mismatch)& check;
        AlphabetPtr operator()(const LangRef& n) const {
            auto it = self.env_.languages.find(n.name);
            if (it == self.env_.languages.end())
                throw UnboundName("unbound language '" + n.name + "' at " + path);
            return it->second.alphabet();
        }
        AlphabetPtr operator()(const ApplyNode& n) const {
            auto it = self.env_.observers.find(n.observer);
            if (it == self.env_.observers.end())
                throw UnboundName("unbound observer '" + n.observer + "' at " + path);
            auto arg = self.alphabet_at(n.arg, path + ".arg");
            check(*it->second.in_alphabet(), *arg);
            return it->second.out_alphabet();
        }
        AlphabetPtr operator()(const UnionNode& n) const { return binary(n.lhs, n.rhs); }
        AlphabetPtr operator()(const InterNode& n) const { return binary(n.lhs, n.rhs); }
        AlphabetPtr binary(const ExprPtr& l, const ExprPtr& r) const {
            auto a = self.alphabet_at(l, path + ".left");
            auto b = self.alphabet_at(r, path + ".right");
            check(*a, *b);
            return a;
        }
    };
    return std::visit(Visitor{*this, path, mismatch}, e->node);
}

const Nfa& Evaluator::evaluate(const ExprPtr& e) {
    std::string key = to_string(*e);
    if (auto it = memo_.find(key); it != memo_.end()) {
        trace_.push_back({key, it->second.num_states(), it->second.num_transitions(), 0, true});
        return it->second;
    }
    struct Visitor {
        Evaluator& self;
        Nfa operator()(const LangRef& n) const {
            auto it = self.env_.languages.find(n.name);
            if (it == self.env_.languages.end())
                throw UnboundName("unbound language '" + n.name + "'");
            return it->second;
        }
        Nfa operator()(const ApplyNode& n) const {
            auto it = self.env_.observers.find(n.observer);
            if (it == self.env_.observers.end())
                throw UnboundName("unbound observer '" + n.observer + "'");
            const Nfa& arg = self.evaluate(n.arg);
            return trim(apply(it->second, arg));
        }
        Nfa operator()(const UnionNode& n) const {
            const Nfa& a = self.evaluate(n.lhs);
            const Nfa& b = self.evaluate(n.rhs);
            return unite(a, b);
        }
        Nfa operator()(const InterNode& n) const {
            const Nfa& a = self.evaluate(n.lhs);
            const Nfa& b = self.evaluate(n.rhs);
            return intersect(a, b);
        }
    };
    auto start = std::chrono::steady_clock::now();
    Nfa result = std::visit(Visitor{*this}, e->node);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    trace_.push_back({key, result.num_states(), result.num_transitions(), ms, false});
    return memo_.emplace(std::move(key), std::move(result)).first->second;
}

Nfa evaluate(const ExprPtr& e, const Environment& env) {
    Evaluator ev(env);
    ev.alphabet_of(e);
    return ev.evaluate(e);
}

Verdict check(const Assertion& a, Evaluator& evaluator, InclusionEngine engine) {
    auto la = evaluator.alphabet_of(a.lhs);
    auto ra = evaluator.alphabet_of(a.rhs);
    if (!la->same_symbols(*ra))
        throw AlphabetMismatch("the two sides of " + to_string(a) + " are over different alphabets");
    evaluator.clear_trace();
    const Nfa& lhs = evaluator.evaluate(a.lhs);
    const Nfa& rhs = evaluator.evaluate(a.rhs);
    auto r = includes(lhs, rhs, engine);
    Verdict v;
    v.assertion = to_string(a);
    v.holds = r.holds;
    if (r.witness) {
        if (!accepts(lhs, r.witness->word) || accepts(rhs, r.witness->word))
            throw InternalInconsistency("witness of " + v.assertion + " does not separate the two sides");
        v.witness = r.witness->word;
        v.witness_text = la->render(r.witness->word);
    }
    v.trace = evaluator.trace();
    return v;
}

Verdict check(const Assertion& a, const Environment& env, InclusionEngine engine) {
    Evaluator ev(env);
    return check(a, ev, engine);
}

Verdict check_bsp(BspKind kind, const Nfa& l, const BspParams& params) {
    auto t = bsp_template(kind, l.alphabet(), params);
    t.env.languages.insert_or_assign("L", l);
    auto v = check(t.assertion, t.env);
    v.assertion = std::string(bsp_name(kind)) + ": " + v.assertion;
    return v;
}

} // namespace rif
