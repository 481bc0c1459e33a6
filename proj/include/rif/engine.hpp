#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rif/expr.hpp"
#include "rif/nfa.hpp"
#include "rif/observers.hpp"

namespace rif {

/// One evaluated subexpression.
struct TraceEntry {
    std::string node;  // canonical text of the subexpression
    std::size_t states = 0;
    std::size_t transitions = 0;
    double millis = 0; // wall time spent building this node (0 for memo hits)
    bool cached = false;
};

struct Verdict {
    std::string assertion;
    bool holds = false;
    /// Least word of lhs missing from rhs when the assertion fails.
    std::optional<Word> witness;
    std::string witness_text;
    std::vector<TraceEntry> trace;
};

/**
 * Evaluates expressions against an environment, memoizing subexpressions by
 * their canonical text. One evaluator may serve several assertions sharing the
 * environment.
 */
class Evaluator {
public:
    explicit Evaluator(const Environment& env) : env_(env) {}

    /// Output alphabet of `e`. Throws UnboundName, or AlphabetMismatch naming the node path.
    AlphabetPtr alphabet_of(const ExprPtr& e) const;
    const Nfa& evaluate(const ExprPtr& e);
    const std::vector<TraceEntry>& trace() const noexcept { return trace_; }
    void clear_trace() { trace_.clear(); }

private:
    AlphabetPtr alphabet_at(const ExprPtr& e, const std::string& path) const;

    const Environment& env_;
    std::map<std::string, Nfa> memo_;
    std::vector<TraceEntry> trace_;
};

Nfa evaluate(const ExprPtr& e, const Environment& env);

/// Decides lhs ⊆ rhs. Alphabets are checked on both sides before any product is built.
Verdict check(const Assertion& a, const Environment& env, InclusionEngine engine = InclusionEngine::antichain);
Verdict check(const Assertion& a, Evaluator& evaluator, InclusionEngine engine = InclusionEngine::antichain);

/// Instantiates the template for `kind` with L := l and checks it.
Verdict check_bsp(BspKind kind, const Nfa& l, const BspParams& params = {});

} // namespace rif
