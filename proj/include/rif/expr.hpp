#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>

#include "rif/nfa.hpp"
#include "rif/transducer.hpp"

namespace rif {

struct RifExpr;
using ExprPtr = std::shared_ptr<const RifExpr>;

struct LangRef {
    std::string name;
};
struct ApplyNode {
    std::string observer;
    ExprPtr arg;
};
struct UnionNode {
    ExprPtr lhs;
    ExprPtr rhs;
};
struct InterNode {
    ExprPtr lhs;
    ExprPtr rhs;
};

/// L | O(e) | e ∪ e | e ∩ e
struct RifExpr {
    std::variant<LangRef, ApplyNode, UnionNode, InterNode> node;
};

ExprPtr lang(std::string name);
ExprPtr apply_expr(std::string observer, ExprPtr arg);
ExprPtr union_expr(ExprPtr lhs, ExprPtr rhs);
ExprPtr inter_expr(ExprPtr lhs, ExprPtr rhs);

/// Canonical text: `L`, `O(e)`, `(e | e)`, `(e & e)`. Used as the memo key.
std::string to_string(const RifExpr& e);
bool operator==(const RifExpr& a, const RifExpr& b);

/// Inclusion assertion lhs ⊆ rhs.
struct Assertion {
    ExprPtr lhs;
    ExprPtr rhs;
};

std::string to_string(const Assertion& a);

/// Named languages and observers an expression is evaluated against.
struct Environment {
    std::map<std::string, Nfa> languages;
    std::map<std::string, Transducer> observers;
};

} // namespace rif
