#include "rif/expr.hpp"

namespace rif {

ExprPtr lang(std::string name) { return std::make_shared<const RifExpr>(RifExpr{LangRef{std::move(name)}}); }

ExprPtr apply_expr(std::string observer, ExprPtr arg) {
    return std::make_shared<const RifExpr>(RifExpr{ApplyNode{std::move(observer), std::move(arg)}});
}

ExprPtr union_expr(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<const RifExpr>(RifExpr{UnionNode{std::move(lhs), std::move(rhs)}});
}

ExprPtr inter_expr(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<const RifExpr>(RifExpr{InterNode{std::move(lhs), std::move(rhs)}});
}

std::string to_string(const RifExpr& e) {
    struct Printer {
        std::string operator()(const LangRef& n) const { return n.name; }
        std::string operator()(const ApplyNode& n) const { return n.observer + "(" + to_string(*n.arg) + ")"; }
        std::string operator()(const UnionNode& n) const {
            return "(" + to_string(*n.lhs) + " | " + to_string(*n.rhs) + ")";
        }
        std::string operator()(const InterNode& n) const {
            return "(" + to_string(*n.lhs) + " & " + to_string(*n.rhs) + ")";
        }
    };
    return std::visit(Printer{}, e.node);
}

bool operator==(const RifExpr& a, const RifExpr& b) { return to_string(a) == to_string(b); }

std::string to_string(const Assertion& a) { return to_string(*a.lhs) + " <= " + to_string(*a.rhs); }

} // namespace rif
