#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rif/error.hpp"
#include "rif/expr.hpp"
#include "rif/observers.hpp"

namespace rif {

/// Syntax or resolution error in a property file, with a 1-based position
/// (line 0 when the source has no line structure, as for JSON).
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(line == 0 ? what
                          : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

/// Source position; ignored by model equality.
struct Loc {
    std::size_t line = 0;
    std::size_t column = 0;
    bool operator==(const Loc&) const { return true; }
};

struct AlphabetSpec {
    std::string preset; // "raptors" or empty
    std::vector<std::string> symbols;
    std::map<char, std::vector<std::string>> roles; // role letter -> symbols
    std::map<std::string, std::vector<std::string>> declass;
    std::map<std::string, std::vector<std::string>> revoke;
    std::optional<std::vector<std::string>> admissible;
    Loc loc;
    bool operator==(const AlphabetSpec&) const = default;
};

/// Inline machine. NFA labels are a symbol or "-"; transducer labels are
/// "in|out" with '.'-separated words and "-" for ε.
struct MachineSpec {
    struct Edge {
        std::size_t src = 0;
        std::string label;
        std::size_t dst = 0;
        bool operator==(const Edge&) const = default;
    };
    std::size_t states = 0;
    std::vector<std::size_t> initial;
    std::vector<std::size_t> final;
    std::vector<Edge> edges;
    std::vector<std::string> claims; // transducers only: functional, idempotent
    bool operator==(const MachineSpec&) const = default;
};

struct RaptorsSpec {
    std::size_t goats = 1;
    std::size_t raptors = 1;
    std::set<int> gates{1, 3};
    bool dismantled = false;
    std::string ambush = "broadcast"; // or "handshake"
    bool operator==(const RaptorsSpec&) const = default;
};

struct LanguageSpec {
    enum class Kind { regex, automaton, raptors, nonfix, universal, empty };
    std::string name;
    Kind kind = Kind::regex;
    std::string regex;
    MachineSpec automaton;
    RaptorsSpec raptors;
    std::string observer; // nonfix
    std::string language; // nonfix
    Loc loc;
    bool operator==(const LanguageSpec&) const = default;
};

struct ObserverSpec {
    std::string name;
    std::string constructor; // "transducer" for inline machines
    std::vector<std::string> args;
    std::map<std::string, std::string> options;
    MachineSpec machine;
    Loc loc;
    bool operator==(const ObserverSpec&) const = default;
};

struct AssertionSpec {
    enum class Kind { inclusion, bsp, opacity, disclosure_scan };
    Kind kind = Kind::inclusion;
    std::string lhs, rhs; // canonical expression text
    std::string bsp;
    std::string language;
    std::map<std::string, std::string> options; // V', C', N', X
    std::string system, secret, observer;
    std::size_t bound = 0;
    Loc loc;
    bool operator==(const AssertionSpec&) const = default;
};

struct PropertyFile {
    AlphabetSpec alphabet;
    std::vector<LanguageSpec> languages;
    std::vector<ObserverSpec> observers;
    std::vector<AssertionSpec> assertions;
    bool operator==(const PropertyFile&) const = default;
};

std::string_view assertion_kind_name(AssertionSpec::Kind kind);

/// Parses text or JSON (detected by a leading '{'). Throws ParseError.
PropertyFile parse_property_file(std::string_view source);
PropertyFile load_property_file(const std::string& path);
PropertyFile parse_property_text(std::string_view text);
PropertyFile parse_property_json(std::string_view text);

std::string print_property_text(const PropertyFile& file);
std::string print_property_json(const PropertyFile& file);

/// name(expr) | (expr | expr) | (expr & expr) | name
ExprPtr parse_expr(std::string_view text);

/// Observer constructors understood by `observer NAME = ctor args...`.
const std::vector<std::string>& observer_constructors();

/// Everything a property file binds, ready for checking.
struct BoundModel {
    AlphabetPtr alphabet;
    Environment env;
    std::map<std::string, std::shared_ptr<const InisdObserver>> inisd; // observers built by `osd`
};

/// Builds every language and observer. Throws ParseError naming the
/// definition site on unresolved names, cycles or constructor errors.
BoundModel bind(const PropertyFile& file);

} // namespace rif
