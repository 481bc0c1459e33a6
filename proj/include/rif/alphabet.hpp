#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rif {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using SymbolSet = std::set<Symbol>;

/// Label value standing for the empty word on a transition.
inline constexpr Symbol kEpsilon = std::numeric_limits<Symbol>::max();

/// Security role of a symbol. Letters follow the usual V/C/N/D/R/P naming.
enum class Role : std::uint8_t {
    visible,      // V
    confidential, // C
    internal,     // N
    declassify,   // D
    revoke,       // R
    participant,  // P
};

char role_letter(Role role);
std::optional<Role> role_from_letter(char letter);

/**
 * Finite ordered symbol set with optional role annotations.
 *
 * Symbols are identifier strings; their position in the declaration order is
 * the integer Symbol used everywhere else and defines the order used by
 * length-lexicographic enumeration. Roles must stay within one partition
 * scheme: V/C/N (security predicates), V/C/D (declassification) or V/P/R
 * (anonymity).
 */
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    const std::string& name(Symbol s) const;
    std::optional<Symbol> find(std::string_view name) const;
    /// Like find() but throws AlphabetError for unknown names.
    Symbol at(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name).has_value(); }
    SymbolSet all() const;
    SymbolSet to_set(const std::vector<std::string>& names) const;

    void set_role(Symbol s, Role role);
    std::optional<Role> role(Symbol s) const;
    SymbolSet with_role(Role role) const;
    bool has_roles() const noexcept { return !roles_.empty(); }

    /// C(d): confidential symbols declassified by the downgrading symbol d.
    void set_declass(Symbol d, SymbolSet confidential);
    const std::map<Symbol, SymbolSet>& declass_table() const noexcept { return declass_; }
    /// P(r): participant symbols revealed by the revocation symbol r.
    void set_revoke(Symbol r, SymbolSet participants);
    const std::map<Symbol, SymbolSet>& revoke_table() const noexcept { return revoke_; }
    /// X: admissible symbols used by the admissible-insertion predicates.
    void set_admissible(SymbolSet symbols);
    const std::optional<SymbolSet>& admissible() const noexcept { return admissible_; }

    /// Checks role scheme consistency and the auxiliary tables. Throws AlphabetError.
    void validate() const;

    /// Same symbols in the same order. Roles and tables are metadata and do not count.
    bool same_symbols(const Alphabet& other) const noexcept { return symbols_ == other.symbols_; }
    bool operator==(const Alphabet& other) const = default;

    /// Space-separated rendering; the empty word renders as "ε".
    std::string render(const Word& word) const;
    /// Inverse of render(). Also accepts compact "abab" when every symbol is one character.
    Word parse_word(std::string_view text) const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, Symbol> index_;
    std::map<Symbol, Role> roles_;
    std::map<Symbol, SymbolSet> declass_;
    std::map<Symbol, SymbolSet> revoke_;
    std::optional<SymbolSet> admissible_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> symbols);
AlphabetPtr make_alphabet(Alphabet alphabet);

/// True when the string can be used as a symbol name.
bool is_symbol_name(std::string_view name);

/// Renders a symbol set as "{a, b}" for diagnostics.
std::string render_set(const Alphabet& alphabet, const SymbolSet& set);

} // namespace rif
