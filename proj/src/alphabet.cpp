#include "rif/alphabet.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "rif/error.hpp"

namespace rif {

char role_letter(Role role) {
    switch (role) {
    case Role::visible: return 'V';
    case Role::confidential: return 'C';
    case Role::internal: return 'N';
    case Role::declassify: return 'D';
    case Role::revoke: return 'R';
    case Role::participant: return 'P';
    }
    return '?';
}

std::optional<Role> role_from_letter(char letter) {
    switch (letter) {
    case 'V': return Role::visible;
    case 'C': return Role::confidential;
    case 'N': return Role::internal;
    case 'D': return Role::declassify;
    case 'R': return Role::revoke;
    case 'P': return Role::participant;
    default: return std::nullopt;
    }
}

bool is_symbol_name(std::string_view name) {
    if (name.empty() || name == "-")
        return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '\'' || c == '~' || c == '$' || c == '#';
    });
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (Symbol i = 0; i < symbols_.size(); ++i) {
        const auto& name = symbols_[i];
        if (!is_symbol_name(name))
            throw AlphabetError("invalid symbol name '" + name + "'");
        if (!index_.emplace(name, i).second)
            throw AlphabetError("duplicate symbol '" + name + "'");
    }
}

const std::string& Alphabet::name(Symbol s) const {
    if (s >= symbols_.size())
        throw AlphabetError("symbol index " + std::to_string(s) + " out of range");
    return symbols_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
    if (auto s = find(name))
        return *s;
    throw AlphabetError("unknown symbol '" + std::string(name) + "'");
}

SymbolSet Alphabet::all() const {
    SymbolSet out;
    for (Symbol i = 0; i < symbols_.size(); ++i)
        out.insert(i);
    return out;
}

SymbolSet Alphabet::to_set(const std::vector<std::string>& names) const {
    SymbolSet out;
    for (const auto& n : names)
        out.insert(at(n));
    return out;
}

void Alphabet::set_role(Symbol s, Role role) {
    name(s);
    roles_[s] = role;
}

std::optional<Role> Alphabet::role(Symbol s) const {
    auto it = roles_.find(s);
    if (it == roles_.end())
        return std::nullopt;
    return it->second;
}

SymbolSet Alphabet::with_role(Role role) const {
    SymbolSet out;
    for (const auto& [s, r] : roles_)
        if (r == role)
            out.insert(s);
    return out;
}

void Alphabet::set_declass(Symbol d, SymbolSet confidential) {
    name(d);
    declass_[d] = std::move(confidential);
}

void Alphabet::set_revoke(Symbol r, SymbolSet participants) {
    name(r);
    revoke_[r] = std::move(participants);
}

void Alphabet::set_admissible(SymbolSet symbols) {
    for (Symbol s : symbols)
        name(s);
    admissible_ = std::move(symbols);
}

void Alphabet::validate() const {
    using enum Role;
    static constexpr std::array<std::array<Role, 3>, 3> schemes{{
        {visible, confidential, internal},
        {visible, confidential, declassify},
        {visible, participant, revoke},
    }};
    std::set<Role> used;
    for (const auto& [s, r] : roles_)
        used.insert(r);
    bool fits = std::any_of(schemes.begin(), schemes.end(), [&](const auto& scheme) {
        return std::all_of(used.begin(), used.end(), [&](Role r) {
            return std::find(scheme.begin(), scheme.end(), r) != scheme.end();
        });
    });
    if (!fits) {
        std::string letters;
        for (Role r : used)
            letters += role_letter(r);
        throw AlphabetError("roles {" + letters + "} do not fit one of the schemes VCN, VCD, VPR");
    }

    if (!declass_.empty()) {
        SymbolSet keys;
        for (const auto& [d, cs] : declass_) {
            keys.insert(d);
            for (Symbol c : cs)
                if (role(c) != confidential)
                    throw AlphabetError("C(" + name(d) + ") contains non-confidential symbol '" + name(c) + "'");
        }
        if (keys != with_role(declassify))
            throw AlphabetError("declassification table keys must be exactly the D symbols");
    }

    if (!revoke_.empty()) {
        SymbolSet keys;
        SymbolSet seen;
        for (const auto& [r, ps] : revoke_) {
            keys.insert(r);
            for (Symbol p : ps) {
                if (role(p) != participant)
                    throw AlphabetError("P(" + name(r) + ") contains non-participant symbol '" + name(p) + "'");
                if (!seen.insert(p).second)
                    throw AlphabetError("revocation sets overlap on '" + name(p) + "'");
            }
        }
        if (keys != with_role(revoke))
            throw AlphabetError("revocation table keys must be exactly the R symbols");
    }
}

std::string Alphabet::render(const Word& word) const {
    if (word.empty())
        return "ε";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            out += ' ';
        out += name(word[i]);
    }
    return out;
}

Word Alphabet::parse_word(std::string_view text) const {
    Word out;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        if (token == "ε" || token == "eps")
            continue;
        if (auto s = find(token)) {
            out.push_back(*s);
            continue;
        }
        // compact form: every character is a one-letter symbol
        for (char c : token)
            out.push_back(at(std::string(1, c)));
    }
    return out;
}

AlphabetPtr make_alphabet(std::vector<std::string> symbols) {
    return std::make_shared<const Alphabet>(std::move(symbols));
}

AlphabetPtr make_alphabet(Alphabet alphabet) {
    alphabet.validate();
    return std::make_shared<const Alphabet>(std::move(alphabet));
}

std::string render_set(const Alphabet& alphabet, const SymbolSet& set) {
    std::string out = "{";
    bool first = true;
    for (Symbol s : set) {
        if (!first)
            out += ", ";
        first = false;
        out += alphabet.name(s);
    }
    return out + "}";
}

} // namespace rif
