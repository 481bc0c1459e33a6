#pragma once

#include <string_view>

#include "rif/nfa.hpp"

namespace rif {

/**
 * Parses a regular expression over `alphabet`.
 *
 * Syntax: `+` is union, juxtaposition is concatenation, postfix `*` is Kleene
 * star, parentheses group. `ε` (or `eps`) is the empty word and `∅` the empty
 * language. A run of name characters is one symbol when the alphabet has a
 * symbol of that name; otherwise each character is read as a one-letter
 * symbol, so `(a+b)(a*+b*)` works over {a, b}. Throws RegexError.
 */
Nfa parse_regex(AlphabetPtr alphabet, std::string_view text);

} // namespace rif
