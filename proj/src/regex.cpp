#include "rif/regex.hpp"

#include <cctype>

#include "rif/error.hpp"

namespace rif {

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '~' || c == '$' || c == '#';
}

class Parser {
public:
    Parser(AlphabetPtr alphabet, std::string_view text) : alphabet_(std::move(alphabet)), text_(text) {}

    Nfa parse() {
        Nfa r = expr();
        skip_space();
        if (pos_ != text_.size())
            throw RegexError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return r;
    }

private:
    AlphabetPtr alphabet_;
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool starts(std::string_view tok) {
        skip_space();
        return text_.substr(pos_, tok.size()) == tok;
    }

    Nfa expr() {
        Nfa r = term();
        while (starts("+")) {
            ++pos_;
            r = unite(r, term());
        }
        return r;
    }

    bool at_factor_start() {
        skip_space();
        if (pos_ >= text_.size())
            return false;
        char c = text_[pos_];
        return c == '(' || is_name_char(c) || starts("ε") || starts("∅");
    }

    Nfa term() {
        if (!at_factor_start())
            throw RegexError("expected an expression", pos_);
        Nfa r = factor();
        while (at_factor_start())
            r = concat(r, factor());
        return r;
    }

    Nfa factor() {
        Nfa r = atom();
        while (starts("*")) {
            ++pos_;
            r = star(r);
        }
        return r;
    }

    Nfa atom() {
        skip_space();
        if (starts("(")) {
            ++pos_;
            Nfa r = expr();
            if (!starts(")"))
                throw RegexError("missing ')'", pos_);
            ++pos_;
            return r;
        }
        if (starts("ε")) {
            pos_ += std::string_view("ε").size();
            return epsilon_language(alphabet_);
        }
        if (starts("∅")) {
            pos_ += std::string_view("∅").size();
            return empty_language(alphabet_);
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_]))
            ++pos_;
        std::string_view token = text_.substr(start, pos_ - start);
        if (auto s = alphabet_->find(token))
            return word_language(alphabet_, {*s});
        if (token == "eps")
            return epsilon_language(alphabet_);
        if (token.empty())
            throw RegexError("expected a symbol", start);
        // not a symbol name: read a single one-letter symbol so that "ab*" means a(b*)
        pos_ = start + 1;
        auto s = alphabet_->find(token.substr(0, 1));
        if (!s)
            throw RegexError("unknown symbol '" + std::string(token) + "'", start);
        return word_language(alphabet_, {*s});
    }
};

} // namespace

Nfa parse_regex(AlphabetPtr alphabet, std::string_view text) { return trim(Parser(std::move(alphabet), text).parse()); }

} // namespace rif
