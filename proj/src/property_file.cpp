#include "rif/property_file.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "rif/raptors.hpp"
#include "rif/regex.hpp"

namespace rif {

namespace {

using json = nlohmann::ordered_json;

struct Token {
    std::string text;
    std::size_t column = 0; // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i == line.size())
            break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

std::string trim_copy(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::string join(const std::vector<std::string>& v, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += v[i];
    }
    return out;
}

bool is_name(std::string_view s) {
    if (s.empty())
        return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '\'' && ch != '-' && ch != '~' &&
            ch != '$')
            return false;
    return true;
}

std::string site(const Loc& loc, const std::string& where) {
    if (loc.line == 0)
        return where;
    return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column);
}

[[noreturn]] void fail_at(const Loc& loc, const std::string& what) { throw ParseError(loc.line, loc.column, what); }

std::size_t parse_count(const Token& t, const std::string& what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(t.text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != t.text.size() || t.text.empty() || t.text[0] == '-')
        throw ParseError(0, t.column, "expected " + what + ", found '" + t.text + "'");
    return static_cast<std::size_t>(v);
}

const std::set<std::string> kBspOptions{"V'", "C'", "N'", "X"};

std::set<int> parse_gates(const std::string& s, bool& dismantled, const Loc& loc) {
    dismantled = false;
    if (s == "all")
        return {1, 2, 3};
    if (s == "none")
        return {};
    if (s == "dismantled") {
        dismantled = true;
        return {};
    }
    std::set<int> out;
    for (const auto& g : split_list(s)) {
        if (g != "1" && g != "2" && g != "3")
            fail_at(loc, "gate '" + g + "' is not one of 1, 2, 3");
        out.insert(g[0] - '0');
    }
    return out;
}

std::string gates_text(const RaptorsSpec& r) {
    if (r.dismantled)
        return "dismantled";
    if (r.gates.empty())
        return "none";
    std::vector<std::string> g;
    for (int k : r.gates)
        g.push_back(std::to_string(k));
    return join(g, ",");
}

// ---------------------------------------------------------------------------
// Structural validation shared by the text and JSON front ends

struct Site {
    enum class What { language, observer } what;
    std::size_t index;
    Loc loc;
};

std::string describe(const Site& s) {
    std::string where = (s.what == Site::What::language ? "languages[" : "observers[") + std::to_string(s.index) + "]";
    return site(s.loc, where);
}

void validate(const PropertyFile& f) {
    std::map<std::string, Site> names;
    auto add = [&](const std::string& name, Site s) {
        auto [it, inserted] = names.emplace(name, s);
        if (!inserted)
            fail_at(s.loc, "duplicate name '" + name + "': defined at " + describe(it->second) + " and at " +
                               describe(s));
    };
    for (std::size_t i = 0; i < f.languages.size(); ++i)
        add(f.languages[i].name, {Site::What::language, i, f.languages[i].loc});
    for (std::size_t i = 0; i < f.observers.size(); ++i)
        add(f.observers[i].name, {Site::What::observer, i, f.observers[i].loc});

    auto want = [&](const std::string& name, Site::What what, const Loc& loc) {
        auto it = names.find(name);
        std::string kind = what == Site::What::language ? "language" : "observer";
        if (it == names.end())
            fail_at(loc, "unresolved " + kind + " '" + name + "'");
        if (it->second.what != what)
            fail_at(loc, "'" + name + "' is not a " + kind);
    };
    std::function<void(const ExprPtr&, const Loc&)> walk = [&](const ExprPtr& e, const Loc& loc) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LangRef>) {
                    want(n.name, Site::What::language, loc);
                } else if constexpr (std::is_same_v<T, ApplyNode>) {
                    want(n.observer, Site::What::observer, loc);
                    walk(n.arg, loc);
                } else {
                    walk(n.lhs, loc);
                    walk(n.rhs, loc);
                }
            },
            e->node);
    };

    for (const auto& l : f.languages)
        if (l.kind == LanguageSpec::Kind::nonfix) {
            want(l.observer, Site::What::observer, l.loc);
            want(l.language, Site::What::language, l.loc);
        }
    for (const auto& o : f.observers) {
        const auto& c = o.constructor;
        if (c == "ok")
            for (const auto& a : o.args)
                want(a, Site::What::language, o.loc);
        if (c == "inverse" || c == "compose" || c == "union")
            for (const auto& a : o.args)
                want(a, Site::What::observer, o.loc);
        if (c == "restrict") {
            if (o.args.size() != 2)
                fail_at(o.loc, "restrict takes an observer and a language");
            want(o.args[0], Site::What::observer, o.loc);
            want(o.args[1], Site::What::language, o.loc);
        }
    }
    for (const auto& a : f.assertions) {
        switch (a.kind) {
        case AssertionSpec::Kind::inclusion:
            walk(parse_expr(a.lhs), a.loc);
            walk(parse_expr(a.rhs), a.loc);
            break;
        case AssertionSpec::Kind::bsp:
            if (!bsp_from_name(a.bsp))
                fail_at(a.loc, "unknown predicate '" + a.bsp + "'");
            want(a.language, Site::What::language, a.loc);
            for (const auto& [k, v] : a.options)
                if (!kBspOptions.contains(k))
                    fail_at(a.loc, "unknown option '" + k + "'");
            break;
        case AssertionSpec::Kind::opacity:
        case AssertionSpec::Kind::disclosure_scan:
            want(a.system, Site::What::language, a.loc);
            want(a.secret, Site::What::language, a.loc);
            want(a.observer, Site::What::observer, a.loc);
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Text front end

class TextParser {
public:
    explicit TextParser(std::string_view text) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            std::string_view line = text.substr(start, end - start);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            // comments run from a '#' at the start of a word to the end of the line
            for (std::size_t i = 0; i < line.size(); ++i)
                if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
                    line = line.substr(0, i);
                    break;
                }
            lines_.emplace_back(line);
            start = end + 1;
        }
    }

    PropertyFile parse() {
        PropertyFile f;
        bool have_alphabet = false;
        while (next()) {
            const auto& head = toks_[0].text;
            if (head == "alphabet") {
                if (have_alphabet)
                    error(toks_[0], "alphabet declared twice");
                have_alphabet = true;
                f.alphabet.loc = loc(toks_[0]);
                if (toks_.size() == 2 && toks_[1].text == "raptors")
                    f.alphabet.preset = "raptors";
                else
                    for (std::size_t i = 1; i < toks_.size(); ++i)
                        f.alphabet.symbols.push_back(toks_[i].text);
            } else if (head == "role") {
                if (toks_.size() < 2 || toks_[1].text.size() != 1 || !role_from_letter(toks_[1].text[0]))
                    error(toks_.size() < 2 ? toks_[0] : toks_[1], "expected a role letter V, C, N, D, R or P");
                auto& v = f.alphabet.roles[toks_[1].text[0]];
                for (std::size_t i = 2; i < toks_.size(); ++i)
                    v.push_back(toks_[i].text);
            } else if (head == "declass" || head == "revoke") {
                if (toks_.size() < 3 || toks_[2].text != ":")
                    error(toks_[0], "expected '" + head + " <symbol> : <symbols>'");
                auto& table = head == "declass" ? f.alphabet.declass : f.alphabet.revoke;
                auto& v = table[toks_[1].text];
                for (std::size_t i = 3; i < toks_.size(); ++i)
                    v.push_back(toks_[i].text);
            } else if (head == "admissible") {
                std::vector<std::string> v;
                for (std::size_t i = 1; i < toks_.size(); ++i)
                    v.push_back(toks_[i].text);
                f.alphabet.admissible = v;
            } else if (head == "language") {
                f.languages.push_back(language());
            } else if (head == "observer") {
                f.observers.push_back(observer());
            } else if (head == "assert") {
                f.assertions.push_back(assertion());
            } else {
                error(toks_[0], "unknown directive '" + head + "'");
            }
        }
        if (!have_alphabet)
            throw ParseError(1, 1, "missing alphabet declaration");
        return f;
    }

private:
    bool next() {
        while (lineno_ < lines_.size()) {
            current_ = lines_[lineno_++];
            toks_ = tokenize(current_);
            if (toks_.empty())
                continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void error(const Token& t, const std::string& what) const {
        throw ParseError(lineno_, t.column, what);
    }

    Loc loc(const Token& t) const { return {lineno_, t.column}; }

    // NAME = KIND
    void header(std::string& name) {
        if (toks_.size() < 4 || toks_[2].text != "=")
            error(toks_[0], "expected '" + toks_[0].text + " <name> = ...'");
        if (!is_name(toks_[1].text))
            error(toks_[1], "invalid name '" + toks_[1].text + "'");
        name = toks_[1].text;
    }

    std::size_t count(const Token& t, const std::string& what) const {
        try {
            return parse_count(t, what);
        } catch (const ParseError& e) {
            throw ParseError(lineno_, t.column, std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
        }
    }

    std::map<std::string, std::string> options(std::size_t from, std::vector<std::string>* positional) const {
        std::map<std::string, std::string> out;
        for (std::size_t i = from; i < toks_.size(); ++i) {
            auto eq = toks_[i].text.find('=');
            if (eq == std::string::npos) {
                if (!positional)
                    error(toks_[i], "expected key=value, found '" + toks_[i].text + "'");
                positional->push_back(toks_[i].text);
                continue;
            }
            std::string key = toks_[i].text.substr(0, eq);
            if (out.contains(key))
                error(toks_[i], "option '" + key + "' given twice");
            out[key] = toks_[i].text.substr(eq + 1);
        }
        return out;
    }

    MachineSpec block(bool transducer) {
        const Token open = toks_.back();
        if (open.text != "{")
            error(open, "expected '{'");
        MachineSpec m;
        bool have_states = false;
        while (true) {
            if (!next())
                throw ParseError(lineno_, 1, "unterminated block opened at column " + std::to_string(open.column));
            const auto& head = toks_[0].text;
            if (head == "}") {
                if (toks_.size() != 1)
                    error(toks_[1], "unexpected text after '}'");
                break;
            }
            if (head == "states") {
                if (toks_.size() != 2)
                    error(toks_[0], "expected 'states <count>'");
                m.states = count(toks_[1], "a state count");
                have_states = true;
            } else if (head == "initial" || head == "final") {
                auto& v = head == "initial" ? m.initial : m.final;
                for (std::size_t i = 1; i < toks_.size(); ++i)
                    v.push_back(state(toks_[i], m, have_states));
            } else if (head == "claims") {
                if (!transducer)
                    error(toks_[0], "claims apply to transducers only");
                for (std::size_t i = 1; i < toks_.size(); ++i) {
                    if (toks_[i].text != "functional" && toks_[i].text != "idempotent")
                        error(toks_[i], "unknown claim '" + toks_[i].text + "'");
                    m.claims.push_back(toks_[i].text);
                }
            } else {
                if (toks_.size() != 3)
                    error(toks_[0], "expected '<src> <label> <dst>'");
                MachineSpec::Edge e{state(toks_[0], m, have_states), toks_[1].text, state(toks_[2], m, have_states)};
                if (transducer && e.label.find('|') == std::string::npos)
                    error(toks_[1], "transducer labels are written in|out");
                if (!transducer && e.label.find('|') != std::string::npos)
                    error(toks_[1], "automaton labels are a single symbol or '-'");
                m.edges.push_back(e);
            }
        }
        return m;
    }

    std::size_t state(const Token& t, const MachineSpec& m, bool have_states) const {
        if (!have_states)
            error(t, "'states' must come first");
        auto s = count(t, "a state number");
        if (s >= m.states)
            error(t, "state " + t.text + " out of range (" + std::to_string(m.states) + " states)");
        return s;
    }

    LanguageSpec language() {
        LanguageSpec l;
        header(l.name);
        l.loc = loc(toks_[1]);
        const auto& kind = toks_[3].text;
        if (kind == "regex") {
            l.kind = LanguageSpec::Kind::regex;
            if (toks_.size() < 5)
                error(toks_[3], "missing regular expression");
            l.regex = trim_copy(std::string_view(current_).substr(toks_[4].column - 1));
        } else if (kind == "automaton") {
            l.kind = LanguageSpec::Kind::automaton;
            if (toks_.size() != 5)
                error(toks_[3], "expected 'automaton {'");
            l.automaton = block(false);
        } else if (kind == "raptors") {
            l.kind = LanguageSpec::Kind::raptors;
            auto opts = options(4, nullptr);
            for (const auto& [k, v] : opts) {
                if (k == "goats")
                    l.raptors.goats = count({v, toks_[3].column}, "a goat count");
                else if (k == "raptors")
                    l.raptors.raptors = count({v, toks_[3].column}, "a raptor count");
                else if (k == "gates")
                    l.raptors.gates = parse_gates(v, l.raptors.dismantled, loc(toks_[3]));
                else if (k == "ambush") {
                    if (v != "broadcast" && v != "handshake")
                        error(toks_[3], "ambush is broadcast or handshake");
                    l.raptors.ambush = v;
                } else
                    error(toks_[3], "unknown raptors option '" + k + "'");
            }
        } else if (kind == "nonfix") {
            l.kind = LanguageSpec::Kind::nonfix;
            if (toks_.size() != 6)
                error(toks_[3], "expected 'nonfix <observer> <language>'");
            l.observer = toks_[4].text;
            l.language = toks_[5].text;
        } else if (kind == "universal" || kind == "empty") {
            l.kind = kind == "universal" ? LanguageSpec::Kind::universal : LanguageSpec::Kind::empty;
            if (toks_.size() != 4)
                error(toks_[4], "unexpected text after '" + kind + "'");
        } else {
            error(toks_[3], "unknown language form '" + kind + "'");
        }
        return l;
    }

    ObserverSpec observer() {
        ObserverSpec o;
        header(o.name);
        o.loc = loc(toks_[1]);
        o.constructor = toks_[3].text;
        if (o.constructor == "transducer") {
            if (toks_.size() != 5)
                error(toks_[3], "expected 'transducer {'");
            o.machine = block(true);
            return o;
        }
        const auto& ctors = observer_constructors();
        if (std::find(ctors.begin(), ctors.end(), o.constructor) == ctors.end())
            error(toks_[3], "unknown observer constructor '" + o.constructor + "'");
        o.options = options(4, &o.args);
        return o;
    }

    AssertionSpec assertion() {
        AssertionSpec a;
        if (toks_.size() < 2)
            error(toks_[0], "expected an assertion kind");
        a.loc = loc(toks_[1]);
        const auto& kind = toks_[1].text;
        if (kind == "inclusion") {
            a.kind = AssertionSpec::Kind::inclusion;
            if (toks_.size() < 3)
                error(toks_[1], "expected '<expr> <= <expr>'");
            std::string_view rest = std::string_view(current_).substr(toks_[2].column - 1);
            auto le = rest.find("<=");
            if (le == std::string_view::npos)
                error(toks_[2], "expected '<='");
            try {
                a.lhs = to_string(*parse_expr(rest.substr(0, le)));
                a.rhs = to_string(*parse_expr(rest.substr(le + 2)));
            } catch (const ParseError& e) {
                throw ParseError(lineno_, toks_[2].column + e.column() - 1,
                                 std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
            }
        } else if (kind == "bsp") {
            a.kind = AssertionSpec::Kind::bsp;
            if (toks_.size() < 4)
                error(toks_[1], "expected 'bsp <KIND> <language> [options]'");
            a.bsp = toks_[2].text;
            if (!bsp_from_name(a.bsp))
                error(toks_[2], "unknown predicate '" + a.bsp + "'");
            a.language = toks_[3].text;
            a.options = options(4, nullptr);
            for (const auto& [k, v] : a.options)
                if (!kBspOptions.contains(k))
                    error(toks_[1], "unknown option '" + k + "'");
        } else if (kind == "opacity" || kind == "disclosure-scan") {
            a.kind = kind == "opacity" ? AssertionSpec::Kind::opacity : AssertionSpec::Kind::disclosure_scan;
            auto opts = options(2, nullptr);
            for (const auto& [k, v] : opts) {
                if (k == "system")
                    a.system = v;
                else if (k == "secret")
                    a.secret = v;
                else if (k == "observer")
                    a.observer = v;
                else if (k == "bound" && a.kind == AssertionSpec::Kind::disclosure_scan)
                    a.bound = count({v, toks_[1].column}, "a length bound");
                else
                    error(toks_[1], "unknown option '" + k + "'");
            }
            if (a.system.empty() || a.secret.empty() || a.observer.empty())
                error(toks_[1], kind + " needs system=, secret= and observer=");
            if (a.kind == AssertionSpec::Kind::disclosure_scan && !opts.contains("bound"))
                error(toks_[1], "disclosure-scan needs bound=");
        } else {
            error(toks_[1], "unknown assertion kind '" + kind + "'");
        }
        return a;
    }

    std::vector<std::string> lines_;
    std::size_t lineno_ = 0;
    std::string current_;
    std::vector<Token> toks_;
};

// ---------------------------------------------------------------------------
// JSON front end

[[noreturn]] void json_fail(const std::string& where, const std::string& what) {
    throw ParseError(0, 0, where + ": " + what);
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        json_fail(where, "missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        json_fail(where + "." + key, e.what());
    }
}

MachineSpec machine_from_json(const json& j, const std::string& where, bool transducer) {
    MachineSpec m;
    m.states = get<std::size_t>(j, "states", where);
    m.initial = get<std::vector<std::size_t>>(j, "initial", where);
    m.final = get<std::vector<std::size_t>>(j, "final", where);
    if (j.contains("edges"))
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3)
                json_fail(where + ".edges", "each edge is [src, label, dst]");
            m.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::string>(), e[2].get<std::size_t>()});
        }
    if (transducer && j.contains("claims"))
        m.claims = get<std::vector<std::string>>(j, "claims", where);
    for (auto s : m.initial)
        if (s >= m.states)
            json_fail(where, "initial state out of range");
    for (auto s : m.final)
        if (s >= m.states)
            json_fail(where, "final state out of range");
    for (const auto& e : m.edges) {
        if (e.src >= m.states || e.dst >= m.states)
            json_fail(where, "edge state out of range");
        if (transducer != (e.label.find('|') != std::string::npos))
            json_fail(where, "bad edge label '" + e.label + "'");
    }
    return m;
}

json machine_to_json(const MachineSpec& m, bool transducer) {
    json j;
    j["states"] = m.states;
    j["initial"] = m.initial;
    j["final"] = m.final;
    json edges = json::array();
    for (const auto& e : m.edges)
        edges.push_back(json::array({e.src, e.label, e.dst}));
    j["edges"] = edges;
    if (transducer && !m.claims.empty())
        j["claims"] = m.claims;
    return j;
}

std::map<std::string, std::string> string_map(const json& j, const std::string& where) {
    std::map<std::string, std::string> out;
    if (!j.is_object())
        json_fail(where, "expected an object");
    for (const auto& [k, v] : j.items()) {
        if (v.is_string())
            out[k] = v.get<std::string>();
        else if (v.is_array())
            out[k] = join(v.get<std::vector<std::string>>(), ",");
        else if (v.is_number_unsigned())
            out[k] = std::to_string(v.get<std::size_t>());
        else
            json_fail(where + "." + k, "expected a string or a list");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Expressions

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    ExprPtr parse() {
        auto e = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(1, pos_ + 1, what); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // union and intersection share one precedence level, left associative
    ExprPtr expr() {
        auto e = atom();
        while (true) {
            if (eat('|'))
                e = union_expr(e, atom());
            else if (eat('&'))
                e = inter_expr(e, atom());
            else
                return e;
        }
    }

    ExprPtr atom() {
        if (eat('(')) {
            auto e = expr();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_name(s_.substr(pos_, 1)))
            ++pos_;
        if (start == pos_)
            fail(pos_ == s_.size() ? "unexpected end of expression" : "expected a name");
        std::string name(s_.substr(start, pos_ - start));
        if (eat('(')) {
            auto arg = expr();
            if (!eat(')'))
                fail("expected ')'");
            return apply_expr(name, arg);
        }
        return lang(name);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Binding

AlphabetPtr build_alphabet(const AlphabetSpec& spec) {
    if (spec.preset == "raptors") {
        if (!spec.symbols.empty() || !spec.roles.empty() || !spec.declass.empty() || !spec.revoke.empty() ||
            spec.admissible)
            throw ParseError(0, 0, "the raptors alphabet preset cannot be combined with other alphabet lines");
        return raptors_alphabet();
    }
    if (!spec.preset.empty())
        throw ParseError(0, 0, "unknown alphabet preset '" + spec.preset + "'");
    Alphabet a(spec.symbols);
    for (const auto& [letter, names] : spec.roles)
        for (const auto& n : names)
            a.set_role(a.at(n), *role_from_letter(letter));
    for (const auto& [d, cs] : spec.declass)
        a.set_declass(a.at(d), a.to_set(cs));
    for (const auto& [r, ps] : spec.revoke)
        a.set_revoke(a.at(r), a.to_set(ps));
    if (spec.admissible)
        a.set_admissible(a.to_set(*spec.admissible));
    a.validate();
    return make_alphabet(std::move(a));
}

Word label_word(const Alphabet& A, const std::string& text) {
    Word w;
    if (text == "-")
        return w;
    std::string cur;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '.') {
            w.push_back(A.at(cur));
            cur.clear();
        } else {
            cur += text[i];
        }
    }
    return w;
}

Nfa build_automaton(const AlphabetPtr& A, const MachineSpec& m) {
    Nfa n(A);
    n.add_states(m.states);
    for (auto s : m.initial)
        n.set_initial(static_cast<State>(s));
    for (auto s : m.final)
        n.set_final(static_cast<State>(s));
    for (const auto& e : m.edges)
        n.add_transition(static_cast<State>(e.src), e.label == "-" ? kEpsilon : A->at(e.label),
                         static_cast<State>(e.dst));
    return n;
}

Transducer build_transducer(const AlphabetPtr& A, const MachineSpec& m, const std::string& name) {
    WordTransducer raw{A, A, m.states, {}, {}, {}};
    for (auto s : m.initial)
        raw.initial.push_back(static_cast<State>(s));
    for (auto s : m.final)
        raw.finals.push_back(static_cast<State>(s));
    for (const auto& e : m.edges) {
        auto bar = e.label.find('|');
        raw.edges.push_back({static_cast<State>(e.src), label_word(*A, e.label.substr(0, bar)),
                             label_word(*A, e.label.substr(bar + 1)), static_cast<State>(e.dst)});
    }
    auto t = normalize(raw);
    ObserverTag tag{name, ObserverKind::relational, false, false};
    for (const auto& c : m.claims) {
        tag.functional_claimed |= c == "functional";
        tag.idempotent_claimed |= c == "idempotent";
    }
    t.set_tag(tag);
    return t;
}

class Binder {
public:
    Binder(const PropertyFile& f, BoundModel& out) : f_(f), out_(out) {
        for (std::size_t i = 0; i < f.languages.size(); ++i)
            langs_[f.languages[i].name] = i;
        for (std::size_t i = 0; i < f.observers.size(); ++i)
            obs_[f.observers[i].name] = i;
    }

    void all() {
        for (const auto& l : f_.languages)
            language(l.name, l.loc);
        for (const auto& o : f_.observers)
            observer(o.name, o.loc);
    }

    const Nfa& language(const std::string& name, const Loc& from) {
        if (auto it = out_.env.languages.find(name); it != out_.env.languages.end())
            return it->second;
        auto it = langs_.find(name);
        if (it == langs_.end())
            fail_at(from, "unresolved language '" + name + "'");
        const auto& spec = f_.languages[it->second];
        enter(name, spec.loc);
        Nfa n = guarded(spec.loc, "language '" + name + "'", [&] { return build(spec); });
        leave(name);
        return out_.env.languages.emplace(name, std::move(n)).first->second;
    }

    const Transducer& observer(const std::string& name, const Loc& from) {
        if (auto it = out_.env.observers.find(name); it != out_.env.observers.end())
            return it->second;
        auto it = obs_.find(name);
        if (it == obs_.end())
            fail_at(from, "unresolved observer '" + name + "'");
        const auto& spec = f_.observers[it->second];
        enter(name, spec.loc);
        Transducer t = guarded(spec.loc, "observer '" + name + "'", [&] {
            auto t = build(spec);
            verify_claims(t);
            return t;
        });
        leave(name);
        return out_.env.observers.emplace(name, std::move(t)).first->second;
    }

private:
    void enter(const std::string& name, const Loc& loc) {
        if (std::find(stack_.begin(), stack_.end(), name) != stack_.end()) {
            std::string cycle;
            bool on = false;
            for (const auto& s : stack_) {
                on |= s == name;
                if (on)
                    cycle += s + " -> ";
            }
            fail_at(loc, "cyclic definition: " + cycle + name);
        }
        stack_.push_back(name);
    }
    void leave(const std::string&) { stack_.pop_back(); }

    // Constructor errors become diagnostics at the definition site; the state
    // ceiling and nested diagnostics pass through unchanged.
    template <typename F>
    auto guarded(const Loc& loc, const std::string& what, F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (const ParseError& e) {
            if (e.line() == 0 && loc.line != 0)
                fail_at(loc, what + ": " + e.what());
            throw;
        } catch (const StateLimitExceeded&) {
            throw;
        } catch (const Error& e) {
            fail_at(loc, what + ": " + e.what());
        }
    }

    SymbolSet symbols(const std::vector<std::string>& names) const { return out_.alphabet->to_set(names); }
    SymbolSet symbols(const std::string& list) const { return symbols(split_list(list)); }

    Nfa build(const LanguageSpec& l) {
        const auto& A = out_.alphabet;
        switch (l.kind) {
        case LanguageSpec::Kind::regex: return parse_regex(A, l.regex);
        case LanguageSpec::Kind::automaton: return build_automaton(A, l.automaton);
        case LanguageSpec::Kind::universal: return universal(A);
        case LanguageSpec::Kind::empty: return empty_language(A);
        case LanguageSpec::Kind::nonfix: {
            const auto& o = observer(l.observer, l.loc);
            return non_fixpoints(o, language(l.language, l.loc));
        }
        case LanguageSpec::Kind::raptors: {
            if (!A->same_symbols(*raptors_alphabet()))
                throw PreconditionError("raptors languages need 'alphabet raptors'");
            RaptorsConfig c;
            c.goats = l.raptors.goats;
            c.raptors = l.raptors.raptors;
            c.open_gates = l.raptors.gates;
            c.dismantled = l.raptors.dismantled;
            c.ambush_sync = l.raptors.ambush == "handshake" ? SyncMode::handshake : SyncMode::broadcast;
            return rebind(gen_raptors(c), A);
        }
        }
        throw InternalInconsistency("unknown language kind");
    }

    void arity(const ObserverSpec& o, std::size_t lo, std::size_t hi) const {
        if (o.args.size() < lo || o.args.size() > hi)
            throw PreconditionError(o.constructor + " takes " +
                                    (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                                    " arguments, got " + std::to_string(o.args.size()));
    }

    void allow_options(const ObserverSpec& o, std::set<std::string> keys) const {
        for (const auto& [k, v] : o.options)
            if (!keys.contains(k))
                throw PreconditionError("unknown option '" + k + "' for " + o.constructor);
    }

    Transducer build(const ObserverSpec& o) {
        const auto& A = out_.alphabet;
        const auto& c = o.constructor;
        if (c == "transducer")
            return build_transducer(A, o.machine, o.name);
        allow_options(o, c == "osd" ? std::set<std::string>{"max"}
                         : c == "fcd-figure" ? std::set<std::string>{"V'", "C'", "N'"}
                         : c == "admissible" ? std::set<std::string>{"X"}
                                             : std::set<std::string>{});
        Transducer t = [&]() -> Transducer {
            if (c == "identity") {
                arity(o, 0, 0);
                return identity(A);
            }
            if (c == "projection")
                return projection(A, symbols(o.args));
            if (c == "ok") {
                arity(o, 1, 1);
                return o_k(language(o.args[0], o.loc));
            }
            if (c == "last-letter") {
                arity(o, 0, 0);
                return orwellian(last_letter_views(A), o.name).transducer();
            }
            if (c == "ini") {
                arity(o, 0, 0);
                return ini_projection(A).transducer();
            }
            if (c == "osd") {
                arity(o, 0, 0);
                std::size_t max = InisdObserver::kDefaultMaxDeclass;
                if (o.options.contains("max"))
                    max = parse_count({o.options.at("max"), 0}, "a view bound");
                auto sd = std::make_shared<const InisdObserver>(A, max);
                out_.inisd[o.name] = sd;
                return sd->transducer();
            }
            if (c == "sigma") {
                Word sigma;
                for (const auto& d : o.args)
                    sigma.push_back(A->at(d));
                return o_sigma(A, sigma);
            }
            if (c == "l-del") {
                arity(o, 0, 0);
                return l_del(A);
            }
            if (c == "l-ins") {
                arity(o, 0, 1);
                return o.args.empty() ? l_ins(A) : l_ins(A, A->at(o.args[0]));
            }
            if (c == "o-del") {
                arity(o, 0, 0);
                return o_del(A);
            }
            if (c == "bsd-figure") {
                arity(o, 0, 0);
                return bsd_figure(A);
            }
            if (c == "fcd-figure") {
                arity(o, 0, 0);
                for (const char* k : {"V'", "C'", "N'"})
                    if (!o.options.contains(k))
                        throw PreconditionError(std::string("fcd-figure needs ") + k + "=");
                return fcd_figure(A, symbols(o.options.at("V'")), symbols(o.options.at("C'")),
                                  symbols(o.options.at("N'")));
            }
            if (c == "admissible") {
                arity(o, 1, 1);
                SymbolSet x = o.options.contains("X") ? symbols(o.options.at("X"))
                                                      : A->admissible().value_or(A->all());
                return admissible_observer(A, A->at(o.args[0]), x);
            }
            if (c == "sa" || c == "wa" || c == "csa" || c == "cwa") {
                arity(o, 0, 0);
                auto kind = c == "sa"   ? AnonymityKind::SA
                            : c == "wa" ? AnonymityKind::WA
                            : c == "csa" ? AnonymityKind::CSA
                                         : AnonymityKind::CWA;
                return anonymity_observer(kind, A);
            }
            if (c == "inverse") {
                arity(o, 1, 1);
                return inverse(observer(o.args[0], o.loc));
            }
            if (c == "compose") {
                arity(o, 2, SIZE_MAX);
                Transducer t = observer(o.args[0], o.loc);
                for (std::size_t i = 1; i < o.args.size(); ++i)
                    t = compose(t, observer(o.args[i], o.loc));
                return t;
            }
            if (c == "union") {
                arity(o, 1, SIZE_MAX);
                std::vector<Transducer> ts;
                for (const auto& a : o.args)
                    ts.push_back(observer(a, o.loc));
                return union_t(ts);
            }
            if (c == "restrict") {
                arity(o, 2, 2);
                return restrict_domain(observer(o.args[0], o.loc), language(o.args[1], o.loc));
            }
            throw PreconditionError("unknown observer constructor '" + c + "'");
        }();
        // derived observers keep their constructor's claims but carry the file's name
        auto tag = t.tag();
        tag.name = o.name;
        t.set_tag(tag);
        return t;
    }

    const PropertyFile& f_;
    BoundModel& out_;
    std::map<std::string, std::size_t> langs_, obs_;
    std::vector<std::string> stack_;
};

} // namespace

std::string_view assertion_kind_name(AssertionSpec::Kind kind) {
    switch (kind) {
    case AssertionSpec::Kind::inclusion: return "inclusion";
    case AssertionSpec::Kind::bsp: return "bsp";
    case AssertionSpec::Kind::opacity: return "opacity";
    case AssertionSpec::Kind::disclosure_scan: return "disclosure-scan";
    }
    return "?";
}

const std::vector<std::string>& observer_constructors() {
    static const std::vector<std::string> names{
        "identity", "projection", "ok",         "last-letter", "ini", "osd", "sigma",   "l-del",   "l-ins",
        "o-del",    "bsd-figure", "fcd-figure", "admissible",  "sa",  "wa",  "csa",     "cwa",     "inverse",
        "compose",  "union",      "restrict",   "transducer"};
    return names;
}

ExprPtr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

PropertyFile parse_property_text(std::string_view text) {
    auto f = TextParser(text).parse();
    validate(f);
    return f;
}

PropertyFile parse_property_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset only; count lines for the diagnostic
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, "invalid JSON");
    }
    if (!j.is_object())
        json_fail("document", "expected an object");
    PropertyFile f;
    if (!j.contains("alphabet"))
        json_fail("document", "missing 'alphabet'");
    const json& a = j.at("alphabet");
    if (a.is_string()) {
        f.alphabet.preset = a.get<std::string>();
    } else {
        f.alphabet.symbols = get<std::vector<std::string>>(a, "symbols", "alphabet");
        if (a.contains("roles"))
            for (const auto& [k, v] : a.at("roles").items()) {
                if (k.size() != 1 || !role_from_letter(k[0]))
                    json_fail("alphabet.roles", "unknown role '" + k + "'");
                f.alphabet.roles[k[0]] = v.get<std::vector<std::string>>();
            }
        for (const char* table : {"declass", "revoke"})
            if (a.contains(table))
                for (const auto& [k, v] : a.at(table).items())
                    (std::string(table) == "declass" ? f.alphabet.declass : f.alphabet.revoke)[k] =
                        v.get<std::vector<std::string>>();
        if (a.contains("admissible"))
            f.alphabet.admissible = get<std::vector<std::string>>(a, "admissible", "alphabet");
    }

    if (j.contains("languages"))
        for (std::size_t i = 0; i < j.at("languages").size(); ++i) {
            const auto& e = j.at("languages")[i];
            std::string where = "languages[" + std::to_string(i) + "]";
            LanguageSpec l;
            l.name = get<std::string>(e, "name", where);
            if (e.contains("regex")) {
                l.kind = LanguageSpec::Kind::regex;
                l.regex = trim_copy(get<std::string>(e, "regex", where));
            } else if (e.contains("automaton")) {
                l.kind = LanguageSpec::Kind::automaton;
                l.automaton = machine_from_json(e.at("automaton"), where + ".automaton", false);
            } else if (e.contains("raptors")) {
                l.kind = LanguageSpec::Kind::raptors;
                const auto& r = e.at("raptors");
                l.raptors.goats = r.value("goats", std::size_t{1});
                l.raptors.raptors = r.value("raptors", std::size_t{1});
                if (r.contains("gates")) {
                    const auto& g = r.at("gates");
                    std::string s = g.is_string() ? g.get<std::string>() : "";
                    if (g.is_array()) {
                        std::vector<std::string> parts;
                        for (const auto& k : g)
                            parts.push_back(std::to_string(k.get<int>()));
                        s = parts.empty() ? "none" : join(parts, ",");
                    }
                    l.raptors.gates = parse_gates(s, l.raptors.dismantled, {});
                }
                if (r.value("dismantled", false)) {
                    l.raptors.dismantled = true;
                    l.raptors.gates.clear();
                }
                l.raptors.ambush = r.value("ambush", std::string("broadcast"));
                if (l.raptors.ambush != "broadcast" && l.raptors.ambush != "handshake")
                    json_fail(where, "ambush is broadcast or handshake");
            } else if (e.contains("nonfix")) {
                l.kind = LanguageSpec::Kind::nonfix;
                l.observer = get<std::string>(e.at("nonfix"), "observer", where + ".nonfix");
                l.language = get<std::string>(e.at("nonfix"), "language", where + ".nonfix");
            } else if (e.value("universal", false)) {
                l.kind = LanguageSpec::Kind::universal;
            } else if (e.value("empty", false)) {
                l.kind = LanguageSpec::Kind::empty;
            } else {
                json_fail(where, "no language form given");
            }
            f.languages.push_back(std::move(l));
        }

    if (j.contains("observers"))
        for (std::size_t i = 0; i < j.at("observers").size(); ++i) {
            const auto& e = j.at("observers")[i];
            std::string where = "observers[" + std::to_string(i) + "]";
            ObserverSpec o;
            o.name = get<std::string>(e, "name", where);
            if (e.contains("transducer")) {
                o.constructor = "transducer";
                o.machine = machine_from_json(e.at("transducer"), where + ".transducer", true);
            } else {
                o.constructor = get<std::string>(e, "constructor", where);
                const auto& ctors = observer_constructors();
                if (o.constructor == "transducer" ||
                    std::find(ctors.begin(), ctors.end(), o.constructor) == ctors.end())
                    json_fail(where, "unknown observer constructor '" + o.constructor + "'");
                if (e.contains("args"))
                    o.args = get<std::vector<std::string>>(e, "args", where);
                if (e.contains("options"))
                    o.options = string_map(e.at("options"), where + ".options");
            }
            f.observers.push_back(std::move(o));
        }

    if (j.contains("assertions"))
        for (std::size_t i = 0; i < j.at("assertions").size(); ++i) {
            const auto& e = j.at("assertions")[i];
            std::string where = "assertions[" + std::to_string(i) + "]";
            AssertionSpec s;
            auto type = get<std::string>(e, "type", where);
            try {
                if (type == "inclusion") {
                    s.kind = AssertionSpec::Kind::inclusion;
                    s.lhs = to_string(*parse_expr(get<std::string>(e, "lhs", where)));
                    s.rhs = to_string(*parse_expr(get<std::string>(e, "rhs", where)));
                } else if (type == "bsp") {
                    s.kind = AssertionSpec::Kind::bsp;
                    s.bsp = get<std::string>(e, "kind", where);
                    s.language = get<std::string>(e, "language", where);
                    if (e.contains("options"))
                        s.options = string_map(e.at("options"), where + ".options");
                } else if (type == "opacity" || type == "disclosure-scan") {
                    s.kind = type == "opacity" ? AssertionSpec::Kind::opacity : AssertionSpec::Kind::disclosure_scan;
                    s.system = get<std::string>(e, "system", where);
                    s.secret = get<std::string>(e, "secret", where);
                    s.observer = get<std::string>(e, "observer", where);
                    if (s.kind == AssertionSpec::Kind::disclosure_scan)
                        s.bound = get<std::size_t>(e, "bound", where);
                } else {
                    json_fail(where, "unknown assertion type '" + type + "'");
                }
            } catch (const ParseError& err) {
                if (err.line() != 0)
                    json_fail(where, err.what());
                throw;
            }
            f.assertions.push_back(std::move(s));
        }

    for (const auto& [key, value] : j.items())
        if (key != "alphabet" && key != "languages" && key != "observers" && key != "assertions")
            json_fail("document", "unknown key '" + key + "'");
    validate(f);
    return f;
}

PropertyFile parse_property_file(std::string_view source) {
    for (char ch : source) {
        if (std::isspace(static_cast<unsigned char>(ch)))
            continue;
        return ch == '{' ? parse_property_json(source) : parse_property_text(source);
    }
    return parse_property_text(source);
}

PropertyFile load_property_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_property_file(ss.str());
}

std::string print_property_text(const PropertyFile& f) {
    std::ostringstream os;
    const auto& a = f.alphabet;
    if (!a.preset.empty())
        os << "alphabet " << a.preset << "\n";
    else
        os << "alphabet " << join(a.symbols, " ") << "\n";
    for (const auto& [letter, names] : a.roles)
        os << "role " << letter << (names.empty() ? "" : " ") << join(names, " ") << "\n";
    for (const auto& [d, cs] : a.declass)
        os << "declass " << d << " :" << (cs.empty() ? "" : " ") << join(cs, " ") << "\n";
    for (const auto& [r, ps] : a.revoke)
        os << "revoke " << r << " :" << (ps.empty() ? "" : " ") << join(ps, " ") << "\n";
    if (a.admissible)
        os << "admissible" << (a.admissible->empty() ? "" : " ") << join(*a.admissible, " ") << "\n";

    auto machine = [&](const MachineSpec& m) {
        os << " {\n  states " << m.states << "\n  initial";
        for (auto s : m.initial)
            os << " " << s;
        os << "\n  final";
        for (auto s : m.final)
            os << " " << s;
        os << "\n";
        for (const auto& e : m.edges)
            os << "  " << e.src << " " << e.label << " " << e.dst << "\n";
        if (!m.claims.empty())
            os << "  claims " << join(m.claims, " ") << "\n";
        os << "}\n";
    };

    if (!f.languages.empty())
        os << "\n";
    for (const auto& l : f.languages) {
        os << "language " << l.name << " = ";
        switch (l.kind) {
        case LanguageSpec::Kind::regex: os << "regex " << l.regex << "\n"; break;
        case LanguageSpec::Kind::automaton:
            os << "automaton";
            machine(l.automaton);
            break;
        case LanguageSpec::Kind::raptors:
            os << "raptors goats=" << l.raptors.goats << " raptors=" << l.raptors.raptors
               << " gates=" << gates_text(l.raptors) << " ambush=" << l.raptors.ambush << "\n";
            break;
        case LanguageSpec::Kind::nonfix: os << "nonfix " << l.observer << " " << l.language << "\n"; break;
        case LanguageSpec::Kind::universal: os << "universal\n"; break;
        case LanguageSpec::Kind::empty: os << "empty\n"; break;
        }
    }
    if (!f.observers.empty())
        os << "\n";
    for (const auto& o : f.observers) {
        os << "observer " << o.name << " = " << o.constructor;
        if (o.constructor == "transducer") {
            machine(o.machine);
            continue;
        }
        for (const auto& arg : o.args)
            os << " " << arg;
        for (const auto& [k, v] : o.options)
            os << " " << k << "=" << v;
        os << "\n";
    }
    if (!f.assertions.empty())
        os << "\n";
    for (const auto& s : f.assertions) {
        os << "assert " << assertion_kind_name(s.kind);
        switch (s.kind) {
        case AssertionSpec::Kind::inclusion: os << " " << s.lhs << " <= " << s.rhs; break;
        case AssertionSpec::Kind::bsp:
            os << " " << s.bsp << " " << s.language;
            for (const auto& [k, v] : s.options)
                os << " " << k << "=" << v;
            break;
        case AssertionSpec::Kind::opacity:
        case AssertionSpec::Kind::disclosure_scan:
            os << " system=" << s.system << " secret=" << s.secret << " observer=" << s.observer;
            if (s.kind == AssertionSpec::Kind::disclosure_scan)
                os << " bound=" << s.bound;
            break;
        }
        os << "\n";
    }
    return os.str();
}

std::string print_property_json(const PropertyFile& f) {
    json j;
    const auto& a = f.alphabet;
    if (!a.preset.empty()) {
        j["alphabet"] = a.preset;
    } else {
        json aj;
        aj["symbols"] = a.symbols;
        if (!a.roles.empty()) {
            json roles = json::object();
            for (const auto& [letter, names] : a.roles)
                roles[std::string(1, letter)] = names;
            aj["roles"] = roles;
        }
        if (!a.declass.empty())
            aj["declass"] = a.declass;
        if (!a.revoke.empty())
            aj["revoke"] = a.revoke;
        if (a.admissible)
            aj["admissible"] = *a.admissible;
        j["alphabet"] = aj;
    }
    json langs = json::array();
    for (const auto& l : f.languages) {
        json e;
        e["name"] = l.name;
        switch (l.kind) {
        case LanguageSpec::Kind::regex: e["regex"] = l.regex; break;
        case LanguageSpec::Kind::automaton: e["automaton"] = machine_to_json(l.automaton, false); break;
        case LanguageSpec::Kind::raptors:
            e["raptors"] = {{"goats", l.raptors.goats},
                            {"raptors", l.raptors.raptors},
                            {"gates", gates_text(l.raptors)},
                            {"ambush", l.raptors.ambush}};
            break;
        case LanguageSpec::Kind::nonfix: e["nonfix"] = {{"observer", l.observer}, {"language", l.language}}; break;
        case LanguageSpec::Kind::universal: e["universal"] = true; break;
        case LanguageSpec::Kind::empty: e["empty"] = true; break;
        }
        langs.push_back(e);
    }
    j["languages"] = langs;
    json obs = json::array();
    for (const auto& o : f.observers) {
        json e;
        e["name"] = o.name;
        if (o.constructor == "transducer") {
            e["transducer"] = machine_to_json(o.machine, true);
        } else {
            e["constructor"] = o.constructor;
            if (!o.args.empty())
                e["args"] = o.args;
            if (!o.options.empty())
                e["options"] = o.options;
        }
        obs.push_back(e);
    }
    j["observers"] = obs;
    json asserts = json::array();
    for (const auto& s : f.assertions) {
        json e;
        e["type"] = assertion_kind_name(s.kind);
        switch (s.kind) {
        case AssertionSpec::Kind::inclusion:
            e["lhs"] = s.lhs;
            e["rhs"] = s.rhs;
            break;
        case AssertionSpec::Kind::bsp:
            e["kind"] = s.bsp;
            e["language"] = s.language;
            if (!s.options.empty())
                e["options"] = s.options;
            break;
        case AssertionSpec::Kind::opacity:
        case AssertionSpec::Kind::disclosure_scan:
            e["system"] = s.system;
            e["secret"] = s.secret;
            e["observer"] = s.observer;
            if (s.kind == AssertionSpec::Kind::disclosure_scan)
                e["bound"] = s.bound;
            break;
        }
        asserts.push_back(e);
    }
    j["assertions"] = asserts;
    return j.dump(2) + "\n";
}

BoundModel bind(const PropertyFile& file) {
    BoundModel m;
    try {
        m.alphabet = build_alphabet(file.alphabet);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail_at(file.alphabet.loc, std::string("alphabet: ") + e.what());
    }
    Binder(file, m).all();
    return m;
}

} // namespace rif
