#include <random>

#include "doctest.h"
#include "rif/error.hpp"
#include "rif/opacity.hpp"
#include "rif/raptors.hpp"
#include "rif/regex.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace rif;

namespace {

AlphabetPtr ab() { return make_alphabet(std::vector<std::string>{"a", "b"}); }

std::set<Word> lang_of(const Nfa& n, std::size_t k) {
    auto ws = oracle::language(n, k);
    return {ws.begin(), ws.end()};
}

std::set<Word> parse_all(const AlphabetPtr& A, std::initializer_list<const char*> ws) {
    std::set<Word> out;
    for (auto w : ws)
        out.insert(A->parse_word(w));
    return out;
}

struct Raptors {
    Nfa system;
    InisdObserver observer;
    Nfa secret;

    explicit Raptors(const RaptorsConfig& c)
        : system(gen_raptors(c)), observer(system.alphabet()),
          secret(non_fixpoints(observer.transducer(), system)) {}
    Word w(const char* text) const { return system.alphabet()->parse_word(text); }
};

RaptorsConfig config(std::size_t n, std::size_t m, std::set<int> gates, bool dismantled = false) {
    RaptorsConfig c;
    c.goats = n;
    c.raptors = m;
    c.open_gates = std::move(gates);
    c.dismantled = dismantled;
    return c;
}

} // namespace

TEST_CASE("last-letter example") {
    auto A = ab();
    auto l = parse_regex(A, "(a+b)(a*+b*)(a+b)");
    auto phi = parse_regex(A, "a(a*+b*)(a+b)");
    auto o = orwellian(last_letter_views(A)).transducer();
    auto v = is_opaque(l, phi, o);
    CHECK(v.opaque);
    CHECK(v.warnings.empty());
    CHECK(is_opaque(l, empty_language(A), o).opaque);
    CHECK_THROWS_AS(is_opaque(l, parse_regex(A, "a*"), o), PreconditionError);

    // the last letter alone gives the first letter away
    auto v2 = is_opaque(l, phi, projection(A, A->all()));
    CHECK_FALSE(v2.opaque);
    CHECK(v2.observation == A->parse_word("aa"));
    CHECK(v2.disclosing_word == A->parse_word("aa"));
}

TEST_CASE("opacity agrees with the per-word quantifier reading") {
    auto A = ab();
    std::mt19937 rng(41);
    auto views = last_letter_views(A);
    std::vector<Transducer> observers{orwellian(views).transducer(), projection(A, {0}), projection(A, {1})};
    for (int round = 0; round < 60; ++round) {
        auto words = oracle::random_words(rng, 2, 2 + rng() % 8, 4);
        std::vector<Word> secret_words;
        for (const auto& w : words)
            if (rng() % 3 == 0)
                secret_words.push_back(w);
        auto l = finite_language(A, words);
        auto phi = finite_language(A, secret_words);
        const auto& o = observers[round % observers.size()];
        bool expected = true;
        for (const auto& w : secret_words) {
            auto target = oracle::image(o, w, 4);
            bool covered = false;
            for (const auto& u : words)
                if (std::find(secret_words.begin(), secret_words.end(), u) == secret_words.end() &&
                    oracle::image(o, u, 4) == target)
                    covered = true;
            expected = expected && covered;
        }
        auto v = is_opaque(l, phi, o);
        CHECK(v.opaque == expected);
        // a disclosing word exists iff some secret class lies inside the secret
        bool some_disclosure = !disclosure_scan(l, o, phi, 4).empty();
        if (some_disclosure)
            CHECK_FALSE(v.opaque);
        if (v.opaque)
            CHECK_FALSE(some_disclosure);
    }
}

TEST_CASE("observation classes") {
    auto A = ab();
    auto l = parse_regex(A, "(a+b)(a*+b*)(a+b)");
    auto w = A->parse_word("abba");
    CHECK(lang_of(observation_class(l, identity(A), w), 6) == std::set<Word>{w});
    auto o = orwellian(last_letter_views(A)).transducer();
    auto cls = observation_class(l, o, w);
    CHECK(accepts(cls, w));
    CHECK(includes(cls, l).holds);
    // O(abba) = bb: words of L ending in a with two b's
    CHECK(lang_of(cls, 6) == parse_all(A, {"bba", "abba"}));
    CHECK_THROWS_AS(observation_class(l, o, A->parse_word("a")), PreconditionError);
    CHECK_THROWS_AS(observation_class(l, strong_anonymity(A, A->all()), w), PreconditionError);

    auto phi = parse_regex(A, "a(a*+b*)(a+b)");
    CHECK_FALSE(discloses(l, o, phi, A->parse_word("bb")).has_value());
    CHECK_FALSE(discloses(l, o, phi, w).has_value());
}

TEST_CASE("relational observers are accepted with a warning") {
    auto A = ab();
    auto l = parse_regex(A, "(a+b)*");
    auto v = is_opaque(l, parse_regex(A, "a"), strong_anonymity(A, A->all()));
    CHECK(v.opaque);
    CHECK(v.warnings.size() == 1);
}

TEST_CASE("idempotent observers: inclusion iff opacity of the non-fixpoints") {
    Alphabet a({"v", "c", "d"});
    a.set_role(0, Role::visible);
    a.set_role(1, Role::confidential);
    a.set_role(2, Role::declassify);
    auto A = make_alphabet(a);
    auto pi = ini_projection(A).transducer();

    auto closed = parse_regex(A, "(v+c+d)*d(v+c+d)*+v*");
    auto r = opacity_iff_inclusion(closed, pi);
    CHECK(r.inclusion.holds);
    CHECK(r.opacity.opaque);

    auto cv = finite_language(A, std::vector<Word>{A->parse_word("c v")});
    r = opacity_iff_inclusion(cv, pi);
    CHECK_FALSE(r.inclusion.holds);
    CHECK(r.inclusion.witness == A->parse_word("v"));
    CHECK_FALSE(r.opacity.opaque);
    CHECK(r.opacity.observation == A->parse_word("v"));

    CHECK_THROWS_AS(opacity_iff_inclusion(cv, orwellian(last_letter_views(ab())).transducer()), Error);

    std::mt19937 rng(77);
    int agree = 0;
    for (int round = 0; round < 50; ++round) {
        auto o = gen::random_idempotent_eraser(rng, A, round);
        REQUIRE(gen::idempotent_on_samples(o, 4));
        auto l = oracle::random_nfa(rng, A, 1 + rng() % 6);
        auto res = opacity_iff_inclusion(l, o);
        agree += res.inclusion.holds == res.opacity.opaque;
    }
    CHECK(agree == 50);
}

TEST_CASE("Dining Raptors, gates 1 and 3 open") {
    Raptors r(config(1, 1, {1, 3}));
    CHECK(accepts(r.system, r.w("l3 l1 h2 l2")));
    CHECK(accepts(r.system, r.w("l3 l1 h2 l2 d2")));
    const auto& o = r.observer.transducer();
    auto v = is_opaque(r.system, r.secret, o);
    CHECK_FALSE(v.opaque);
    CHECK(v.observation == r.w("l3 l1 l2"));
    CHECK(v.disclosing_word == r.w("l3 l1 h2 l2"));
    auto report = discloses(r.system, o, r.secret, r.w("l3 l1 h2 l2"));
    REQUIRE(report);
    CHECK(report->observation == r.w("l3 l1 l2"));
    // with gates reacting to every ambush, h2 closes gate 3 before l3 can pass
    auto class_words = enumerate(observation_class(r.system, o, r.w("l3 l1 h2 l2")), 8);
    std::set<Word> cls(class_words.begin(), class_words.end());
    CHECK(cls == parse_all(r.system.alphabet(), {"l3 h2 l1 l2", "l3 l1 h2 l2"}));

    auto per = opacity_per_sigma(r.system, r.observer, r.secret);
    CHECK_FALSE(per.opaque);
    CHECK(per.components.front().sigma.empty());
    CHECK_FALSE(per.components.front().verdict.opaque);

    auto none = opacity_per_sigma(r.system, r.observer, empty_language(r.system.alphabet()));
    CHECK(none.opaque);
    for (const auto& c : none.components)
        CHECK(c.verdict.opaque);
}

TEST_CASE("Dining Raptors, other scenarios") {
    Raptors open1(config(1, 1, {1, 2, 3}));
    CHECK(accepts(open1.system, open1.w("l3 l1 h1 d1")));
    CHECK_FALSE(discloses(open1.system, open1.observer.transducer(), open1.secret, open1.w("l3 l1 h1 d1")));

    Raptors open2(config(2, 1, {1, 2, 3}));
    const auto& o2 = open2.observer.transducer();
    CHECK_FALSE(discloses(open2.system, o2, open2.secret, open2.w("l3 l1 h1 d1")));
    CHECK(discloses(open2.system, o2, open2.secret, open2.w("l3 l1 h1 d1 l3 l1 h2 l2")));

    Raptors gate3(config(2, 1, {3}));
    CHECK(discloses(gate3.system, gate3.observer.transducer(), gate3.secret, gate3.w("l3 h2 d2 h1 l1")));

    for (std::size_t n : {1, 2}) {
        Raptors dismantled(config(n, 1, {}, true));
        const auto& o = dismantled.observer.transducer();
        CHECK(is_opaque(dismantled.system, dismantled.secret, o).opaque);
        CHECK(disclosure_scan(dismantled.system, o, dismantled.secret, 6).empty());
    }
}

TEST_CASE("Dining Raptors structure") {
    Raptors dismantled(config(1, 1, {}, true));
    const auto& A = dismantled.system.alphabet();
    // the raptor alternates ambush and catch
    for (const auto& w : enumerate(dismantled.system, 8)) {
        int pending = 0;
        for (Symbol s : w) {
            auto role = A->role(s);
            if (role == Role::confidential)
                pending++;
            if (role == Role::declassify)
                pending--;
            REQUIRE((pending == 0 || pending == 1));
        }
    }
    // deterministic generation
    auto a = gen_raptors(config(2, 2, {1, 3}));
    auto b = gen_raptors(config(2, 2, {1, 3}));
    CHECK(a.num_states() == b.num_states());
    CHECK(a.transitions() == b.transitions());
    CHECK_THROWS_AS(gen_raptors(config(0, 1, {1})), PreconditionError);
    CHECK_THROWS_AS(gen_raptors(config(1, 1, {4})), PreconditionError);
}

TEST_CASE("per-sigma decomposition matches the global verdict") {
    Alphabet a({"v", "c1", "c2", "d1", "d2"});
    a.set_role(0, Role::visible);
    a.set_role(1, Role::confidential);
    a.set_role(2, Role::confidential);
    a.set_role(3, Role::declassify);
    a.set_role(4, Role::declassify);
    a.set_declass(3, {1});
    a.set_declass(4, {2});
    auto A = make_alphabet(a);
    InisdObserver osd(A);
    std::mt19937 rng(55);
    for (int round = 0; round < 20; ++round) {
        auto l = oracle::random_nfa(rng, A, 4, 0.2);
        auto phi = round % 2 ? non_fixpoints(osd.transducer(), l) : intersect(l, oracle::random_nfa(rng, A, 3, 0.3));
        auto per = opacity_per_sigma(l, osd, phi);
        CHECK(per.opaque == is_opaque(l, phi, osd.transducer()).opaque);
        CHECK(per.components.size() == 5);
    }
}
