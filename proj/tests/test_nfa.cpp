#include <random>

#include "doctest.h"
#include "rif/error.hpp"
#include "rif/limits.hpp"
#include "rif/nfa.hpp"
#include "rif/regex.hpp"
#include "support/oracle.hpp"

using namespace rif;

namespace {

AlphabetPtr ab() { return make_alphabet(std::vector<std::string>{"a", "b"}); }

Nfa re(const AlphabetPtr& A, const char* text) { return parse_regex(A, text); }

std::vector<Word> words(const AlphabetPtr& A, std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (auto w : ws)
        out.push_back(A->parse_word(w));
    return out;
}

bool same_up_to(const Nfa& x, const Nfa& y, std::size_t k) {
    for (const auto& w : oracle::all_words(x.alphabet()->size(), k))
        if (oracle::member(x, w) != oracle::member(y, w))
            return false;
    return true;
}

} // namespace

TEST_CASE("union") {
    auto A = ab();
    CHECK(same_up_to(unite(empty_language(A), re(A, "a*")), re(A, "a*"), 6));
    CHECK_FALSE(accepts(unite(re(A, "a*"), re(A, "b*")), A->parse_word("ab")));
    CHECK_THROWS_AS(unite(re(A, "a"), universal(make_alphabet(std::vector<std::string>{"a"}))), AlphabetMismatch);
}

TEST_CASE("intersect") {
    auto A = ab();
    auto L = re(A, "(a+b)(a*+b*)(a+b)");
    CHECK(same_up_to(intersect(L, universal(A)), L, 6));
    CHECK(enumerate(intersect(re(A, "a*b"), re(A, "ab*")), 6) == words(A, {"ab"}));
    CHECK(is_empty(intersect(L, empty_language(A))).empty);
}

TEST_CASE("complement") {
    auto A = ab();
    auto L = re(A, "(a+b)(a*+b*)(a+b)");
    CHECK(same_up_to(complement(complement(L)), L, 6));
    CHECK(same_up_to(complement(empty_language(A)), universal(A), 6));
    auto c = complement(re(A, "a*"));
    CHECK(accepts(c, A->parse_word("ab")));
    CHECK_FALSE(accepts(c, A->parse_word("aa")));
}

TEST_CASE("emptiness") {
    auto A = ab();
    Nfa nofinal(A);
    nofinal.add_state();
    nofinal.set_initial(0);
    CHECK(is_empty(nofinal).empty);
    auto r = is_empty(re(A, "a*"));
    CHECK_FALSE(r.empty);
    CHECK(r.witness->word.empty());
    // a*b and ba* share exactly the word b
    auto shared = is_empty(intersect(re(A, "a*b"), re(A, "ba*")));
    CHECK_FALSE(shared.empty);
    CHECK(shared.witness->word == A->parse_word("b"));
    CHECK(is_empty(intersect(re(A, "a*b"), re(A, "ba*a"))).empty);
    CHECK(is_empty(re(A, "ba+ab")).witness->word == A->parse_word("ab"));
}

TEST_CASE("inclusion") {
    auto A = ab();
    auto L = re(A, "(a+b)(a*+b*)(a+b)");
    for (auto engine : {InclusionEngine::complement, InclusionEngine::antichain}) {
        CHECK(includes(L, L, engine).holds);
        CHECK(includes(re(A, "a*"), re(A, "(a+b)*"), engine).holds);
        auto r = includes(re(A, "(a+b)*"), re(A, "a*"), engine);
        CHECK_FALSE(r.holds);
        CHECK(r.witness->word == A->parse_word("b"));
    }
}

TEST_CASE("enumerate") {
    auto A = ab();
    CHECK(enumerate(re(A, "a*"), 2) == words(A, {"ε", "a", "aa"}));
    CHECK(enumerate(empty_language(A), 5).empty());
    CHECK(enumerate(re(A, "(a+b)(a*+b*)(a+b)"), 3) ==
          words(A, {"aa", "ab", "ba", "bb", "aaa", "aab", "aba", "abb", "baa", "bab", "bba", "bbb"}));
}

TEST_CASE("regex syntax") {
    auto A = ab();
    CHECK(enumerate(re(A, "ab*"), 2) == words(A, {"a", "ab"}));
    CHECK(enumerate(re(A, "ε + ∅ + b"), 2) == words(A, {"ε", "b"}));
    CHECK_THROWS_AS(re(A, "(a"), RegexError);
    CHECK_THROWS_AS(re(A, "c"), RegexError);
    CHECK_THROWS_AS(re(A, "a+"), RegexError);
    auto B = make_alphabet(std::vector<std::string>{"l1", "l2", "h1"});
    CHECK(enumerate(re(B, "l1 (h1 + l2)*"), 2) == std::vector<Word>{{0}, {0, 1}, {0, 2}});
}

TEST_CASE("minimize and determinize preserve the language") {
    std::mt19937 rng(7);
    auto A = make_alphabet(std::vector<std::string>{"a", "b", "c"});
    for (int i = 0; i < 50; ++i) {
        auto x = oracle::random_nfa(rng, A, 5);
        auto d = determinize(x);
        auto m = minimize(x);
        CHECK(same_up_to(d, x, 5));
        CHECK(same_up_to(m, x, 5));
        CHECK(m.num_states() <= d.num_states());
        CHECK(minimize(m).num_states() == m.num_states());
    }
}

TEST_CASE("random boolean operations agree with brute force") {
    std::mt19937 rng(11);
    auto A = ab();
    const auto ws = oracle::all_words(2, 6);
    for (int i = 0; i < 200; ++i) {
        auto x = oracle::random_nfa(rng, A, 4);
        auto y = oracle::random_nfa(rng, A, 4);
        auto u = unite(x, y);
        auto n = intersect(x, y);
        auto c = complement(x);
        auto dm_l = complement(unite(x, y));
        auto dm_r = intersect(complement(x), complement(y));
        for (const auto& w : ws) {
            bool in_x = oracle::member(x, w), in_y = oracle::member(y, w);
            REQUIRE(oracle::member(u, w) == (in_x || in_y));
            REQUIRE(oracle::member(n, w) == (in_x && in_y));
            REQUIRE(oracle::member(c, w) == !in_x);
            REQUIRE(oracle::member(dm_l, w) == oracle::member(dm_r, w));
            REQUIRE(accepts(x, w) == in_x);
        }
    }
}

TEST_CASE("inclusion engines agree and return least witnesses") {
    std::mt19937 rng(23);
    auto A = ab();
    for (int i = 0; i < 200; ++i) {
        auto x = oracle::random_nfa(rng, A, 5);
        auto y = oracle::random_nfa(rng, A, 5);
        auto r1 = includes(x, y, InclusionEngine::complement);
        auto r2 = includes(x, y, InclusionEngine::antichain);
        REQUIRE(r1.holds == r2.holds);
        REQUIRE(r1.holds == is_empty(intersect(x, complement(y))).empty);
        if (!r1.holds) {
            REQUIRE(r1.witness->word == r2.witness->word);
            auto expected = oracle::least_difference(x, y, r1.witness->word.size());
            REQUIRE(expected.has_value());
            CHECK(*expected == r1.witness->word);
        } else {
            CHECK_FALSE(oracle::least_difference(x, y, 6).has_value());
        }
    }
}

TEST_CASE("concat, star and enumerate against brute force") {
    std::mt19937 rng(5);
    auto A = ab();
    for (int i = 0; i < 50; ++i) {
        auto x = oracle::random_nfa(rng, A, 3);
        auto y = oracle::random_nfa(rng, A, 3);
        auto xy = concat(x, y);
        auto xs = star(x);
        CHECK(enumerate(xy, 5) == oracle::language(xy, 5));
        for (const auto& w : oracle::all_words(2, 5)) {
            bool split = false;
            for (std::size_t k = 0; k <= w.size() && !split; ++k)
                split = oracle::member(x, Word(w.begin(), w.begin() + k)) &&
                        oracle::member(y, Word(w.begin() + k, w.end()));
            REQUIRE(oracle::member(xy, w) == split);
        }
        CHECK(oracle::member(xs, {}));
    }
}

TEST_CASE("state ceiling aborts constructions") {
    auto A = ab();
    // (a+b)* a (a+b)^6: subset construction needs 2^7 states
    auto x = re(A, "(a+b)*a(a+b)(a+b)(a+b)(a+b)(a+b)(a+b)");
    ScopedStateLimit limit(50);
    CHECK_THROWS_AS(determinize(x), StateLimitExceeded);
}

TEST_CASE("sync_product") {
    auto A = make_alphabet(std::vector<std::string>{"a", "b"});
    Nfa c(A);
    c.add_states(2);
    c.set_initial(0);
    c.add_transition(0, 0, 1);
    c.add_transition(1, 1, 0);
    Nfa single = sync_product(std::span<const Nfa>(&c, 1), {});
    CHECK(single.num_states() == 2);
    CHECK(enumerate(single, 3) == std::vector<Word>{{}, {0}, {0, 1}, {0, 1, 0}});

    // an offerer of `a` and a partner holding `~a`
    auto P = make_alphabet(std::vector<std::string>{"~a"});
    Nfa partner(P);
    partner.add_states(2);
    partner.set_initial(0);
    partner.add_transition(0, 0, 1);
    std::vector<Nfa> comps{c, partner};
    for (auto mode : {SyncMode::broadcast, SyncMode::handshake}) {
        auto prod = sync_product(comps, {{"a", Complement{"~a", mode}}});
        CHECK(prod.alphabet()->symbols() == std::vector<std::string>{"a", "b"});
        CHECK(accepts(prod, {0, 1}));
        CHECK_FALSE(accepts(prod, {0, 1, 0}));
    }
    CHECK_THROWS_AS(sync_product(comps, {}), PreconditionError);

    // broadcast needs every holder; handshake needs exactly one
    std::vector<Nfa> three{c, partner, partner};
    auto bc = sync_product(three, {{"a", Complement{"~a", SyncMode::broadcast}}});
    auto hs = sync_product(three, {{"a", Complement{"~a", SyncMode::handshake}}});
    CHECK_FALSE(accepts(bc, {0, 1, 0}));
    CHECK(accepts(hs, {0, 1, 0}));
    CHECK_FALSE(accepts(hs, {0, 1, 0, 1, 0}));
}
