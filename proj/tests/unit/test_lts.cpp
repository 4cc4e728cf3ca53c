#include <doctest.h>

#include "asyncdes/label.hpp"
#include "asyncdes/lts.hpp"

using namespace asyncdes;

namespace {
const char* kSmall =
    "des (0, 5, 4)\n"
    "(0, \"CRYPT !1\", 1)\n"
    "(1, i, 2)\n"
    "(2, \"DATA !0123456789ABCDEF\", 3)\n"
    "(3, \"OUTPUT !85E813540F0AB405\", 0)\n"
    "(1, \"KEY !*\", 3)\n";
}

TEST_CASE("AUT round trip is byte-stable") {
    const Lts a = read_aut_string(kSmall);
    CHECK(a.num_states() == 4);
    CHECK(a.num_transitions() == 5);
    const std::string once = write_aut(a);
    const std::string twice = write_aut(read_aut_string(once));
    CHECK(once == twice);
    CHECK(once.rfind("des (0, 5, 4)", 0) == 0);
}

TEST_CASE("AUT parse errors carry the line") {
    try {
        read_aut_string("des (0, 1, 2)\n(0, \"A\" 1)\n");
        FAIL("no error");
    } catch (const AutParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(read_aut_string("des (0, 2, 2)\n(0, A, 1)\n"), AutParseError);
    CHECK_THROWS_AS(read_aut_string("des (0, 1, 2)\n(0, A, 5)\n"), AutParseError);
}

TEST_CASE("transitions are canonical: sorted and deduplicated") {
    LabelTable t;
    const auto b = t.intern("b"), a = t.intern("a");
    const Lts l(3, 0, t, {{1, b, 2}, {0, b, 1}, {0, a, 1}, {0, b, 1}});
    REQUIRE(l.num_transitions() == 3);
    CHECK(l.transitions()[0].src == 0);
    CHECK(l.label_text(l.transitions()[0].label) == "a");
    CHECK(l.out(0).size() == 2);
    CHECK(l.out(2).empty());
}

TEST_CASE("strip, hide and restrict") {
    const Lts a = read_aut_string(kSmall);
    const Lts s = strip_offers(a);
    CHECK(s.labels().contains("CRYPT"));
    CHECK_FALSE(s.labels().contains("CRYPT !1"));
    const Lts h = hide_gates(a, {"KEY", "DATA"});
    CHECK_FALSE(h.labels().contains("KEY !*"));
    CHECK(stats(h).labels == 3);
    const Lts k = hide_all_but(a, {"OUTPUT"});
    CHECK(stats(k).labels == 2);
    CHECK(gate_of("OUTPUT !85E813540F0AB405") == "OUTPUT");
    CHECK(gate_of("i") == "i");
}

TEST_CASE("reachable part and shortest path") {
    const Lts a = read_aut_string("des (0, 3, 5)\n(0, a, 1)\n(1, b, 2)\n(3, c, 4)\n");
    const Lts r = reachable_part(a);
    CHECK(r.num_states() == 3);
    const auto p = shortest_path(a, 2);
    REQUIRE(p.size() == 2);
    CHECK(a.label_text(p[1].label) == "b");
    CHECK(stats(a).deadlocks == 2);
}
