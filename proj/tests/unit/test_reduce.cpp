#include <doctest.h>

#include <random>

#include "../support/reference.hpp"
#include "asyncdes/blocks.hpp"
#include "asyncdes/reduce.hpp"

using namespace asyncdes;

namespace {

using namespace asyncdes::testing;

void check_against_naive(const Lts& l, Relation rel) { CHECK(agrees_with_naive(l, rel)); }

}  // namespace

TEST_CASE("partition refinement agrees with the naive checker") {
    std::mt19937 rng(11);
    for (int round = 0; round < 40; ++round) {
        const StateId n = 5 + rng() % 60;
        const Lts l = random_lts(rng, n, n * (1 + rng() % 3), 2, 0.4, false);
        CAPTURE(round);
        check_against_naive(l, Relation::Strong);
        check_against_naive(l, Relation::Branching);
    }
}

TEST_CASE("partition refinement on block-sized instances") {
    std::mt19937 rng(5);
    for (StateId n : {300u, 1000u}) {
        const Lts l = random_lts(rng, n, n * 3 / 2, 3, 0.15, false);
        check_against_naive(l, Relation::Branching);
    }
    const Lts shift = hide_all_but(local_lts(*make_block(BlockId::CtrlShift, BitDomain::Abstract, {})), {"CRYPT"});
    check_against_naive(shift, Relation::Branching);
    check_against_naive(shift, Relation::Strong);
    const Lts p = hide_gates(local_lts(*make_block(BlockId::P, BitDomain::Abstract, {})),
                             {"S_OUT_1", "S_OUT_2", "S_OUT_3", "S_OUT_4"});
    check_against_naive(p, Relation::Branching);
}

TEST_CASE("minimization is idempotent and serial equals parallel") {
    std::mt19937 rng(3);
    for (int round = 0; round < 20; ++round) {
        const StateId n = 20 + rng() % 500;
        const Lts l = random_lts(rng, n, n * 3, 3, 0.3, false);
        for (auto rel : {Relation::Strong, Relation::Branching}) {
            const auto a = bisimulation_serial(l, rel);
            const auto b = bisimulation_parallel(l, rel, 4);
            CHECK(a.block == b.block);
            const Lts m = minimize(l, rel);
            CHECK(write_aut(minimize(m, rel)) == write_aut(m));
        }
    }
}

TEST_CASE("acyclic branching kernel matches the general one") {
    std::mt19937 rng(17);
    for (int round = 0; round < 60; ++round) {
        const StateId n = 2 + rng() % 200;
        const Lts l = random_lts(rng, n, n * (1 + rng() % 4), 2, 0.5, true);
        const Lts a = minimize_acyclic(l);
        const Lts b = minimize(l, Relation::Branching);
        CHECK(write_aut(a) == write_aut(b));
    }
    const Lts back = read_aut_string("des (0, 2, 2)\n(0, a, 1)\n(1, b, 0)\n");
    CHECK_THROWS_AS(minimize_acyclic(back), std::invalid_argument);
}

TEST_CASE("tau cycles collapse and inert steps vanish") {
    const Lts l = read_aut_string("des (0, 4, 3)\n(0, i, 1)\n(1, i, 0)\n(1, a, 2)\n(0, a, 2)\n");
    CHECK(collapse_tau_cycles(l).num_states() == 2);
    const Lts m = minimize(l, Relation::Branching);
    CHECK(m.num_states() == 2);
    CHECK(m.num_transitions() == 1);
    CHECK(minimize(l, Relation::Strong).num_states() == 2);
}

TEST_CASE("equivalence verdicts and witnesses") {
    const Lts a = read_aut_string("des (0, 2, 3)\n(0, i, 1)\n(1, a, 2)\n");
    const Lts b = read_aut_string("des (0, 1, 2)\n(0, a, 1)\n");
    CHECK(equivalent(a, b, Relation::Branching).holds);
    const auto strong = equivalent(a, b, Relation::Strong);
    CHECK_FALSE(strong.holds);
    CHECK_FALSE(strong.witness.empty());
    CHECK(strong.witness.front() == "i");
    CHECK_FALSE(k_equivalent(a, b, 1).holds);
    CHECK(k_equivalent(a, b, 0).holds);
}

TEST_CASE("simulation preorder is directional") {
    const Lts once = read_aut_string("des (0, 2, 3)\n(0, a, 1)\n(1, b, 2)\n");
    const Lts loop = read_aut_string("des (0, 2, 2)\n(0, a, 1)\n(1, b, 0)\n");
    CHECK(simulated_by(once, loop, false).holds);
    const auto v = simulated_by(loop, once, false);
    CHECK_FALSE(v.holds);
    CHECK(v.witness == std::vector<std::string>{"a", "b", "a"});
    CHECK(simulated_by(loop, loop, true).holds);
    const Lts tau = read_aut_string("des (0, 3, 4)\n(0, a, 1)\n(1, i, 2)\n(2, b, 3)\n");
    CHECK(simulated_by(tau, loop, true).holds);
    CHECK_FALSE(simulated_by(tau, loop, false).holds);
}

TEST_CASE("isomorphism of minimal LTSs") {
    const Lts a = read_aut_string("des (0, 2, 2)\n(0, a, 1)\n(1, b, 0)\n");
    const Lts b = read_aut_string("des (1, 2, 2)\n(1, a, 0)\n(0, b, 1)\n");
    CHECK(isomorphic(a, b));
    CHECK_FALSE(isomorphic(a, read_aut_string("des (0, 2, 2)\n(0, b, 1)\n(1, a, 0)\n")));
}
