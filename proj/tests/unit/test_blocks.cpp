#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "asyncdes/blocks.hpp"

using namespace asyncdes;

namespace {

bool deterministic(const Lts& l) {
    for (StateId s = 0; s < l.num_states(); ++s) {
        std::set<LabelId> seen;
        for (const auto& t : l.out(s))
            if (!seen.insert(t.label).second) return false;
    }
    return true;
}

// No deadlock, and some state on a cycle is reachable from every state: the
// block settles into one loop it never leaves.
bool cyclic(const Lts& l) {
    const StateId n = l.num_states();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (StateId s = 0; s < n; ++s) {
        if (l.out(s).empty()) return false;
        std::vector<StateId> stack{s};
        while (!stack.empty()) {
            const StateId x = stack.back();
            stack.pop_back();
            for (const auto& t : l.out(x))
                if (!reach[s][t.dst]) {
                    reach[s][t.dst] = 1;
                    stack.push_back(t.dst);
                }
        }
    }
    for (StateId r = 0; r < n; ++r) {
        if (!reach[r][r]) continue;
        bool all = true;
        for (StateId s = 0; s < n && all; ++s) all = s == r || reach[s][r];
        if (all) return true;
    }
    return false;
}

std::optional<StateId> after(const Lts& l, StateId s, const std::string& label) {
    for (const auto& t : l.out(s))
        if (l.label_text(t.label) == label) return t.dst;
    return std::nullopt;
}

}  // namespace

TEST_CASE("block taxonomy") {
    CHECK(kNumBlocks == 28);
    std::set<std::string> names;
    int control = 0;
    for (auto id : all_blocks()) {
        names.insert(std::string(block_name(id)));
        CHECK(parse_block(block_name(id)) == id);
        control += is_control_block(id);
    }
    CHECK(names.size() == 28);
    CHECK(control == 10);
    CHECK(block_name(sbox_block(1)) == "SBOX_1");
    CHECK_THROWS(parse_block("SPLIT"));
}

TEST_CASE("abstract blocks are deterministic and cyclic") {
    for (bool tau : {false, true})
        for (bool seq : {false, true}) {
            const SemanticsOptions o{tau, seq};
            for (auto id : all_blocks()) {
                CAPTURE(block_name(id));
                CAPTURE(tau);
                CAPTURE(seq);
                const Lts l = local_lts(*make_block(id, BitDomain::Abstract, o));
                CHECK(l.num_states() >= 2);
                CHECK(deterministic(l));
                CHECK(cyclic(l));
            }
        }
}

TEST_CASE("the P join accepts its eight inputs in any order") {
    const Lts l = local_lts(*make_block(BlockId::P, BitDomain::Abstract, {}));
    CHECK(l.num_states() == 256);
    CHECK(l.num_transitions() == 8 * 128 + 1);
    std::array<int, 8> order;
    std::iota(order.begin(), order.end(), 1);
    std::set<StateId> ends;
    int perms = 0;
    do {
        StateId s = l.initial();
        for (int k : order) {
            const auto n = after(l, s, "S_OUT_" + std::to_string(k) + " !*");
            REQUIRE(n);
            s = *n;
        }
        ends.insert(s);
        ++perms;
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(perms == 40320);
    CHECK(ends.size() == 1);

    SemanticsOptions tau;
    tau.tau_on_join = true;
    CHECK(local_lts(*make_block(BlockId::P, BitDomain::Abstract, tau)).num_states() == 257);
    SemanticsOptions seq;
    seq.sequential_sboxes = true;
    CHECK(local_lts(*make_block(BlockId::P, BitDomain::Abstract, seq)).num_states() == 9);
}

TEST_CASE("local LTS sizes of the controller") {
    const std::map<BlockId, std::pair<std::size_t, std::size_t>> expected{
        {BlockId::Counter, {17, 17}},  {BlockId::CtrlMuxL, {4, 20}},  {BlockId::CtrlMuxK, {3, 19}},
        {BlockId::CtrlDmuxK, {3, 19}}, {BlockId::CtrlShift, {73, 80}}, {BlockId::Xor48, {258, 1028}},
    };
    for (const auto& [id, size] : expected) {
        CAPTURE(block_name(id));
        const Lts l = local_lts(*make_block(id, BitDomain::Abstract, {}));
        CHECK(l.num_states() == size.first);
        CHECK(l.num_transitions() == size.second);
    }
}

TEST_CASE("concrete word receives cannot be enumerated") {
    CHECK_THROWS(local_lts(*make_block(BlockId::Ip, BitDomain::Concrete, {})));
    CHECK(word_type(BitDomain::Abstract, 64).enumerable());
    CHECK_FALSE(word_type(BitDomain::Concrete, 64).enumerable());
}

TEST_CASE("shift commands") {
    using namespace cmd;
    CHECK(shift_left(shift_command(2, true)));
    CHECK_FALSE(shift_left(shift_command(1, false)));
    CHECK(shift_amount(shift_command(2, false)) == 2);
    CHECK(shift_amount(shift_command(0, true)) == 0);
}
