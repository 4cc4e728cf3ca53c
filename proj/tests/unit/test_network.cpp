#include <doctest.h>

#include "asyncdes/checks.hpp"

using namespace asyncdes;

namespace {

ProcessPtr chain(const std::string& name, const std::vector<std::pair<std::string, NetLabel>>& steps) {
    LabelTable t;
    std::vector<Transition> ts;
    Alphabet alpha;
    std::vector<GateId> gates;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        ts.push_back({static_cast<StateId>(i), t.intern(steps[i].first), static_cast<StateId>((i + 1) % steps.size())});
        alpha.emplace(steps[i].first, steps[i].second);
        if (std::find(gates.begin(), gates.end(), steps[i].second.gate) == gates.end())
            gates.push_back(steps[i].second.gate);
    }
    return as_process(name, gates, Lts(static_cast<StateId>(steps.size()), 0, t, ts), alpha);
}

NetLabel sync(const char* g) { return {gate_id(g), false, {}}; }
NetLabel emit(const char* g, int v) { return {gate_id(g), true, Value::nat(v)}; }

}  // namespace

TEST_CASE("rendezvous on shared gates, interleaving elsewhere") {
    const Network net({chain("P1", {{"TA", sync("TA")}, {"TB", sync("TB")}}),
                       chain("P2", {{"TA", sync("TA")}, {"TC", sync("TC")}})});
    REQUIRE(net.rule(gate_id("TA")) != nullptr);
    CHECK(net.rule(gate_id("TA"))->participants.size() == 2);
    const auto e = explore(net);
    CHECK(e.lts.num_states() == 4);
    CHECK(e.lts.num_transitions() == 5);
}

TEST_CASE("emitters must agree on the value") {
    const Network agree({chain("P1", {{"TV !1", emit("TV", 1)}}), chain("P2", {{"TV !1", emit("TV", 1)}})});
    CHECK(explore(agree).lts.num_transitions() == 1);
    const Network clash({chain("P1", {{"TV !1", emit("TV", 1)}}), chain("P2", {{"TV !2", emit("TV", 2)}})});
    const auto e = explore(clash);
    CHECK(e.lts.num_states() == 1);
    CHECK(e.lts.num_transitions() == 0);
}

TEST_CASE("hidden gates render as i") {
    Network net({chain("P1", {{"TA", sync("TA")}, {"TB", sync("TB")}})});
    net.hide({"TB"});
    const auto e = explore(net);
    CHECK(e.lts.labels().contains("i"));
    CHECK_FALSE(e.lts.labels().contains("TB"));
    CHECK(net.visible_gates() == std::vector<std::string>{"TA"});
}

TEST_CASE("DES network shape") {
    const Network open = des_network(BitDomain::Abstract, {}, false);
    CHECK(open.size() == 28);
    CHECK(open.visible_gates() == observable_gates());
    CHECK(des_network(BitDomain::Concrete, {}, true).size() == 29);
    CHECK_NOTHROW(open.index_of("CTRL_SHIFT"));
    CHECK_THROWS(open.index_of("SPLIT"));
}

TEST_CASE("open concrete network has free word receives") {
    const Network net = des_network(BitDomain::Concrete, {}, false);
    ExploreOptions eo;
    eo.max_states = 1000;
    CHECK_THROWS_AS(explore(net, eo), OpenNetworkError);
}

TEST_CASE("exploration limits") {
    ExploreOptions eo;
    eo.max_states = 500;
    CHECK_THROWS_AS(explore(des_network(BitDomain::Abstract, {}, false), eo), ExplorationLimitError);
    eo.max_states = 10'000'000;
    eo.max_depth = 5;
    const auto e = explore(des_network(BitDomain::Abstract, {}, false), eo);
    CHECK(e.truncated());
    CHECK(e.depth == 5);
}

TEST_CASE("numbering is identical for 1 and 8 jobs") {
    SemanticsOptions seq;
    seq.sequential_sboxes = true;
    const Network net = des_network(BitDomain::Concrete, seq, true);
    const auto a = explore_serial(net, {});
    const auto b = explore_parallel(net, {}, 8);
    CHECK(a.lts.num_states() == b.lts.num_states());
    CHECK(a.lts.transitions() == b.lts.transitions());
    CHECK(a.lts.labels().texts() == b.lts.labels().texts());
    CHECK(write_aut(a.lts) == write_aut(b.lts));

    struct Count final : StateSpaceVisitor {
        std::size_t n = 0;
        void on_transition(StateId, const NetLabel&, StateId, bool) override { ++n; }
    } v;
    const auto s = visit_state_space(net, v);
    CHECK(s.states == a.lts.num_states());
    CHECK(v.n == a.lts.num_transitions());
    CHECK(s.depth == a.depth);
}

TEST_CASE("compositional generation of the abstract model") {
    ComposeReport rep;
    const auto e = abstract_model({}, &rep);
    CHECK(e.lts.num_states() == 28);
    CHECK(e.lts.num_transitions() == 78);
    const std::vector<std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::size_t>> steps{
        {"CIPHER", 27280, 159776, 14, 29},       {"DATA_PATH", 2961, 8448, 381, 1394},
        {"KEY_PATH", 2592, 10216, 202, 1295},    {"CONTROLLER", 1105, 2824, 1017, 2642},
        {"CONTROL_KEYS", 4442, 14841, 502, 1351}, {"DES", 1098, 3569, 28, 78},
    };
    REQUIRE(rep.steps.size() == steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& [name, s, t, ms, mt] = steps[i];
        CAPTURE(name);
        CHECK(rep.steps[i].name == name);
        CHECK(rep.steps[i].states == s);
        CHECK(rep.steps[i].transitions == t);
        CHECK(rep.steps[i].min_states == ms);
        CHECK(rep.steps[i].min_transitions == mt);
    }
}

TEST_CASE("compositional and direct generation agree" * doctest::test_suite("slow")) {
    SemanticsOptions seq;
    seq.sequential_sboxes = true;
    ModelConfig c;
    c.options = seq;
    const auto composed = abstract_model(c);
    ExploreOptions eo;
    eo.jobs = 1;
    const auto direct = explore(des_network(BitDomain::Abstract, seq, false), eo);
    const Lts m = minimize(direct.lts, Relation::Branching);
    CHECK(m.num_states() == 28);
    CHECK(m.num_transitions() == 78);
    CHECK(isomorphic(m, composed.lts));
}
