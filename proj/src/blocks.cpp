#include "asyncdes/blocks.hpp"

#include <functional>
#include <stdexcept>

namespace asyncdes {

namespace {

constexpr std::array<BlockId, kNumBlocks> kAllBlocks = [] {
    std::array<BlockId, kNumBlocks> a{};
    for (int i = 0; i < kNumBlocks; ++i) a[static_cast<std::size_t>(i)] = static_cast<BlockId>(i);
    return a;
}();

constexpr std::string_view kBlockNames[kNumBlocks] = {
    "COUNTER", "CTRL_MUX_L", "CTRL_MUX_R", "CTRL_MUX_K", "CTRL_DMUX_K", "CTRL_SHIFT", "CHOOSE_L", "CHOOSE_R",
    "CHOOSE_K", "DUP_K",     "PC1",        "SHIFT_C",    "SHIFT_D",     "PC2",        "IP",
    "XOR32",    "FP",        "E",          "XOR48",      "SBOX_1",      "SBOX_2",     "SBOX_3",   "SBOX_4",
    "SBOX_5",   "SBOX_6",    "SBOX_7",     "SBOX_8",     "P",
};

GateId g(std::string_view name) { return gate_id(name); }

std::uint64_t mask_of(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Reads all inputs (in parallel, or in declaration order), optionally takes an
// internal step, then writes all enabled outputs (in parallel, or in order),
// and starts over with cleared registers.
//   pc 0: gathering, aux = received mask
//   pc 1: join complete, internal step pending
//   pc 2: emitting, aux = sent mask
class DataflowBlock final : public Process {
public:
    struct Input {
        GateId gate;
        ValueType type;
    };
    using Store = std::function<void(LocalState&, int, const Value&)>;
    using Compute = std::function<void(LocalState&)>;
    using Produce = std::function<Value(const LocalState&, int)>;
    using Enabled = std::function<bool(const LocalState&, int)>;

    DataflowBlock(std::string name, std::vector<Input> inputs, std::vector<GateId> outputs, bool ordered_in,
                  bool ordered_out, bool tau_join, Store store, Compute compute, Produce produce,
                  Enabled enabled = {})
        : Process(std::move(name), collect(inputs, outputs)),
          inputs_(std::move(inputs)),
          outputs_(std::move(outputs)),
          ordered_in_(ordered_in),
          ordered_out_(ordered_out),
          tau_join_(tau_join),
          store_(std::move(store)),
          compute_(std::move(compute)),
          produce_(std::move(produce)),
          enabled_(std::move(enabled)) {}

    LocalState initial() const override { return {}; }

    void moves(const LocalState& s, std::vector<Move>& out) const override {
        switch (s.pc) {
            case 0:
                for (std::size_t i = 0; i < inputs_.size(); ++i) {
                    if (s.aux >> i & 1u) continue;
                    out.push_back(Move::recv(inputs_[i].gate, inputs_[i].type, static_cast<std::uint16_t>(i)));
                    if (ordered_in_) break;
                }
                break;
            case 1: {
                LocalState n = s;
                n.pc = 2;
                n.aux = 0;
                skip_disabled(n);
                out.push_back(Move::tau(n));
                break;
            }
            case 2:
                for (std::size_t i = 0; i < outputs_.size(); ++i) {
                    if (s.aux >> i & 1u || !is_enabled(s, static_cast<int>(i))) continue;
                    LocalState n = s;
                    n.aux |= 1u << i;
                    skip_disabled(n);
                    out.push_back(Move::emit(outputs_[i], produce_(s, static_cast<int>(i)), n));
                    if (ordered_out_) break;
                }
                break;
        }
    }

    LocalState accept(const LocalState& s, std::uint16_t tag, const Value& v) const override {
        LocalState n = s;
        store_(n, tag, v);
        n.aux |= 1u << tag;
        if (n.aux == mask_of(static_cast<int>(inputs_.size()))) {
            if (compute_) compute_(n);
            n.aux = 0;
            n.pc = 1;
            if (!tau_join_) {
                n.pc = 2;
                skip_disabled(n);
            }
        }
        return n;
    }

private:
    static std::vector<GateId> collect(const std::vector<Input>& in, const std::vector<GateId>& out) {
        std::vector<GateId> gs;
        for (const auto& i : in) gs.push_back(i.gate);
        gs.insert(gs.end(), out.begin(), out.end());
        return gs;
    }
    bool is_enabled(const LocalState& s, int i) const { return !enabled_ || enabled_(s, i); }
    // Marks disabled outputs as done; returns to gathering when nothing is left.
    void skip_disabled(LocalState& n) const {
        for (std::size_t i = 0; i < outputs_.size(); ++i)
            if (!is_enabled(n, static_cast<int>(i))) n.aux |= 1u << i;
        if (n.aux == mask_of(static_cast<int>(outputs_.size()))) n = LocalState{};
    }

    std::vector<Input> inputs_;
    std::vector<GateId> outputs_;
    bool ordered_in_;
    bool ordered_out_;
    bool tau_join_;
    Store store_;
    Compute compute_;
    Produce produce_;
    Enabled enabled_;
};

// CS !0 .. CS !16, cyclically.
class Counter final : public Process {
public:
    Counter() : Process("COUNTER", {g(gates::kCs)}) {}
    LocalState initial() const override { return {}; }
    void moves(const LocalState& s, std::vector<Move>& out) const override {
        LocalState n{(s.pc + 1) % kControlSteps, 0, 0, 0};
        out.push_back(Move::emit(g(gates::kCs), Value::nat(s.pc), n));
    }
};

// Receives CS !i and, when `command(i)` is defined, forwards it on `out_gate`.
//   pc 0: waiting for CS; pc 1: command in aux pending
class CommandMux final : public Process {
public:
    using Command = std::function<int(int)>;  // -1: consume silently
    CommandMux(std::string name, GateId out_gate, std::uint32_t n_commands, Command command)
        : Process(std::move(name), {g(gates::kCs), out_gate}), out_(out_gate), count_(n_commands),
          command_(std::move(command)) {}
    LocalState initial() const override { return {}; }
    void moves(const LocalState& s, std::vector<Move>& out) const override {
        if (s.pc == 0)
            out.push_back(Move::recv(g(gates::kCs), ValueType::nat(kControlSteps), 0));
        else
            out.push_back(Move::emit(out_, Value::nat(s.aux), LocalState{}));
    }
    LocalState accept(const LocalState&, std::uint16_t, const Value& v) const override {
        const int c = command_(static_cast<int>(v.bits));
        if (c < 0) return LocalState{};
        return LocalState{1, static_cast<std::uint32_t>(c), 0, 0};
    }
    std::uint32_t commands() const { return count_; }

private:
    GateId out_;
    std::uint32_t count_;
    Command command_;
};

// Reads the crypt flag, then issues one rotation command per scheduled round
// on CS !0 .. CS !(n-1). Once the last command is sent it consumes the rest of
// the CS cycle and, in parallel, accepts the next crypt flag.
//   pc 0: initial CRYPT
//   pc 1: offering CS !aux (aux < n)
//   pc 2: SHIFT command for round aux pending
//   pc 3: tail; aux = next CS step to consume (17 when done), a = new flag received (bit 1 = present)
//   pc 4: tail join complete, internal step pending
// b holds the current flag.
class CtrlShift final : public Process {
public:
    CtrlShift(bool tau_join, std::span<const int> schedule)
        : Process("CTRL_SHIFT", {g(gates::kCrypt), g(gates::kCs), g("SHIFT")}),
          tau_join_(tau_join),
          schedule_(schedule.begin(), schedule.end()) {
        if (schedule_.empty() || schedule_.size() > 16) throw std::invalid_argument("shift schedule must have 1..16 entries");
    }
    LocalState initial() const override { return {}; }

    void moves(const LocalState& s, std::vector<Move>& out) const override {
        const GateId cs = g(gates::kCs);
        switch (s.pc) {
            case 0: out.push_back(Move::recv(g(gates::kCrypt), ValueType::boolean(), 0)); break;
            case 1: out.push_back(Move::emit(cs, Value::nat(s.aux), LocalState{2, s.aux, s.a, s.b})); break;
            case 2: {
                const bool encrypt = s.b != 0;
                const auto amounts = round_shifts(schedule_, encrypt);
                const auto c = cmd::shift_command(amounts[s.aux], encrypt);
                LocalState n = s;
                ++n.aux;
                n.pc = n.aux < schedule_.size() ? 1 : 3;
                out.push_back(Move::emit(g("SHIFT"), Value::nat(c), n));
                break;
            }
            case 3:
                if (s.aux < kControlSteps) out.push_back(Move::emit(cs, Value::nat(s.aux), consumed(s)));
                if (!(s.a & 2)) out.push_back(Move::recv(g(gates::kCrypt), ValueType::boolean(), 0));
                break;
            case 4: out.push_back(Move::tau(restart(s))); break;
        }
    }

    LocalState accept(const LocalState& s, std::uint16_t, const Value& v) const override {
        if (s.pc == 0) return LocalState{1, 0, 0, v.bits};
        LocalState n = s;
        n.a = 2 | v.bits;
        return settle(n);
    }

private:
    static LocalState restart(const LocalState& s) { return LocalState{1, 0, 0, s.a & 1}; }
    LocalState consumed(const LocalState& s) const {
        LocalState n = s;
        ++n.aux;
        return settle(n);
    }
    // Leaves the tail once the cycle is consumed and the next flag is known.
    LocalState settle(const LocalState& n) const {
        if (n.aux == kControlSteps && (n.a & 2)) return tau_join_ ? LocalState{4, n.aux, n.a, n.b} : restart(n);
        return n;
    }

    bool tau_join_;
    std::vector<int> schedule_;
};

// Arbiter: reads a command, then the selected input, then writes the selected
// output(s).
//   pc 0: waiting for the command
//   pc 1: waiting for the input selected by aux
//   pc 2: emitting; aux = command, b = sent mask
class Chooser final : public Process {
public:
    struct Route {
        GateId input;
        std::vector<GateId> outputs;
    };
    Chooser(std::string name, GateId ctrl, std::uint32_t n_commands, ValueType data, std::vector<Route> routes)
        : Process(std::move(name), gates_of(ctrl, routes)), ctrl_(ctrl), n_(n_commands), data_(data),
          routes_(std::move(routes)) {}
    LocalState initial() const override { return {}; }

    void moves(const LocalState& s, std::vector<Move>& out) const override {
        switch (s.pc) {
            case 0: out.push_back(Move::recv(ctrl_, ValueType::nat(n_), 0)); break;
            case 1: out.push_back(Move::recv(routes_[s.aux].input, data_, 1)); break;
            case 2: {
                const auto& outs = routes_[s.aux].outputs;
                for (std::size_t i = 0; i < outs.size(); ++i) {
                    if (s.b >> i & 1u) continue;
                    LocalState n = s;
                    n.b |= 1u << i;
                    if (n.b == mask_of(static_cast<int>(outs.size()))) n = LocalState{};
                    out.push_back(Move::emit(outs[i], value(s.a), n));
                }
                break;
            }
        }
    }

    LocalState accept(const LocalState& s, std::uint16_t tag, const Value& v) const override {
        if (tag == 0) return LocalState{1, static_cast<std::uint32_t>(v.bits), 0, 0};
        return LocalState{2, s.aux, v.bits, 0};
    }

private:
    static std::vector<GateId> gates_of(GateId ctrl, const std::vector<Route>& routes) {
        std::vector<GateId> gs{ctrl};
        for (const auto& r : routes) {
            gs.push_back(r.input);
            gs.insert(gs.end(), r.outputs.begin(), r.outputs.end());
        }
        return gs;
    }
    Value value(std::uint64_t bits) const {
        return data_.kind == ValueKind::AbstractWord ? Value::abstract_word(data_.width) : Value::word(data_.width, bits);
    }

    GateId ctrl_;
    std::uint32_t n_;
    ValueType data_;
    std::vector<Route> routes_;
};

using Input = DataflowBlock::Input;

ProcessPtr unary(std::string name, GateId in, ValueType in_type, GateId out,
                 std::function<Value(std::uint64_t)> f) {
    return std::make_shared<DataflowBlock>(
        std::move(name), std::vector<Input>{{in, in_type}}, std::vector<GateId>{out}, false, false, false,
        [](LocalState& s, int, const Value& v) { s.a = v.bits; }, nullptr,
        [f = std::move(f)](const LocalState& s, int) { return f(s.a); });
}

}  // namespace

std::string_view block_name(BlockId id) { return kBlockNames[static_cast<int>(id)]; }

BlockId parse_block(std::string_view name) {
    for (auto id : kAllBlocks)
        if (block_name(id) == name) return id;
    throw std::invalid_argument("unknown block '" + std::string(name) + "'");
}

const std::array<BlockId, kNumBlocks>& all_blocks() { return kAllBlocks; }

bool is_control_block(BlockId id) { return static_cast<int>(id) <= static_cast<int>(BlockId::DupK); }

Value word_value(BitDomain d, int width, std::uint64_t bits) {
    return d == BitDomain::Concrete ? Value::word(width, bits & mask_of(width)) : Value::abstract_word(width);
}

ValueType word_type(BitDomain d, int width) {
    return d == BitDomain::Concrete ? ValueType::word(width) : ValueType::abstract_word(width);
}

ProcessPtr make_block(BlockId id, BitDomain dom, const SemanticsOptions& opt, std::span<const int> schedule) {
    const bool tj = opt.tau_on_join;
    auto wt = [dom](int w) { return word_type(dom, w); };
    auto wv = [dom](int w, std::uint64_t b) { return word_value(dom, w, b); };
    const std::string name(block_name(id));

    switch (id) {
        case BlockId::Counter: return std::make_shared<Counter>();
        case BlockId::CtrlMuxL:
        case BlockId::CtrlMuxR:
            return std::make_shared<CommandMux>(name, g(id == BlockId::CtrlMuxL ? "CTRL_L" : "CTRL_R"), cmd::kMuxCount,
                                                [](int i) {
                                                    return i == 0 ? static_cast<int>(cmd::kInitial)
                                                                  : i == 16 ? static_cast<int>(cmd::kFinal)
                                                                            : static_cast<int>(cmd::kLoop);
                                                });
        case BlockId::CtrlMuxK:
            return std::make_shared<CommandMux>(name, g("CTRL_K"), cmd::kKeySelCount, [](int i) {
                return i == 0 ? static_cast<int>(cmd::kFirstKey) : i < 16 ? static_cast<int>(cmd::kIntermediateKey) : -1;
            });
        case BlockId::CtrlDmuxK:
            return std::make_shared<CommandMux>(name, g("CTRL_DK"), cmd::kDupCount, [](int i) {
                return i < 15 ? static_cast<int>(cmd::kDuplicate) : i == 15 ? static_cast<int>(cmd::kForwardOnly) : -1;
            });
        case BlockId::CtrlShift: return std::make_shared<CtrlShift>(tj, schedule);

        case BlockId::ChooseL:
            return std::make_shared<Chooser>(
                name, g("CTRL_L"), cmd::kMuxCount, wt(32),
                std::vector<Chooser::Route>{{g("L_INIT"), {g("L_CUR")}}, {g("L_LOOP"), {g("L_CUR")}}, {g("L_LOOP"), {g("L_FINAL")}}});
        case BlockId::ChooseR:
            return std::make_shared<Chooser>(name, g("CTRL_R"), cmd::kMuxCount, wt(32),
                                             std::vector<Chooser::Route>{{g("R_INIT"), {g("R_CUR"), g("L_LOOP")}},
                                                                         {g("R_LOOP"), {g("R_CUR"), g("L_LOOP")}},
                                                                         {g("R_LOOP"), {g("R_FINAL")}}});
        case BlockId::ChooseK:
            return std::make_shared<Chooser>(name, g("CTRL_K"), cmd::kKeySelCount, wt(56),
                                             std::vector<Chooser::Route>{{g("FIRST_K"), {g("C_SEL"), g("D_SEL")}},
                                                                         {g("INTERMEDIATE_K"), {g("C_SEL"), g("D_SEL")}}});
        case BlockId::DupK:
            // inputs: command, C, D; outputs: PC2 feed, loop-back
            return std::make_shared<DataflowBlock>(
                name,
                std::vector<Input>{{g("CTRL_DK"), ValueType::nat(cmd::kDupCount)}, {g("C_SHIFTED"), wt(28)}, {g("D_SHIFTED"), wt(28)}},
                std::vector<GateId>{g("KEY_PC2"), g("INTERMEDIATE_K")}, false, false, tj,
                [](LocalState& s, int i, const Value& v) {
                    if (i == 0)
                        s.b = v.bits;
                    else if (i == 1)
                        s.a |= v.bits << 28;
                    else
                        s.a |= v.bits;
                },
                nullptr, [wv](const LocalState& s, int) { return wv(56, s.a); },
                [](const LocalState& s, int out) { return out == 0 || s.b == cmd::kDuplicate; });

        case BlockId::Pc1:
            return unary(name, g(gates::kKey), wt(64), g("FIRST_K"),
                         [dom, wv](std::uint64_t k) { return wv(56, permuted_choice_1(dom, Word64(k)).bits); });
        case BlockId::ShiftC:
        case BlockId::ShiftD: {
            const bool c = id == BlockId::ShiftC;
            return std::make_shared<DataflowBlock>(
                name, std::vector<Input>{{g(c ? "C_SEL" : "D_SEL"), wt(56)}, {g("SHIFT"), ValueType::nat(cmd::kShiftCount)}},
                std::vector<GateId>{g(c ? "C_SHIFTED" : "D_SHIFTED")}, false, false, tj,
                [c](LocalState& s, int i, const Value& v) {
                    if (i == 0)
                        s.a = c ? (v.bits >> 28) : (v.bits & 0xFFFFFFF);
                    else
                        s.b = v.bits;
                },
                [dom](LocalState& s) {
                    const auto cm = static_cast<std::uint32_t>(s.b);
                    s.a = rotate28(dom, Word28(s.a), cmd::shift_amount(cm), cmd::shift_left(cm)).bits;
                    s.b = 0;
                },
                [wv](const LocalState& s, int) { return wv(28, s.a); });
        }
        case BlockId::Pc2:
            return unary(name, g("KEY_PC2"), wt(56), g(gates::kSubkey),
                         [dom, wv](std::uint64_t cd) { return wv(48, permuted_choice_2(dom, Word56(cd)).bits); });

        case BlockId::Ip:
            // Also splits: L0 and R0 leave on separate gates.
            return std::make_shared<DataflowBlock>(
                name, std::vector<Input>{{g(gates::kData), wt(64)}}, std::vector<GateId>{g("L_INIT"), g("R_INIT")},
                false, false, false, [](LocalState& s, int, const Value& v) { s.a = v.bits; },
                [dom](LocalState& s) { s.a = initial_permutation(dom, Word64(s.a)).bits; },
                [wv](const LocalState& s, int out) { return wv(32, out == 0 ? s.a >> 32 : s.a); });
        case BlockId::Xor32:
            return std::make_shared<DataflowBlock>(
                name, std::vector<Input>{{g("L_CUR"), wt(32)}, {g("F_OUT"), wt(32)}}, std::vector<GateId>{g("R_LOOP")}, false,
                false, tj, [](LocalState& s, int i, const Value& v) { (i == 0 ? s.a : s.b) = v.bits; },
                [dom](LocalState& s) {
                    s.a = word_xor(dom, Word32(s.a), Word32(s.b)).bits;
                    s.b = 0;
                },
                [wv](const LocalState& s, int) { return wv(32, s.a); });
        case BlockId::Fp:
            return std::make_shared<DataflowBlock>(
                name, std::vector<Input>{{g("L_FINAL"), wt(32)}, {g("R_FINAL"), wt(32)}},
                std::vector<GateId>{g(gates::kOutput)}, false, false, tj,
                [](LocalState& s, int i, const Value& v) { (i == 0 ? s.a : s.b) = v.bits; },
                [dom](LocalState& s) {
                    // output = FP(R16 L16)
                    s.a = final_permutation(dom, concat(Word32(s.b), Word32(s.a))).bits;
                    s.b = 0;
                },
                [wv](const LocalState& s, int) { return wv(64, s.a); });

        case BlockId::E:
            return unary(name, g("R_CUR"), wt(32), g("E_OUT"),
                         [dom, wv](std::uint64_t r) { return wv(48, expand(dom, Word32(r)).bits); });
        case BlockId::Xor48: {
            std::vector<GateId> outs;
            for (int i = 1; i <= 8; ++i) outs.push_back(g("S_IN_" + std::to_string(i)));
            return std::make_shared<DataflowBlock>(
                name, std::vector<Input>{{g("E_OUT"), wt(48)}, {g(gates::kSubkey), wt(48)}}, std::move(outs), false,
                opt.sequential_sboxes, tj, [](LocalState& s, int i, const Value& v) { (i == 0 ? s.a : s.b) = v.bits; },
                [dom](LocalState& s) {
                    s.a = word_xor(dom, Word48(s.a), Word48(s.b)).bits;
                    s.b = 0;
                },
                [wv](const LocalState& s, int out) { return wv(6, sbox_input(Word48(s.a), out + 1).bits); });
        }
        case BlockId::Sbox1:
        case BlockId::Sbox2:
        case BlockId::Sbox3:
        case BlockId::Sbox4:
        case BlockId::Sbox5:
        case BlockId::Sbox6:
        case BlockId::Sbox7:
        case BlockId::Sbox8: {
            const int k = static_cast<int>(id) - static_cast<int>(BlockId::Sbox1) + 1;
            return unary(name, g("S_IN_" + std::to_string(k)), wt(6), g("S_OUT_" + std::to_string(k)),
                         [dom, wv, k](std::uint64_t x) { return wv(4, sbox_lookup(dom, k, Word6(x)).bits); });
        }
        case BlockId::P: {
            std::vector<Input> ins;
            for (int i = 1; i <= 8; ++i) ins.push_back({g("S_OUT_" + std::to_string(i)), wt(4)});
            return std::make_shared<DataflowBlock>(
                name, std::move(ins), std::vector<GateId>{g("F_OUT")}, opt.sequential_sboxes, false, tj,
                [](LocalState& s, int i, const Value& v) { s.a |= sbox_place(Word4(v.bits), i + 1).bits; },
                [dom](LocalState& s) { s.a = permute_p(dom, Word32(s.a)).bits; },
                [wv](const LocalState& s, int) { return wv(32, s.a); });
        }
    }
    throw std::invalid_argument("unknown block id");
}

}  // namespace asyncdes
