#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "asyncdes/desfunc.hpp"
#include "asyncdes/process.hpp"

namespace asyncdes {

// Boxes of the asynchronous DES architecture.
enum class BlockId {
    // controller
    Counter,
    CtrlMuxL,
    CtrlMuxR,
    CtrlMuxK,
    CtrlDmuxK,
    CtrlShift,
    // arbiters
    ChooseL,
    ChooseR,
    ChooseK,
    DupK,
    // key path
    Pc1,
    ShiftC,
    ShiftD,
    Pc2,
    // data path
    Ip,
    Xor32,
    Fp,
    // cipher function
    E,
    Xor48,
    Sbox1,
    Sbox2,
    Sbox3,
    Sbox4,
    Sbox5,
    Sbox6,
    Sbox7,
    Sbox8,
    P,
};

inline constexpr int kNumBlocks = static_cast<int>(BlockId::P) + 1;

std::string_view block_name(BlockId id);
BlockId parse_block(std::string_view name);
const std::array<BlockId, kNumBlocks>& all_blocks();
// True for the six controller processes and the four arbiters.
bool is_control_block(BlockId id);
inline BlockId sbox_block(int index) { return static_cast<BlockId>(static_cast<int>(BlockId::Sbox1) + index - 1); }

struct SemanticsOptions {
    // Internal step between a completed input join and the following output.
    bool tau_on_join = false;
    // The eight S-boxes are fed and drained in index order.
    bool sequential_sboxes = false;

    friend bool operator==(const SemanticsOptions&, const SemanticsOptions&) = default;
};

// Offers exchanged between the controller and the arbiters.
namespace cmd {
// CTRL_L / CTRL_R: which input to read and where to send it.
inline constexpr std::uint32_t kInitial = 0;  // read the post-IP half, feed iteration 1
inline constexpr std::uint32_t kLoop = 1;     // read the loop-back half, feed the next iteration
inline constexpr std::uint32_t kFinal = 2;    // read the loop-back half, send to the output join
inline constexpr std::uint32_t kMuxCount = 3;
// CTRL_K: source of the CD register.
inline constexpr std::uint32_t kFirstKey = 0;
inline constexpr std::uint32_t kIntermediateKey = 1;
inline constexpr std::uint32_t kKeySelCount = 2;
// CTRL_DK: duplicate the shifted register back to CHOOSE_K, or forward only.
inline constexpr std::uint32_t kDuplicate = 0;
inline constexpr std::uint32_t kForwardOnly = 1;
inline constexpr std::uint32_t kDupCount = 2;
// SHIFT: rotation amount 0..2, plus 3 for right rotations.
inline constexpr std::uint32_t kShiftCount = 6;
constexpr std::uint32_t shift_command(int amount, bool left) { return static_cast<std::uint32_t>(amount) + (left ? 0u : 3u); }
constexpr int shift_amount(std::uint32_t c) { return static_cast<int>(c % 3); }
constexpr bool shift_left(std::uint32_t c) { return c < 3; }
}  // namespace cmd

inline constexpr int kControlSteps = 17;  // CS !0 .. CS !16

// Gate names. Only CRYPT, DATA, KEY, OUTPUT, SUBKEY and CS are observable
// interface names; the rest are internal wiring.
namespace gates {
inline constexpr std::string_view kCrypt = "CRYPT";
inline constexpr std::string_view kData = "DATA";
inline constexpr std::string_view kKey = "KEY";
inline constexpr std::string_view kOutput = "OUTPUT";
inline constexpr std::string_view kSubkey = "SUBKEY";
inline constexpr std::string_view kCs = "CS";
}  // namespace gates

// Builds the behavior of one box. `schedule` is the per-round rotation
// schedule used by CTRL_SHIFT (the FIPS schedule unless a test mutates it).
ProcessPtr make_block(BlockId id, BitDomain domain, const SemanticsOptions& options,
                      std::span<const int> schedule = shift_schedule());

// Value helpers shared by blocks, environments and the prototype driver.
Value word_value(BitDomain d, int width, std::uint64_t bits);
ValueType word_type(BitDomain d, int width);

}  // namespace asyncdes
