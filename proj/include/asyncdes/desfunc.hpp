#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace asyncdes {

// Value domain of a single wire. Concrete bits are {0,1}; the abstract domain
// has exactly one value, which collapses every bit vector to a singleton.
enum class BitDomain { Concrete, Abstract };

std::string_view to_string(BitDomain d);
BitDomain parse_domain(std::string_view s);

// Number of values a single bit can take in the domain.
constexpr int bit_cardinality(BitDomain d) { return d == BitDomain::Concrete ? 2 : 1; }

// Bitwise sum of two bits. In the abstract domain this is the constant map.
constexpr int bit_xor(BitDomain d, int a, int b) { return d == BitDomain::Concrete ? (a ^ b) : 0; }

// Fixed-width bit vector. Bit 1 is the most significant bit (FIPS numbering);
// the word is stored right-aligned in `bits`. Abstract-domain words are always 0.
template <int W>
struct Word {
    static_assert(W > 0 && W <= 64);
    static constexpr int width = W;
    static constexpr std::uint64_t mask = W == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << W) - 1);

    std::uint64_t bits = 0;

    constexpr Word() = default;
    constexpr explicit Word(std::uint64_t b) : bits(b & mask) {}

    // 1-based, most-significant-first.
    constexpr int bit(int pos) const { return static_cast<int>((bits >> (W - pos)) & 1u); }
    constexpr void set_bit(int pos, int v) {
        const std::uint64_t m = std::uint64_t{1} << (W - pos);
        bits = v ? (bits | m) : (bits & ~m);
    }

    friend constexpr bool operator==(Word, Word) = default;
};

using Word4 = Word<4>;
using Word6 = Word<6>;
using Word28 = Word<28>;
using Word32 = Word<32>;
using Word48 = Word<48>;
using Word56 = Word<56>;
using Word64 = Word<64>;

template <int W>
constexpr Word<W> word_xor(BitDomain d, Word<W> a, Word<W> b) {
    return d == BitDomain::Concrete ? Word<W>(a.bits ^ b.bits) : Word<W>{};
}

template <int Hi, int Lo>
constexpr Word<Hi + Lo> concat(Word<Hi> hi, Word<Lo> lo) {
    return Word<Hi + Lo>((hi.bits << Lo) | lo.bits);
}

template <int W>
constexpr Word<W / 2> left_half(Word<W> w) { return Word<W / 2>(w.bits >> (W / 2)); }
template <int W>
constexpr Word<W / 2> right_half(Word<W> w) { return Word<W / 2>(w.bits); }

// Sixteen hexadecimal digits, uppercase.
std::string to_hex(Word64 w);
// Accepts exactly sixteen hex digits in either case.
Word64 parse_hex64(std::string_view s);

enum class TableId { IP, FP, E, P, PC1, PC2 };

std::string_view to_string(TableId id);

struct PermutationTable {
    TableId id;
    int in_width;
    int out_width;
    std::span<const std::uint8_t> entries;  // 1-based source indices, out_width of them
};

const PermutationTable& table(TableId id);

// Checks widths, index ranges, and the structural facts of each table
// (IP/FP mutually inverse, E duplicates 16 inputs, ...). Throws std::logic_error.
void validate_tables();

template <int Out, int In>
Word<Out> permute(const PermutationTable& t, Word<In> in) {
    if (t.in_width != In || t.out_width != Out)
        throw std::invalid_argument("permutation table width mismatch for " + std::string(to_string(t.id)));
    Word<Out> out;
    for (int j = 0; j < Out; ++j)
        out.set_bit(j + 1, in.bit(t.entries[static_cast<std::size_t>(j)]));
    return out;
}

Word64 initial_permutation(BitDomain d, Word64 x);
Word64 final_permutation(BitDomain d, Word64 x);
Word48 expand(BitDomain d, Word32 r);
Word32 permute_p(BitDomain d, Word32 s);
Word56 permuted_choice_1(BitDomain d, Word64 key);
Word48 permuted_choice_2(BitDomain d, Word56 cd);

// S-box `index` in 1..8; rows[r][c].
const std::array<std::array<std::uint8_t, 16>, 4>& sbox_table(int index);

// Row is b1b6, column b2b3b4b5.
Word4 sbox_lookup(BitDomain d, int index, Word6 in);

// 6-bit group `index` (1..8) of a 48-bit word, left to right.
Word6 sbox_input(Word48 x, int index);
// Places a 4-bit S-box output at group `index` (1..8) of a 32-bit word.
Word32 sbox_place(Word4 v, int index);

// Number of left rotations applied before computing subkey n (n in 1..16).
const std::array<int, 16>& shift_schedule();

// Rotation of one 28-bit half. `left` selects the rotation direction.
Word28 rotate28(BitDomain d, Word28 x, int count, bool left);
// Rotates both halves of a CD register.
Word56 rotate_cd(BitDomain d, Word56 cd, int count, bool left);

// Shift amounts actually issued per round for the given direction. For
// encryption this is the schedule itself; for decryption the first round
// uses 0 and the remainder replay the schedule backwards as right rotations.
std::array<int, 16> round_shifts(std::span<const int> schedule, bool encrypt);

struct KeySchedule {
    std::array<Word48, 16> subkeys;
    std::array<Word28, 17> c;  // c[0] after PC1, c[n] after round n
    std::array<Word28, 17> d;
};

KeySchedule key_schedule(BitDomain dom, Word64 key, bool encrypt);

// Cipher function f(R, K).
Word32 cipher_f(BitDomain d, Word32 r, Word48 k);

// Straight-line DES. `encrypt` true enciphers, false deciphers.
Word64 des_apply(BitDomain d, Word64 data, Word64 key, bool encrypt);

}  // namespace asyncdes
