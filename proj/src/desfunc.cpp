#include "asyncdes/desfunc.hpp"

#include <algorithm>
#include <cctype>

namespace asyncdes {

namespace {

// Tables as printed in FIPS 46-3.
constexpr std::uint8_t kIp[64] = {
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4,
    62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8,
    57, 49, 41, 33, 25, 17, 9,  1, 59, 51, 43, 35, 27, 19, 11, 3,
    61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7,
};

constexpr std::uint8_t kFp[64] = {
    40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31,
    38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29,
    36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27,
    34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9,  49, 17, 57, 25,
};

constexpr std::uint8_t kE[48] = {
    32, 1,  2,  3,  4,  5,  4,  5,  6,  7,  8,  9,  8,  9,  10, 11,
    12, 13, 12, 13, 14, 15, 16, 17, 16, 17, 18, 19, 20, 21, 20, 21,
    22, 23, 24, 25, 24, 25, 26, 27, 28, 29, 28, 29, 30, 31, 32, 1,
};

constexpr std::uint8_t kP[32] = {
    16, 7, 20, 21, 29, 12, 28, 17, 1,  15, 23, 26, 5,  18, 31, 10,
    2,  8, 24, 14, 32, 27, 3,  9,  19, 13, 30, 6,  22, 11, 4,  25,
};

constexpr std::uint8_t kPc1[56] = {
    57, 49, 41, 33, 25, 17, 9,  1,  58, 50, 42, 34, 26, 18,
    10, 2,  59, 51, 43, 35, 27, 19, 11, 3,  60, 52, 44, 36,
    63, 55, 47, 39, 31, 23, 15, 7,  62, 54, 46, 38, 30, 22,
    14, 6,  61, 53, 45, 37, 29, 21, 13, 5,  28, 20, 12, 4,
};

constexpr std::uint8_t kPc2[48] = {
    14, 17, 11, 24, 1,  5,  3,  28, 15, 6,  21, 10,
    23, 19, 12, 4,  26, 8,  16, 7,  27, 20, 13, 2,
    41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48,
    44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32,
};

using SBox = std::array<std::array<std::uint8_t, 16>, 4>;

constexpr std::array<SBox, 8> kSBoxes = {{
    {{{14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7},
      {0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8},
      {4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0},
      {15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13}}},
    {{{15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10},
      {3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5},
      {0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15},
      {13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9}}},
    {{{10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8},
      {13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1},
      {13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7},
      {1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12}}},
    {{{7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15},
      {13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9},
      {10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4},
      {3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14}}},
    {{{2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9},
      {14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6},
      {4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14},
      {11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3}}},
    {{{12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11},
      {10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8},
      {9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6},
      {4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13}}},
    {{{4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1},
      {13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6},
      {1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2},
      {6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12}}},
    {{{13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7},
      {1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2},
      {7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8},
      {2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11}}},
}};

constexpr std::array<int, 16> kShifts = {1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1};

const PermutationTable kTables[] = {
    {TableId::IP, 64, 64, kIp},   {TableId::FP, 64, 64, kFp},    {TableId::E, 32, 48, kE},
    {TableId::P, 32, 32, kP},     {TableId::PC1, 64, 56, kPc1},  {TableId::PC2, 56, 48, kPc2},
};

void require(bool cond, const std::string& what) {
    if (!cond) throw std::logic_error("DES table check failed: " + what);
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string_view to_string(BitDomain d) { return d == BitDomain::Concrete ? "concrete" : "abstract"; }

BitDomain parse_domain(std::string_view s) {
    if (s == "concrete") return BitDomain::Concrete;
    if (s == "abstract") return BitDomain::Abstract;
    throw std::invalid_argument("unknown domain '" + std::string(s) + "' (expected abstract|concrete)");
}

std::string to_hex(Word64 w) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = digits[(w.bits >> (60 - 4 * i)) & 0xF];
    return out;
}

Word64 parse_hex64(std::string_view s) {
    if (s.size() != 16) throw std::invalid_argument("expected sixteen hexadecimal digits, got '" + std::string(s) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        const int d = hex_digit(c);
        if (d < 0) throw std::invalid_argument("invalid hexadecimal digit in '" + std::string(s) + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return Word64(v);
}

std::string_view to_string(TableId id) {
    switch (id) {
        case TableId::IP: return "IP";
        case TableId::FP: return "FP";
        case TableId::E: return "E";
        case TableId::P: return "P";
        case TableId::PC1: return "PC1";
        case TableId::PC2: return "PC2";
    }
    return "?";
}

const PermutationTable& table(TableId id) { return kTables[static_cast<int>(id)]; }

void validate_tables() {
    for (const auto& t : kTables) {
        const std::string name(to_string(t.id));
        require(static_cast<int>(t.entries.size()) == t.out_width, name + " entry count");
        for (auto e : t.entries) require(e >= 1 && e <= t.in_width, name + " index range");
    }
    // IP and FP are mutually inverse permutations.
    for (int j = 1; j <= 64; ++j) {
        require(kFp[kIp[j - 1] - 1] == j, "FP is not the inverse of IP");
        require(kIp[kFp[j - 1] - 1] == j, "IP is not the inverse of FP");
    }
    auto count_dups = [](std::span<const std::uint8_t> e, int in_width) {
        std::array<int, 65> seen{};
        for (auto v : e) ++seen[v];
        int dups = 0, missing = 0;
        for (int i = 1; i <= in_width; ++i) {
            if (seen[static_cast<std::size_t>(i)] > 1) dups += seen[static_cast<std::size_t>(i)] - 1;
            if (seen[static_cast<std::size_t>(i)] == 0) ++missing;
        }
        return std::pair{dups, missing};
    };
    require(count_dups(kE, 32) == std::pair{16, 0}, "E must duplicate exactly 16 inputs");
    require(count_dups(kP, 32) == std::pair{0, 0}, "P must be a permutation");
    require(count_dups(kIp, 64) == std::pair{0, 0}, "IP must be a permutation");
    // PC1 drops the eight parity bits.
    auto [pc1_dups, pc1_missing] = count_dups(kPc1, 64);
    require(pc1_dups == 0 && pc1_missing == 8, "PC1 must select 56 distinct bits");
    for (auto v : kPc1) require(v % 8 != 0, "PC1 selects a parity bit");
    auto [pc2_dups, pc2_missing] = count_dups(kPc2, 56);
    require(pc2_dups == 0 && pc2_missing == 8, "PC2 must select 48 distinct bits");

    for (const auto& box : kSBoxes)
        for (const auto& row : box) {
            std::array<bool, 16> seen{};
            for (auto v : row) {
                require(v < 16, "S-box entry out of range");
                seen[v] = true;
            }
            require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), "S-box row is not a permutation");
        }
    int total = 0;
    for (int s : kShifts) {
        require(s == 1 || s == 2, "shift count");
        total += s;
    }
    require(total == 28, "shift schedule must total 28");
}

Word64 initial_permutation(BitDomain d, Word64 x) {
    return d == BitDomain::Concrete ? permute<64>(table(TableId::IP), x) : Word64{};
}
Word64 final_permutation(BitDomain d, Word64 x) {
    return d == BitDomain::Concrete ? permute<64>(table(TableId::FP), x) : Word64{};
}
Word48 expand(BitDomain d, Word32 r) {
    return d == BitDomain::Concrete ? permute<48>(table(TableId::E), r) : Word48{};
}
Word32 permute_p(BitDomain d, Word32 s) {
    return d == BitDomain::Concrete ? permute<32>(table(TableId::P), s) : Word32{};
}
Word56 permuted_choice_1(BitDomain d, Word64 key) {
    return d == BitDomain::Concrete ? permute<56>(table(TableId::PC1), key) : Word56{};
}
Word48 permuted_choice_2(BitDomain d, Word56 cd) {
    return d == BitDomain::Concrete ? permute<48>(table(TableId::PC2), cd) : Word48{};
}

const std::array<std::array<std::uint8_t, 16>, 4>& sbox_table(int index) {
    if (index < 1 || index > 8) throw std::out_of_range("S-box index must be in 1..8");
    return kSBoxes[static_cast<std::size_t>(index - 1)];
}

Word4 sbox_lookup(BitDomain d, int index, Word6 in) {
    const auto& box = sbox_table(index);
    if (d == BitDomain::Abstract) return Word4{};
    const int row = 2 * in.bit(1) + in.bit(6);
    const int col = 8 * in.bit(2) + 4 * in.bit(3) + 2 * in.bit(4) + in.bit(5);
    return Word4(box[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
}

Word6 sbox_input(Word48 x, int index) { return Word6(x.bits >> (48 - 6 * index)); }

Word32 sbox_place(Word4 v, int index) { return Word32(v.bits << (32 - 4 * index)); }

const std::array<int, 16>& shift_schedule() { return kShifts; }

Word28 rotate28(BitDomain d, Word28 x, int count, bool left) {
    if (d == BitDomain::Abstract) return Word28{};
    count %= 28;
    if (count == 0) return x;
    const std::uint64_t b = x.bits;
    return left ? Word28((b << count) | (b >> (28 - count))) : Word28((b >> count) | (b << (28 - count)));
}

Word56 rotate_cd(BitDomain d, Word56 cd, int count, bool left) {
    return concat(rotate28(d, left_half(cd), count, left), rotate28(d, right_half(cd), count, left));
}

std::array<int, 16> round_shifts(std::span<const int> schedule, bool encrypt) {
    std::array<int, 16> out{};
    const std::size_t n = std::min<std::size_t>(schedule.size(), 16);
    if (encrypt) {
        for (std::size_t i = 0; i < n; ++i) out[i] = schedule[i];
    } else if (n > 0) {
        // K16 uses C16D16 = C0D0; then undo the schedule from the back.
        out[0] = 0;
        for (std::size_t i = 1; i < n; ++i) out[i] = schedule[n - i];
    }
    return out;
}

KeySchedule key_schedule(BitDomain dom, Word64 key, bool encrypt) {
    KeySchedule ks;
    const Word56 cd0 = permuted_choice_1(dom, key);
    ks.c[0] = left_half(cd0);
    ks.d[0] = right_half(cd0);
    const auto shifts = round_shifts(shift_schedule(), encrypt);
    for (int n = 1; n <= 16; ++n) {
        const auto i = static_cast<std::size_t>(n);
        ks.c[i] = rotate28(dom, ks.c[i - 1], shifts[i - 1], encrypt);
        ks.d[i] = rotate28(dom, ks.d[i - 1], shifts[i - 1], encrypt);
        ks.subkeys[i - 1] = permuted_choice_2(dom, concat(ks.c[i], ks.d[i]));
    }
    return ks;
}

Word32 cipher_f(BitDomain d, Word32 r, Word48 k) {
    const Word48 x = word_xor(d, expand(d, r), k);
    Word32 s;
    for (int i = 1; i <= 8; ++i) s.bits |= sbox_place(sbox_lookup(d, i, sbox_input(x, i)), i).bits;
    return permute_p(d, s);
}

Word64 des_apply(BitDomain d, Word64 data, Word64 key, bool encrypt) {
    const KeySchedule ks = key_schedule(d, key, encrypt);
    const Word64 ip = initial_permutation(d, data);
    Word32 l = left_half(ip);
    Word32 r = right_half(ip);
    for (const Word48& k : ks.subkeys) {
        const Word32 next = word_xor(d, l, cipher_f(d, r, k));
        l = r;
        r = next;
    }
    return final_permutation(d, concat(r, l));
}

}  // namespace asyncdes
