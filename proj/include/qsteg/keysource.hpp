#pragma once

#include "qsteg/combinatorics.hpp"
#include "qsteg/pauli.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsteg {

// Thrown when a draw would run past the end of the key material. Key bits
// are never reused and never wrap.
class KeyExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite stream of shared secret bits with a single forward cursor.
class KeyStream {
public:
    // Test/demo source: expands a 64-bit seed into n_bits pseudorandom bits.
    // Not secret material; callers surface that caveat to users.
    static KeyStream from_seed(std::uint64_t seed, std::size_t n_bits);
    // Hex-encoded key material (whitespace tolerated), e.g. from a key file.
    static KeyStream from_hex(std::string_view hex);
    static KeyStream from_hex_file(const std::string& path);
    // Literal bits, e.g. "0110...". Handy in tests.
    static KeyStream from_bit_string(std::string_view bits);

    std::size_t size_bits() const { return nbits_; }
    std::size_t cursor() const { return cursor_; }
    std::size_t remaining() const { return nbits_ - cursor_; }

    int draw_bit();
    // n <= 64 bits, first-drawn bit in the most significant position.
    std::uint64_t draw_bits_u64(unsigned n);
    mpz_class draw_bits_mpz(std::size_t n);
    std::vector<std::uint8_t> draw_bits(std::size_t n);

private:
    std::vector<std::uint8_t> bytes_;  // bit i lives at byte i/8, MSB first
    std::size_t nbits_ = 0;
    std::size_t cursor_ = 0;
};

// Secret-bit cost split across the three places key material goes.
struct KeyBudget {
    std::size_t subset_bits = 0;          // slot-selection index
    std::size_t twirl_bits = 0;           // one-time pad, 2 per symbol
    std::size_t representative_bits = 0;  // in-set member selection
    std::size_t total() const { return subset_bits + twirl_bits + representative_bits; }
};

// Cost of hiding m payload slots in an n-slot block:
// subset_bits = ceil(log2 C(n,m)) computed exactly, twirl_bits = 2m.
KeyBudget key_consumption_p1(long n, long m);

// Uniform m-subset of {0..n-1} selected by rejection sampling of a
// ceil(log2 C(n,m))-bit index followed by lexicographic unranking.
// The draw is exactly uniform; expected overhead is below 2 attempts.
struct SubsetDraw {
    std::vector<int> slots;
    unsigned attempts = 1;
    std::size_t bits_per_attempt = 0;
};
SubsetDraw select_subset_audited(KeyStream& key, long n, long m);
std::vector<int> select_subset(KeyStream& key, long n, long m);

// One-time pad of m symbols, 2 key bits each: 00->I, 01->X, 10->Y, 11->Z.
PauliString twirl_pad(KeyStream& key, std::size_t m);

// Asymptotic key consumption rate: with beta = 4 delta_p / (3 - 4p),
// K = h2(beta) + 2 beta bits per slot.
double kcr_asymptotic(double p, double delta_p);
// Finite-n rate key_consumption_p1(n, round(beta n)).total / n.
double kcr_exact(double p, double delta_p, long n);

// Budget of the syndrome-coded protocol at block length n, per-symbol
// channel entropy s, and typicality margin delta: twirl ceil(2n(s - delta))
// bits plus roughly n*delta bits to name representatives.
KeyBudget key_consumption_p2(long n, double s, double delta);

// Stateless per-index seed derivation (splitmix64 core). Work split across
// threads by index stays deterministic because the result depends only on
// (base, index), never on partition order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Entanglement-based variant: n hidden qubits teleport through n ebits and
// 2n stego-encoded classical bits; no twirl pad is consumed.
struct EbitAccounting {
    long ebits = 0;
    long classical_bits = 0;
    bool consumes_pad = false;
};
EbitAccounting ebit_teleport_accounting(long n);

}  // namespace qsteg
