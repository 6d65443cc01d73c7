#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "qsteg/channel.hpp"
#include "qsteg/keysource.hpp"
#include "qsteg/pauli.hpp"

namespace qsteg {

// Hamming(7,4), the concrete nondegenerate code used by end-to-end checks.
// Bit j of a word is position j+1 in the classic numbering, so the syndrome
// of a single flip at bit j is j+1 and all seven syndromes are distinct.
namespace hamming74 {

std::uint8_t syndrome(std::uint8_t word);        // 3-bit value, 0 = clean
std::uint8_t encode(std::uint8_t data);          // 4 data bits -> 7-bit codeword
std::uint8_t correct(std::uint8_t word);         // flips the position the syndrome names
std::uint8_t extract(std::uint8_t word);         // data bits of a corrected word

}  // namespace hamming74

// Weight window induced by bounding per-string probability to
// [2^-n(s+delta), 2^-n(s-delta)], where s is the channel entropy per symbol.
// Strings inside the window carry total_probability of the channel's mass.
struct TypicalErrorSet {
    ChannelModel channel = ChannelModel::bsc(0.0);
    long n = 0;
    double entropy_per_symbol = 0.0;  // s
    double delta = 0.0;               // probability-exponent half-width
    long k_lo = 0;                    // lowest in-window weight
    long k_hi = 0;                    // highest in-window weight
    double total_probability = 0.0;   // exact binomial mass of [k_lo, k_hi]

    double escape_mass() const { return 1.0 - total_probability; }
};

// Throws std::invalid_argument when the window is empty.
TypicalErrorSet build_typical_set(const ChannelModel& ch, long n, double delta);

// One weight class of the partition. Strings of weight k are ranked
// 0..class_size-1 (position subset rank, then symbol-kind subrank); set b
// owns ranks [b*per_set, (b+1)*per_set). Ranks past set_count*per_set are
// deliberately left unassigned so every set keeps mass close to the ideal.
struct WeightClassPlan {
    long k = 0;
    mpz_class class_size;    // C(n,k) * kinds^k
    mpz_class per_set;       // strings per set at this weight
    mpz_class set_count;     // number of sets carved from this class
    mpz_class set_offset;    // global index of this class's first set
};

struct ErrorPartition {
    ChannelModel channel = ChannelModel::bsc(0.0);
    long n = 0;
    long k_lo = 0;
    long k_hi = 0;
    mpz_class set_count;     // total number of sets C
    double log2_ideal_mass = 0.0;  // log2 of the per-set mass target (most probable in-window string)
    std::vector<WeightClassPlan> classes;

    const WeightClassPlan* class_at_weight(long k) const;
    const WeightClassPlan* class_of_set(const mpz_class& set_index) const;
};

// Carves the typical window into near-equiprobable sets. Within weight k a
// set holds round(rho^(k - k_lo)) strings, rho being the probability ratio
// between adjacent weights, so every set's mass tracks the ideal target.
// The per-weight set count is the rounded mass quotient, capped by how many
// full sets the class can actually supply. p must match the channel rate.
ErrorPartition build_partition(const TypicalErrorSet& ts, double p);

// Log-domain size of the ideal partition for a BSC at the given weight-window
// margin delta (window starts at weight np(1-delta)):
//   m_bits = n*(h(p) - p*delta*log2((1-p)/p)),  c = 2^m_bits.
struct PartitionCapacity {
    double m_bits = 0.0;
    double c = 0.0;  // 2^m_bits; +inf when it exceeds double range
};

PartitionCapacity partition_capacity(double p, long n, double delta);

// Worst-case gap between a set's mass and the ideal: evaluated at the lowest
// in-window weight k = ceil(np(1-delta)), where one string is worth the most,
//   ((1-p)/(1-2p)) * p^(2k) * (1-p)^(n-2k).
// Rejects p = 1/2 (the prefactor diverges).
double partition_deviation_bound(double p, long n, double delta);

// Uniform member of set set_index, selected with rejection-sampled key bits.
// Both ends run the identical draw sequence, so the receiver can replay it.
PauliString representative_error(const ErrorPartition& part, const mpz_class& set_index,
                                 KeyStream& key);

// Same draw with the consumed-bit split reported.
struct RepresentativeDraw {
    PauliString error;
    long attempts = 0;
    long bits_per_attempt = 0;
};
RepresentativeDraw representative_error_audited(const ErrorPartition& part,
                                                const mpz_class& set_index, KeyStream& key);

// Where an observed error falls in the partition.
struct SetLookup {
    bool assigned = false;   // false: weight outside window or rank past the carved sets
    mpz_class set_index;
    mpz_class member_rank;   // rank within the set, < per_set
};
SetLookup locate_error(const ErrorPartition& part, const PauliString& e);

// Abstract nondegenerate code: every error owns a distinct syndrome, so the
// label is just a canonical (weight, rank-in-class) relabeling of the error
// itself. No stabilizer structure is materialized.
struct SyndromeLabel {
    long weight = 0;
    mpz_class rank;

    bool operator==(const SyndromeLabel& o) const { return weight == o.weight && rank == o.rank; }
};

struct SyndromeModel {
    long n = 0;
    int kinds = 3;  // non-identity symbols per slot: 3 for Pauli errors, 1 for bit flips

    SyndromeLabel syndrome_of(const PauliString& e) const;
    PauliString error_of(const SyndromeLabel& label) const;
};

}  // namespace qsteg
