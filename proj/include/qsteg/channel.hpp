#pragma once

#include "qsteg/pauli.hpp"

#include <array>
#include <cstddef>
#include <random>
#include <vector>

namespace qsteg {

enum class ChannelKind { depolarizing, bsc, pauli };

// Memoryless single-qubit Pauli channel described by its action weights
// (w_I, w_X, w_Y, w_Z). The depolarizing channel at rate p has weights
// (1-p, p/3, p/3, p/3); the BSC at rate p has (1-p, p, 0, 0).
class ChannelModel {
public:
    static ChannelModel depolarizing(double p);           // p in [0, 3/4]
    static ChannelModel bsc(double p);                    // p in [0, 1/2]
    static ChannelModel pauli(double wi, double wx, double wy, double wz);

    ChannelKind kind() const { return kind_; }

    // Scalar error rate; defined for depolarizing and bsc kinds.
    double p() const;

    const std::array<double, 4>& weights() const { return w_; }
    double non_identity_rate() const { return w_[1] + w_[2] + w_[3]; }

    // Twirl-picture mixing rate: probability that a slot is replaced by the
    // maximally mixed state. Depolarizing only (equals 4p/3).
    double mixing_rate() const;

private:
    ChannelModel(ChannelKind k, std::array<double, 4> w) : kind_(k), w_(w) {}
    ChannelKind kind_;
    std::array<double, 4> w_;
};

// Split into identity + full-twirl + residual Pauli parts. Recomposing
// p_identity + p_twirl * (uniform Pauli) + p_residual * residual recovers
// the original weights.
struct Decomposition {
    double p_identity;
    double p_twirl;
    double p_residual;
    std::array<double, 4> residual;  // normalized Pauli weights, identity part 0
};

// Probability that the channel applies exactly this Pauli string (i.i.d.
// per symbol). Underflows to 0 for long strings; see log2_error_probability.
double error_probability(const ChannelModel& ch, const PauliString& e);
double log2_error_probability(const ChannelModel& ch, const PauliString& e);

// Sample one i.i.d. error string of length n.
PauliString sample_error(const ChannelModel& ch, std::size_t n, std::mt19937_64& rng);

// Twirl-picture sampling: marks each slot mixed with probability mixing_rate().
std::vector<std::uint8_t> sample_mixed_mask(const ChannelModel& ch, std::size_t n,
                                            std::mt19937_64& rng);

// Depolarizing-only exact twirl split: identity weight 1 - 4p/3, twirl 4p/3.
Decomposition twirl_decompose(const ChannelModel& ch);

// Any Pauli channel: extracts the maximal uniform-twirl component
// p_twirl = 4 * min(w_X, w_Y, w_Z); the leftover asymmetric part becomes
// the residual channel.
Decomposition general_decompose(const ChannelModel& ch);

// Error rate seen after emulating rate q on top of a physical rate p
// (depolarizing composition): p + q * (1 - 4p/3).
double effective_error_rate(double p, double q);

// Per-symbol Shannon entropy (bits) of the channel's action distribution.
double channel_entropy(const ChannelModel& ch);

// Law of the mixed-slot count Q over n slots in the twirl picture:
// P[Q] = C(n,Q) (4p/3)^Q (1-4p/3)^(n-Q). Depolarizing only.
std::vector<double> weight_distribution(const ChannelModel& ch, std::size_t n);

}  // namespace qsteg
