#include "qsteg/channel.hpp"

#include "qsteg/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace qsteg {

namespace {
constexpr double kWeightTol = 1e-12;

void check_weights(const std::array<double, 4>& w) {
    double sum = 0.0;
    for (double x : w) {
        if (x < -kWeightTol || x > 1.0 + kWeightTol)
            throw std::invalid_argument("ChannelModel: weight outside [0,1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("ChannelModel: weights must sum to 1");
}
}  // namespace

ChannelModel ChannelModel::depolarizing(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("depolarizing: p outside [0, 1]");
    return ChannelModel(ChannelKind::depolarizing, {1.0 - p, p / 3.0, p / 3.0, p / 3.0});
}

ChannelModel ChannelModel::bsc(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("bsc: p outside [0, 1]");
    return ChannelModel(ChannelKind::bsc, {1.0 - p, p, 0.0, 0.0});
}

ChannelModel ChannelModel::pauli(double wi, double wx, double wy, double wz) {
    std::array<double, 4> w{wi, wx, wy, wz};
    check_weights(w);
    return ChannelModel(ChannelKind::pauli, w);
}

double ChannelModel::p() const {
    switch (kind_) {
        case ChannelKind::depolarizing:
        case ChannelKind::bsc:
            return non_identity_rate();
        default:
            throw std::logic_error("ChannelModel::p: no scalar rate for a general Pauli channel");
    }
}

double ChannelModel::mixing_rate() const {
    if (kind_ != ChannelKind::depolarizing)
        throw std::logic_error("mixing_rate: twirl picture is defined for the depolarizing kind");
    if (p() > 0.75)
        throw std::invalid_argument("mixing_rate: identity weight negative for p > 3/4");
    return 4.0 * p() / 3.0;
}

double error_probability(const ChannelModel& ch, const PauliString& e) {
    double prod = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) prod *= ch.weights()[e.symbol(i)];
    return prod;
}

double log2_error_probability(const ChannelModel& ch, const PauliString& e) {
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double w = ch.weights()[e.symbol(i)];
        if (w == 0.0) return -std::numeric_limits<double>::infinity();
        acc += std::log2(w);
    }
    return acc;
}

PauliString sample_error(const ChannelModel& ch, std::size_t n, std::mt19937_64& rng) {
    std::discrete_distribution<int> dist(ch.weights().begin(), ch.weights().end());
    PauliString out(n);
    for (std::size_t i = 0; i < n; ++i)
        out.set_symbol(i, static_cast<std::uint8_t>(dist(rng)));
    return out;
}

std::vector<std::uint8_t> sample_mixed_mask(const ChannelModel& ch, std::size_t n,
                                            std::mt19937_64& rng) {
    const double rate = ch.mixing_rate();
    std::bernoulli_distribution mix(rate);
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i = 0; i < n; ++i) mask[i] = mix(rng) ? 1 : 0;
    return mask;
}

Decomposition twirl_decompose(const ChannelModel& ch) {
    if (ch.kind() != ChannelKind::depolarizing)
        throw std::invalid_argument("twirl_decompose: depolarizing channel required");
    const double t = ch.mixing_rate();
    return {1.0 - t, t, 0.0, {1.0, 0.0, 0.0, 0.0}};
}

Decomposition general_decompose(const ChannelModel& ch) {
    const auto& w = ch.weights();
    const double m = std::min({w[1], w[2], w[3]});
    const double p_twirl = 4.0 * m;
    const double p_residual = (w[1] - m) + (w[2] - m) + (w[3] - m);
    Decomposition d;
    d.p_twirl = p_twirl;
    d.p_residual = p_residual;
    d.p_identity = 1.0 - p_twirl - p_residual;
    if (p_residual > 0.0)
        d.residual = {0.0, (w[1] - m) / p_residual, (w[2] - m) / p_residual, (w[3] - m) / p_residual};
    else
        d.residual = {1.0, 0.0, 0.0, 0.0};
    return d;
}

double effective_error_rate(double p, double q) {
    if (p < 0.0 || p > 0.75 || q < 0.0 || q > 0.75)
        throw std::invalid_argument("effective_error_rate: rates outside [0, 3/4]");
    return p + q * (1.0 - 4.0 * p / 3.0);
}

double channel_entropy(const ChannelModel& ch) {
    KahanSum s;
    for (double w : ch.weights())
        if (w > 0.0) s.add(-w * std::log2(w));
    return s.value();
}

std::vector<double> weight_distribution(const ChannelModel& ch, std::size_t n) {
    const double t = ch.mixing_rate();
    std::vector<double> out(n + 1);
    for (std::size_t q = 0; q <= n; ++q)
        out[q] = binomial_pmf(static_cast<long>(n), static_cast<long>(q), t);
    return out;
}

}  // namespace qsteg
