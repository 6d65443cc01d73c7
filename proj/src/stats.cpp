#include "qsteg/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <stdexcept>

namespace qsteg {

double entropy_bits(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("entropy_bits: p outside [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double log_binomial_pmf(long n, long k, double p) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("log_binomial_pmf: p outside (0,1)");
    const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return lc + k * std::log(p) + (n - k) * std::log1p(-p);
}

double binomial_pmf(long n, long k, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(log_binomial_pmf(n, k, p));
}

double binomial_cdf(long n, long k, double p) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    KahanSum lower;
    for (long i = 0; i <= k; ++i) lower.add(binomial_pmf(n, i, p));
    if (lower.value() < 0.5) return std::min(1.0, lower.value());
    KahanSum upper;
    for (long i = n; i > k; --i) upper.add(binomial_pmf(n, i, p));
    return std::max(0.0, 1.0 - upper.value());
}

double chi_square_pvalue(double statistic, double dof) {
    if (statistic <= 0.0) return 1.0;
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult chi_square_test(const std::vector<long>& observed,
                                const std::vector<double>& expected_probs,
                                double min_expected) {
    if (observed.size() != expected_probs.size() || observed.empty())
        throw std::invalid_argument("chi_square_test: size mismatch");
    long total = 0;
    for (long c : observed) total += c;
    if (total <= 0) throw std::invalid_argument("chi_square_test: no observations");

    // Pool sparse bins left to right so every pooled bin has a workable
    // expected count; the trailing remainder merges into the last bin.
    std::vector<double> exp_pooled;
    std::vector<double> obs_pooled;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        e_acc += expected_probs[i] * total;
        o_acc += static_cast<double>(observed[i]);
        if (e_acc >= min_expected) {
            exp_pooled.push_back(e_acc);
            obs_pooled.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_pooled.empty()) {
            exp_pooled.push_back(e_acc);
            obs_pooled.push_back(o_acc);
        } else {
            exp_pooled.back() += e_acc;
            obs_pooled.back() += o_acc;
        }
    }

    KahanSum stat;
    for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
        if (exp_pooled[i] <= 0.0) continue;
        const double d = obs_pooled[i] - exp_pooled[i];
        stat.add(d * d / exp_pooled[i]);
    }
    const double dof = std::max<double>(1.0, static_cast<double>(exp_pooled.size()) - 1.0);
    return {stat.value(), dof, chi_square_pvalue(stat.value(), dof)};
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("tv_distance: size mismatch");
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(std::abs(a[i] - b[i]));
    return 0.5 * s.value();
}

}  // namespace qsteg
