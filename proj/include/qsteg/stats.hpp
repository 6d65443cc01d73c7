#pragma once

#include <cstddef>
#include <vector>

namespace qsteg {

// Binary entropy in bits; h2(0) = h2(1) = 0.
double entropy_bits(double p);

// log(C(n,k) p^k (1-p)^(n-k)), natural log, via lgamma. p in (0,1).
double log_binomial_pmf(long n, long k, double p);

// Binomial pmf; exact 0/1 handling at p = 0 or 1.
double binomial_pmf(long n, long k, double p);

// P[X <= k] for X ~ Binomial(n, p), summed in the smaller tail.
double binomial_cdf(long n, long k, double p);

// Compensated (Kahan) accumulator for long sums of small terms.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

// Upper-tail p-value of the chi-square distribution with dof degrees.
double chi_square_pvalue(double statistic, double dof);

// Pearson chi-square test of observed counts against expected probabilities.
// Bins with expected count below min_expected are pooled into their neighbor.
struct ChiSquareResult {
    double statistic;
    double dof;
    double pvalue;
};
ChiSquareResult chi_square_test(const std::vector<long>& observed,
                                const std::vector<double>& expected_probs,
                                double min_expected = 5.0);

// Total variation distance between two distributions on the same support.
double tv_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qsteg
