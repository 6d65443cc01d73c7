#include "qsteg/security.hpp"

#include <cmath>
#include <stdexcept>

#include "qsteg/stats.hpp"

namespace qsteg {

double diamond_norm_n(double p, double r, long n)
{
    if (n < 0 || n > 100000) throw std::invalid_argument("diamond_norm_n: n out of range");
    if (p < 0.0 || p > 1.0 || r < 0.0 || r > 1.0)
        throw std::invalid_argument("diamond_norm_n: rates must lie in [0, 1]");
    if (n == 0) return 0.0;

    KahanSum total;
    for (long j = 0; j <= n; ++j) {
        // Endpoint rates make lgamma-based logs blow up; handle exactly.
        const double term_r = binomial_pmf(n, j, r);
        const double term_p = binomial_pmf(n, j, p);
        total.add(std::fabs(term_r - term_p));
    }
    return total.value();
}

double p_opt(double diamond)
{
    if (diamond < 0.0 || diamond > 2.0) throw std::invalid_argument("p_opt: distance outside [0, 2]");
    return 0.5 + diamond / 4.0;
}

double max_covert_delta(double p, long n, double eps)
{
    if (n <= 0) throw std::invalid_argument("max_covert_delta: n must be positive");
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("max_covert_delta: p must lie in (0, 1)");
    if (eps < 0.0) throw std::invalid_argument("max_covert_delta: eps must be nonnegative");
    return eps * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double covert_qubit_count(double p, long n, double eps, double delta)
{
    if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("covert_qubit_count: delta must lie in [0, 1)");
    const double dp = max_covert_delta(p, n, eps);
    return (4.0 / 3.0) * dp * static_cast<double>(n) * (1.0 - delta);
}

double p2_closeness_bound(double p, long n, double delta, double eps)
{
    if (n <= 0) throw std::invalid_argument("p2_closeness_bound: n must be positive");
    if (p <= 0.0 || p >= 0.5) throw std::invalid_argument("p2_closeness_bound: p must lie in (0, 1/2)");
    if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("p2_closeness_bound: delta must lie in [0, 1]");
    if (eps < 0.0) throw std::invalid_argument("p2_closeness_bound: eps must be nonnegative");

    const double nd = static_cast<double>(n);
    const double log_prefactor = std::log((1.0 - p) / (1.0 - 2.0 * p));
    const double log_ratio = std::log(p / (1.0 - p));                            // negative
    const double log_shrink = std::log((1.0 - 2.0 * p + 2.0 * p * p) / (1.0 - p));  // negative for p < 1/2
    const double exponent = log_prefactor + nd * p * (1.0 - delta) * log_ratio + nd * log_shrink;
    return eps + std::exp(exponent);
}

SecurityReport security_report(double p, double delta_p, long n, double eps, double delta)
{
    if (delta_p < 0.0) throw std::invalid_argument("security_report: delta_p must be nonnegative");
    SecurityReport rep;
    rep.n = n;
    rep.p = p;
    rep.delta_p = delta_p;
    rep.eps = eps;
    rep.diamond = diamond_norm_n(p, p + delta_p, n);
    rep.p_opt = p_opt(rep.diamond);
    rep.max_delta = max_covert_delta(p, n, eps);
    rep.covert_qubits = covert_qubit_count(p, n, eps, delta);
    return rep;
}

}  // namespace qsteg
