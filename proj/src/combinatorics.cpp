#include "qsteg/combinatorics.hpp"

#include <cmath>
#include <stdexcept>

namespace qsteg {

mpz_class binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

std::size_t index_bit_width(const mpz_class& count) {
    if (count <= 0) throw std::invalid_argument("index_bit_width: count must be positive");
    if (count == 1) return 0;
    mpz_class top = count - 1;
    return mpz_sizeinbase(top.get_mpz_t(), 2);
}

double log2_mpz(const mpz_class& v) {
    if (v <= 0) throw std::invalid_argument("log2_mpz: value must be positive");
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp2);
}

mpz_class round_to_mpz(const mpq_class& v) {
    if (v < 0) throw std::invalid_argument("round_to_mpz: negative value");
    mpq_class shifted = v + mpq_class(1, 2);
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return out;
}

mpz_class subset_rank(long n, const std::vector<int>& subset) {
    const long m = static_cast<long>(subset.size());
    mpz_class rank = 0;
    int prev = -1;
    for (long i = 0; i < m; ++i) {
        const int el = subset[i];
        if (el <= prev || el >= n)
            throw std::invalid_argument("subset_rank: subset must be strictly increasing within [0, n)");
        // Count subsets that agree on the first i elements and pick an earlier one here.
        for (int c = prev + 1; c < el; ++c)
            rank += binomial(n - 1 - c, m - 1 - i);
        prev = el;
    }
    return rank;
}

std::vector<int> subset_unrank(long n, long m, const mpz_class& rank) {
    if (m < 0 || m > n) throw std::invalid_argument("subset_unrank: need 0 <= m <= n");
    if (rank < 0 || rank >= binomial(n, m))
        throw std::invalid_argument("subset_unrank: rank out of range");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(m));
    mpz_class r = rank;
    int c = 0;
    for (long i = 0; i < m; ++i) {
        // cnt = C(n-1-c, m-1-i): subsets whose element i equals c.
        mpz_class cnt = binomial(n - 1 - c, m - 1 - i);
        while (r >= cnt) {
            r -= cnt;
            // C(a-1, b) = C(a, b) * (a-b) / a with a = n-1-c, b = m-1-i.
            const long a = n - 1 - c;
            cnt *= (a - (m - 1 - i));
            cnt /= a;
            ++c;
        }
        out.push_back(c);
        ++c;
    }
    return out;
}

}  // namespace qsteg
