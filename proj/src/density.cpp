#include "qsteg/density.hpp"

#include <stdexcept>

namespace qsteg {

namespace {
constexpr double kTol = 1e-12;
using cd = std::complex<double>;
}  // namespace

SingleQubitDensity::SingleQubitDensity(const Eigen::Matrix2cd& m) : m_(m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kTol)
        throw std::invalid_argument("SingleQubitDensity: not Hermitian");
    if (std::abs(m.trace() - cd{1.0, 0.0}) > kTol)
        throw std::invalid_argument("SingleQubitDensity: trace != 1");
    // Eigenvalues of a 2x2 Hermitian matrix: (tr +- sqrt(tr^2 - 4 det)) / 2.
    const double tr = m.trace().real();
    const double det = m.determinant().real();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    if ((tr - disc) / 2.0 < -kTol)
        throw std::invalid_argument("SingleQubitDensity: negative eigenvalue");
}

SingleQubitDensity SingleQubitDensity::maximally_mixed() {
    return SingleQubitDensity(Eigen::Matrix2cd::Identity() * 0.5);
}

const Eigen::Matrix2cd& pauli_matrix(std::uint8_t code) {
    static const Eigen::Matrix2cd mats[4] = {
        (Eigen::Matrix2cd() << cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{1, 0}).finished(),
        (Eigen::Matrix2cd() << cd{0, 0}, cd{1, 0}, cd{1, 0}, cd{0, 0}).finished(),
        (Eigen::Matrix2cd() << cd{0, 0}, cd{0, -1}, cd{0, 1}, cd{0, 0}).finished(),
        (Eigen::Matrix2cd() << cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{-1, 0}).finished(),
    };
    if (code > 3) throw std::invalid_argument("pauli_matrix: bad code");
    return mats[code];
}

SingleQubitDensity twirl_average(const SingleQubitDensity& rho) {
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (std::uint8_t c = 0; c < 4; ++c) {
        const Eigen::Matrix2cd& p = pauli_matrix(c);
        acc += p * rho.matrix() * p;  // each Pauli is Hermitian and self-inverse
    }
    return SingleQubitDensity(acc / 4.0);
}

}  // namespace qsteg
