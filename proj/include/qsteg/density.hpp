#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace qsteg {

// 2x2 single-qubit density matrix with validated invariants
// (Hermitian, unit trace, positive semidefinite, all within 1e-12).
class SingleQubitDensity {
public:
    explicit SingleQubitDensity(const Eigen::Matrix2cd& m);

    const Eigen::Matrix2cd& matrix() const { return m_; }

    static SingleQubitDensity maximally_mixed();

private:
    Eigen::Matrix2cd m_;
};

// The four Pauli matrices indexed by symbol code (0=I, 1=X, 2=Y, 3=Z).
const Eigen::Matrix2cd& pauli_matrix(std::uint8_t code);

// Uniform average of the four Pauli conjugations. Always the maximally
// mixed state for a valid input.
SingleQubitDensity twirl_average(const SingleQubitDensity& rho);

}  // namespace qsteg
