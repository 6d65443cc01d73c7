#pragma once

#include <cstddef>

namespace qsteg {

// Distinguishability of n uses of a memoryless channel at rates p vs r,
// as the L1 distance between the two weight laws:
//   sum_j C(n,j) | r^j (1-r)^(n-j) - p^j (1-p)^(n-j) |.
// Evaluated in the log domain with compensated summation; n up to 1e5.
double diamond_norm_n(double p, double r, long n);

// Best one-shot distinguishing probability given that distance: 1/2 + D/4.
double p_opt(double diamond);

// Largest rate excess delta_p that keeps the distinguishing advantage at
// detection level eps over n slots: eps * sqrt(p (1-p) / n).
double max_covert_delta(double p, long n, double eps);

// Hidden-qubit count at that excess: (4/3) * max_covert_delta * n * (1 - delta).
// Grows like O(eps * sqrt(n)).
double covert_qubit_count(double p, long n, double eps, double delta);

// Envelope on the distance between the syndrome-coded emulation and the
// true channel: eps (typical-set escape mass) plus the in-window deviation
//   ((1-p)/(1-2p)) * (p/(1-p))^(n p (1-delta)) * ((1-2p+2p^2)/(1-p))^n,
// evaluated in the log domain. delta is the weight-window half-width.
double p2_closeness_bound(double p, long n, double delta, double eps);

struct SecurityReport {
    long n = 0;
    double p = 0.0;
    double delta_p = 0.0;
    double diamond = 0.0;
    double p_opt = 0.0;
    double max_delta = 0.0;   // at the report's eps
    double covert_qubits = 0.0;
    double eps = 0.0;
};

SecurityReport security_report(double p, double delta_p, long n, double eps, double delta);

}  // namespace qsteg
