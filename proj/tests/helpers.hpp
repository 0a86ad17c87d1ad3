#pragma once

// Independent oracles for the test suite. These deliberately avoid the
// library's own kernels: the exponential oracle is a plain Taylor sum (valid
// for small norms only) and the propagation oracle is classic RK4, so
// agreement with library results is evidence rather than tautology.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Plain truncated Taylor sum for e^A. Accurate to ~1e-13 for ||A|| <= 1;
// callers must keep norms small, there is no scaling step on purpose.
inline ComplexMatrix exp_taylor(const ComplexMatrix& a, int max_terms = 60) {
    ComplexMatrix result = ComplexMatrix::Identity(a.rows(), a.cols());
    ComplexMatrix term = result;
    for (int k = 1; k <= max_terms; ++k) {
        term = (term * a / static_cast<double>(k)).eval();
        result += term;
        if (term.norm() < 1e-18)
            break;
    }
    return result;
}

// Classic fixed-step RK4 on d(psi)/dt = -i H(t) psi, for vector or matrix
// psi. Independent of any exponential-integrator machinery.
inline ComplexMatrix rk4_schrodinger(const std::function<ComplexMatrix(double)>& h_of_t,
                                     ComplexMatrix psi, double t0, double t1,
                                     int steps) {
    const double dt = (t1 - t0) / steps;
    const Complex mi(0.0, -1.0);
    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * dt;
        const ComplexMatrix k1 = mi * (h_of_t(t) * psi);
        const ComplexMatrix k2 = mi * (h_of_t(t + 0.5 * dt) * (psi + 0.5 * dt * k1));
        const ComplexMatrix k3 = mi * (h_of_t(t + 0.5 * dt) * (psi + 0.5 * dt * k2));
        const ComplexMatrix k4 = mi * (h_of_t(t + dt) * (psi + dt * k3));
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

// Central finite difference for matrix-valued functions of time.
inline ComplexMatrix fd_derivative(const std::function<ComplexMatrix(double)>& f,
                                   double t, double h = 1e-5) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

// Least-squares slope of log(y) against log(x), used to estimate convergence
// orders without relying on the library's own fitting code.
inline double fit_loglog_slope(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
    const int n = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double diff_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).norm();
}

} // namespace oracle
