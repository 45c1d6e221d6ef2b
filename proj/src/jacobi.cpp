#include "pssk/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pssk/errors.hpp"

namespace pssk {

std::vector<double> sym_eigenvalues(const std::vector<double>& matrix, std::size_t n) {
    if (matrix.size() != n * n) {
        throw NotSymmetric("matrix storage does not match size " + std::to_string(n));
    }
    std::vector<double> a = matrix;
    auto at = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    double norm = 0.0;
    for (double v : a) norm += v * v;
    norm = std::sqrt(norm);
    const double sym_tol = 1e-12 * std::max(1.0, norm);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(at(i, j) - at(j, i)) > sym_tol) {
                throw NotSymmetric("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") differs from its transpose");
            }
            // Work on the exactly symmetric average.
            double v = 0.5 * (at(i, j) + at(j, i));
            at(i, j) = at(j, i) = v;
        }
    }

    const double off_tol = 1e-12 * norm;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
        }
        if (std::sqrt(off) <= off_tol) {
            std::vector<double> eig(n);
            for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0) continue;
                // Stable symmetric Schur rotation zeroing a_pq.
                double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    throw NoConvergence("Jacobi eigenvalue iteration did not converge in 100 sweeps");
}

}  // namespace pssk
