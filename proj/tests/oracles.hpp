// oracles.hpp — test-only reference computations, kept independent of the
// library's construction paths: Gauss-Legendre quadrature of normalized
// Legendre integrands for matrix elements, and small closed forms.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline Quadrature gauss_legendre(int n) {
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // Tricomi initial guess
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = x;
        q.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

// Normalized Legendre polynomial sqrt((2j+1)/2) P_j(x): the theta-space
// wave function of |j, m=0> reduced to x = cos(theta).
inline double normalized_legendre(int j, double x) {
    double p0 = 1.0, p1 = x;
    if (j == 0) return std::sqrt(0.5);
    for (int k = 2; k <= j; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return std::sqrt((2.0 * j + 1.0) / 2.0) * p1;
}

// <j| cos^power |k> by 200-point Gauss-Legendre quadrature.
inline double cos_power_element(int j, int k, int power, int points = 200) {
    static Quadrature q;  // cached; tests are single-threaded at setup
    if (static_cast<int>(q.nodes.size()) != points) q = gauss_legendre(points);
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = q.nodes[i];
        acc += q.weights[i] * normalized_legendre(j, x) * std::pow(x, power) *
               normalized_legendre(k, x);
    }
    return acc;
}

}  // namespace oracle
