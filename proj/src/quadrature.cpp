#include "chernweil/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace chernweil {

namespace {

// Legendre P_n and P_n' on [-1,1] by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

QuadratureRule build_rule(int n) {
    QuadratureRule rule;
    rule.nodes.resize(size_t(n));
    rule.weights.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, dp] = legendre(n, x);
        (void)p;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]
        rule.nodes[size_t(n - 1 - i)] = 0.5 * (x + 1.0);
        rule.weights[size_t(n - 1 - i)] = 0.5 * w;
    }
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre_01(int n) {
    if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
    static std::map<int, QuadratureRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

int nodes_for_degree(int poly_degree) {
    if (poly_degree < 0) poly_degree = 0;
    return poly_degree / 2 + 1;
}

}  // namespace chernweil
