#pragma once

#include <array>
#include <cmath>

namespace bachelier::detail {

// 16-node Gauss-Legendre abscissae/weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kGl16Nodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
inline constexpr std::array<double, 8> kGl16Weights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

/// Composite 16-point Gauss-Legendre quadrature over [a, b].
template <typename F>
double integrate(F&& f, double a, double b, int panels = 96) {
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i)
            acc += kGl16Weights[i] * (f(mid - half * kGl16Nodes[i]) + f(mid + half * kGl16Nodes[i]));
        total += acc * half;
    }
    return total;
}

}  // namespace bachelier::detail
