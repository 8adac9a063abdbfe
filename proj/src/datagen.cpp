#include "csst/datagen.hpp"

#include <cmath>
#include <random>

#include "csst/errors.hpp"

namespace csst {

namespace {

// Seeded source of uniforms and normals with a fixed, engine-defined byte
// layout: mt19937_64 draws mapped to [0,1) via the top 53 bits, normals via
// Box-Muller. Stable across platforms and releases.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

double peaks_z(double x, double y) {
    const double a = 3.0 * (1.0 - x) * (1.0 - x) * std::exp(-x * x - (y + 1.0) * (y + 1.0));
    const double b = -10.0 * (x / 5.0 - x * x * x - std::pow(y, 5)) * std::exp(-x * x - y * y);
    const double c = -(1.0 / 3.0) * std::exp(-(x + 1.0) * (x + 1.0) - y * y);
    return a + b + c;
}

Dataset gen_peaks(int grid_n) {
    if (grid_n < 2) {
        throw InvalidParameter("gen_peaks: grid_n must be >= 2, got " + std::to_string(grid_n));
    }
    const std::size_t n = static_cast<std::size_t>(grid_n);
    const double step = 6.0 / static_cast<double>(grid_n - 1);

    Matrix points(n * n, 3);
    std::size_t row = 0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double y = -3.0 + step * static_cast<double>(iy);
        for (std::size_t ix = 0; ix < n; ++ix, ++row) {
            const double x = -3.0 + step * static_cast<double>(ix);
            points(row, 0) = x;
            points(row, 1) = y;
            points(row, 2) = peaks_z(x, y);
        }
    }
    return make_dataset(std::move(points), {"x", "y", "z"});
}

Dataset gen_gaussian_pair(int n_per_cluster, double separation,
                          double bridge_fraction, std::uint64_t seed) {
    if (n_per_cluster < 1) {
        throw InvalidParameter("gen_gaussian_pair: n_per_cluster must be >= 1");
    }
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw InvalidParameter("gen_gaussian_pair: separation must be positive");
    }
    if (!(bridge_fraction >= 0.0 && bridge_fraction <= 1.0)) {
        throw InvalidParameter("gen_gaussian_pair: bridge_fraction must be in [0, 1]");
    }

    const std::size_t total = 2 * static_cast<std::size_t>(n_per_cluster);
    const std::size_t n_bridge =
        static_cast<std::size_t>(std::llround(bridge_fraction * static_cast<double>(total)));
    const std::size_t n_a = (total - n_bridge) / 2;
    const std::size_t n_b = total - n_bridge - n_a;

    Rng rng(seed);
    Matrix points(total, 3);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n_a; ++i, ++row) {
        points(row, 0) = rng.normal();
        points(row, 1) = rng.normal();
        points(row, 2) = rng.normal();
    }
    for (std::size_t i = 0; i < n_b; ++i, ++row) {
        points(row, 0) = separation + rng.normal();
        points(row, 1) = rng.normal();
        points(row, 2) = rng.normal();
    }
    for (std::size_t i = 0; i < n_bridge; ++i, ++row) {
        points(row, 0) = rng.uniform01() * separation;
        points(row, 1) = (2.0 * rng.uniform01() - 1.0) * kBridgeBandHalfWidth;
        points(row, 2) = (2.0 * rng.uniform01() - 1.0) * kBridgeBandHalfWidth;
    }
    return make_dataset(std::move(points), {"x", "y", "z"});
}

} // namespace csst
