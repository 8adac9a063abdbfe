#include "csst/umatrix.hpp"

#include <algorithm>
#include <vector>

#include "csst/errors.hpp"
#include "csst/vecmath.hpp"

namespace csst {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

UMatrix compute_umatrix(const Codebook& codebook) {
    const int rows = codebook.topology.rows;
    const int cols = codebook.topology.cols;
    if (rows < 2 || cols < 2) {
        throw GridTooSmall("compute_umatrix: grid must be at least 2x2");
    }
    const auto proto = [&](int r, int c) {
        return codebook.prototype(static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                                  static_cast<std::size_t>(c));
    };

    UMatrix u(static_cast<std::size_t>(2 * rows - 1), static_cast<std::size_t>(2 * cols - 1));

    for (int a = 0; a < rows; ++a) {
        for (int b = 0; b + 1 < cols; ++b) {
            u(2 * a, 2 * b + 1) = dist(proto(a, b), proto(a, b + 1));
        }
    }
    for (int a = 0; a + 1 < rows; ++a) {
        for (int b = 0; b < cols; ++b) {
            u(2 * a + 1, 2 * b) = dist(proto(a, b), proto(a + 1, b));
        }
    }
    for (int a = 0; a + 1 < rows; ++a) {
        for (int b = 0; b + 1 < cols; ++b) {
            u(2 * a + 1, 2 * b + 1) = 0.5 * (dist(proto(a, b), proto(a + 1, b + 1)) +
                                             dist(proto(a, b + 1), proto(a + 1, b)));
        }
    }
    std::vector<double> adjacent;
    for (int a = 0; a < rows; ++a) {
        for (int b = 0; b < cols; ++b) {
            adjacent.clear();
            if (b > 0) adjacent.push_back(u(2 * a, 2 * b - 1));
            if (b + 1 < cols) adjacent.push_back(u(2 * a, 2 * b + 1));
            if (a > 0) adjacent.push_back(u(2 * a - 1, 2 * b));
            if (a + 1 < rows) adjacent.push_back(u(2 * a + 1, 2 * b));
            u(2 * a, 2 * b) = median(adjacent);
        }
    }
    return u;
}

} // namespace csst
