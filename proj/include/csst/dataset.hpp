#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace csst {

// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }

    bool operator==(const Matrix&) const = default;
};

// L input vectors of dimension t, with optional per-dimension labels.
struct Dataset {
    Matrix points;
    std::vector<std::string> dim_names; // empty, or exactly dim() labels

    std::size_t size() const { return points.rows; } // L
    std::size_t dim() const { return points.cols; }  // t
    std::span<const double> row(std::size_t i) const { return points.row(i); }

    bool operator==(const Dataset&) const = default;
};

// Validates L >= 1, t >= 1, all entries finite, label count 0 or t.
// Throws InvalidParameter on violation.
Dataset make_dataset(Matrix points, std::vector<std::string> dim_names = {});

} // namespace csst
