#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csst/dataset.hpp"

namespace csst {

// Fixed sheet-shaped neuron grid. Neurons are indexed 0..n-1 in row-major
// order; grid distance is the Euclidean distance of (row, col) coordinates.
struct GridTopology {
    int rows = 0;
    int cols = 0;

    int size() const { return rows * cols; }
    int row_of(int j) const { return j / cols; }
    int col_of(int j) const { return j % cols; }

    double grid_dist2(int a, int b) const {
        const double dr = row_of(a) - row_of(b);
        const double dc = col_of(a) - col_of(b);
        return dr * dr + dc * dc;
    }

    bool operator==(const GridTopology&) const = default;
};

// n prototype vectors on a grid; prototype dimension matches the data.
struct Codebook {
    GridTopology topology;
    Matrix prototypes; // n x t

    std::size_t size() const { return prototypes.rows; } // n
    std::size_t dim() const { return prototypes.cols; }  // t
    std::span<const double> prototype(std::size_t j) const { return prototypes.row(j); }

    bool operator==(const Codebook&) const = default;
};

// One batch-training run: rough_epochs + fine_epochs epochs, with the
// neighborhood radius decaying linearly from sigma_start to sigma_end
// across all of them (grid-distance units).
struct TrainSchedule {
    int rough_epochs = 20;
    int fine_epochs = 30;
    double sigma_start = 7.5;
    double sigma_end = 0.5;
};

// {20, 30, max(rows, cols) / 4, 0.5}
TrainSchedule default_schedule(int rows, int cols);

// Voronoi membership of a dataset under a codebook.
struct Assignment {
    std::vector<int> bmu_of;           // length L, values in [0, n)
    std::vector<std::int64_t> hits_of; // length n, sums to L
};

// Prototypes laid out on the plane of the two leading principal components,
// spanning two standard deviations either side of the data mean along each.
// Deterministic. Throws DegenerateData when the covariance has rank 0.
Codebook init_codebook_linear(const Dataset& dataset, int rows, int cols);

// Batch SOM update: every epoch replaces each prototype by the
// neighborhood-weighted mean of the inputs, Gaussian kernel
// h(j, b) = exp(-d_grid(j,b)^2 / (2 sigma^2)). Prototypes whose total
// weight underflows to zero are left unchanged.
Codebook train_batch(Codebook codebook, const Dataset& dataset,
                     const TrainSchedule& schedule);

// Index of the prototype nearest to x (Euclidean); ties -> lowest index.
int bmu(const Codebook& codebook, std::span<const double> x);

Assignment assign_all(const Codebook& codebook, const Dataset& dataset);

// Mean Euclidean distance from each input to its BMU prototype.
double quantization_error(const Codebook& codebook, const Dataset& dataset);

} // namespace csst
