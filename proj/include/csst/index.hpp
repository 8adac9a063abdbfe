#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csst/dataset.hpp"
#include "csst/som.hpp"

namespace csst {

// A pair of Voronoi regions and the reference vectors spanning the axis
// between their prototypes: w1 = c2 - c1, w2 = c1 - c2.
struct RegionPair {
    int j1 = 0;
    int j2 = 1;
    std::vector<double> w1;
    std::vector<double> w2;
    double axis_len = 0.0; // ||w1|| > 0
};

// Throws DegeneratePair when c1 == c2 (axis length 0),
// DimensionMismatch on unequal dimensions.
RegionPair make_region_pair(std::span<const double> c1, std::span<const double> c2,
                            int j1 = 0, int j2 = 1);

// Standard cosine similarity in [-1, 1]. Returns 0 for a zero v, so such
// points fall to the strict d_cos > 0 filter. Throws DegeneratePair when
// ||w|| = 0.
double cosine_similarity(std::span<const double> v, std::span<const double> w);

// Normalized coordinate of x along the pair axis, measured from the c1 end:
// with v = x - c_jq, q=1 gives (v.w1)/axis_len^2 and q=2 gives
// 1 - (v.w2)/axis_len^2. Unclamped; binning clamps into [0, 1].
double project_t(std::span<const double> x, const RegionPair& pair,
                 std::span<const double> c1, std::span<const double> c2, int q);

// Frequency distribution of the projected vectors over k equal sub-regions.
struct GapHistogram {
    int k = 0;
    std::vector<std::int64_t> counts; // N_u, length k
    std::int64_t n_d = 0;             // number of vectors with d_cos > 0

    bool operator==(const GapHistogram&) const = default;
};

// An input vector together with the side q (1 or 2) it is assigned to.
struct SidedPoint {
    std::span<const double> x;
    int q = 1;
};

// Filters the points by d_cos > 0 against their own reference vector, bins
// the survivors into k equal slices of the inter-prototype axis and counts.
// Sub-region u covers [u/k, (u+1)/k) of the axis for q=1 points and the
// mirrored (u/k, (u+1)/k] for q=2 points, so swapping the pair reverses the
// histogram exactly; projections beyond the far prototype land in the far
// end bin. Throws InvalidParameter when k < 2.
GapHistogram build_histogram(std::span<const SidedPoint> points,
                             std::span<const double> c1,
                             std::span<const double> c2, int k);

// Mean absolute pairwise difference over twice the mean, computed over the
// full list including zeros; 0 when the mean is 0. Throws InvalidParameter
// on negative entries.
double gini(std::span<const double> a);

// CSST index value with its diagnostics.
struct CsstResult {
    double value = 0.0;          // CSSTI, in [0, 4)
    std::vector<double> r;       // r_u = |N_u - N_D/k|
    std::vector<bool> z;         // z_u = (N_u >= N_D/k)
    double gini_plus = 0.0;      // Gini of z_u * r_u
    double gini_minus = 0.0;     // Gini of (1 - z_u) * r_u
    GapHistogram histogram;
};

// CSSTI = (1/N_D) [ sum z_u r_u (1 + G_r+)  +  sum (1 - z_u) r_u (1 + G_r-) ].
// Throws EmptySupport when h.n_d = 0.
CsstResult csst_from_histogram(const GapHistogram& h);

// Full pipeline for one region pair: gathers the inputs assigned to j1 or
// j2, builds the gap histogram and evaluates the index. Throws LowSupport
// when the post-filter count N_D is below min_support, EmptySupport when it
// is 0, DegeneratePair on coinciding prototypes.
CsstResult analyze_pair(const Dataset& dataset, const Assignment& assignment,
                        const Codebook& codebook, int j1, int j2, int k,
                        std::int64_t min_support);

// The m neurons with the most hits (ties -> lowest index), in ascending
// index order. Throws InvalidParameter if m exceeds the number of neurons
// with nonzero hits.
std::vector<int> select_regions(const Assignment& assignment, int m);

// Square matrix over selected regions; entries may be absent.
struct LabeledMatrix {
    std::vector<int> labels;                  // region (neuron) indices
    std::vector<std::optional<double>> values; // row-major size() x size()

    std::size_t size() const { return labels.size(); }
    std::optional<double>& at(std::size_t a, std::size_t b) { return values[a * size() + b]; }
    const std::optional<double>& at(std::size_t a, std::size_t b) const { return values[a * size() + b]; }
};

// Symmetric CSSTI matrix with zero diagonal; pairs that fail with
// LowSupport/EmptySupport/DegeneratePair are recorded as absent.
LabeledMatrix csst_matrix(const Dataset& dataset, const Assignment& assignment,
                          const Codebook& codebook, const std::vector<int>& regions,
                          int k, std::int64_t min_support);

// Pairwise Euclidean distances of the region prototypes.
// Throws InvalidParameter on duplicate or out-of-range indices.
LabeledMatrix euclidean_matrix(const Codebook& codebook, const std::vector<int>& regions);

} // namespace csst
