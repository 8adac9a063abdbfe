#pragma once

#include <cstdint>

#include "csst/dataset.hpp"

namespace csst {

// The classic two-variable benchmark surface: three hills and two hollows on
// an otherwise flat plane.
double peaks_z(double x, double y);

// Samples peaks_z on a uniform grid_n x grid_n grid over [-3, 3]^2, inclusive
// ends. Returns grid_n^2 rows of (x, y, z); pure function of grid_n.
// Throws InvalidParameter if grid_n < 2.
Dataset gen_peaks(int grid_n);

// Two isotropic unit-variance Gaussian clusters in 3D centered at the origin
// and at (separation, 0, 0). A fraction bridge_fraction of the total point
// count is redistributed uniformly along the segment between the centers,
// with perpendicular jitter confined to a 0.1-sigma band (|y|, |z| <= 0.05).
//
// Point order: cluster-A points, cluster-B points, bridge points. Randomness
// comes from mt19937_64 seeded with `seed`; normals via Box-Muller over
// 53-bit uniforms, so output is byte-stable for a given seed.
Dataset gen_gaussian_pair(int n_per_cluster, double separation,
                          double bridge_fraction, std::uint64_t seed);

// Half-width of the bridge's perpendicular jitter band.
inline constexpr double kBridgeBandHalfWidth = 0.05;

} // namespace csst
