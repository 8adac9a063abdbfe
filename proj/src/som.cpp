#include "csst/som.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "csst/errors.hpp"
#include "csst/vecmath.hpp"

namespace csst {

namespace {

void require_same_dim(const Codebook& codebook, const Dataset& dataset) {
    if (codebook.dim() != dataset.dim()) {
        throw DimensionMismatch("codebook dimension " + std::to_string(codebook.dim()) +
                                " does not match dataset dimension " +
                                std::to_string(dataset.dim()));
    }
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Eigenvectors come
// back as columns of `vectors`, unsorted. Deterministic sweep order.
void jacobi_eigen(Matrix a, std::vector<double>& values, Matrix& vectors) {
    const std::size_t t = a.rows;
    vectors = Matrix(t, t);
    for (std::size_t i = 0; i < t; ++i) vectors(i, i) = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < t; ++p) {
            for (std::size_t q = p + 1; q < t; ++q) off += std::fabs(a(p, q));
        }
        if (off == 0.0) break;

        for (std::size_t p = 0; p < t; ++p) {
            for (std::size_t q = p + 1; q < t; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double sign = theta >= 0.0 ? 1.0 : -1.0;
                const double tan_ = sign / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double cos_ = 1.0 / std::sqrt(tan_ * tan_ + 1.0);
                const double sin_ = tan_ * cos_;
                for (std::size_t i = 0; i < t; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = cos_ * aip - sin_ * aiq;
                    a(i, q) = sin_ * aip + cos_ * aiq;
                }
                for (std::size_t i = 0; i < t; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = cos_ * api - sin_ * aqi;
                    a(q, i) = sin_ * api + cos_ * aqi;
                }
                for (std::size_t i = 0; i < t; ++i) {
                    const double vip = vectors(i, p);
                    const double viq = vectors(i, q);
                    vectors(i, p) = cos_ * vip - sin_ * viq;
                    vectors(i, q) = sin_ * vip + cos_ * viq;
                }
            }
        }
    }
    values.resize(t);
    for (std::size_t i = 0; i < t; ++i) values[i] = a(i, i);
}

// Largest-magnitude component positive, so eigenvector signs are stable.
void fix_sign(std::vector<double>& v) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
    }
    if (v[imax] < 0.0) {
        for (double& x : v) x = -x;
    }
}

} // namespace

TrainSchedule default_schedule(int rows, int cols) {
    TrainSchedule s;
    s.rough_epochs = 20;
    s.fine_epochs = 30;
    s.sigma_start = static_cast<double>(std::max(rows, cols)) / 4.0;
    s.sigma_end = 0.5;
    return s;
}

Codebook init_codebook_linear(const Dataset& dataset, int rows, int cols) {
    if (dataset.size() < 2) {
        throw InvalidParameter("init_codebook_linear: need at least 2 input vectors");
    }
    if (rows < 1 || cols < 1 || rows * cols < 4) {
        throw InvalidParameter("init_codebook_linear: grid must have at least 4 neurons");
    }
    const std::size_t L = dataset.size();
    const std::size_t t = dataset.dim();

    std::vector<double> mean(t, 0.0);
    for (std::size_t i = 0; i < L; ++i) {
        const auto x = dataset.row(i);
        for (std::size_t s = 0; s < t; ++s) mean[s] += x[s];
    }
    for (double& m : mean) m /= static_cast<double>(L);

    Matrix cov(t, t);
    for (std::size_t i = 0; i < L; ++i) {
        const auto x = dataset.row(i);
        for (std::size_t p = 0; p < t; ++p) {
            const double dp = x[p] - mean[p];
            for (std::size_t q = p; q < t; ++q) {
                cov(p, q) += dp * (x[q] - mean[q]);
            }
        }
    }
    for (std::size_t p = 0; p < t; ++p) {
        for (std::size_t q = p; q < t; ++q) {
            cov(p, q) /= static_cast<double>(L - 1);
            cov(q, p) = cov(p, q);
        }
    }

    std::vector<double> eigvals;
    Matrix eigvecs;
    jacobi_eigen(cov, eigvals, eigvecs);

    // Two leading components by eigenvalue, ties by column order.
    std::vector<std::size_t> order(t);
    for (std::size_t i = 0; i < t; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eigvals[a] > eigvals[b]; });

    double mean_sq = 0.0;
    for (std::size_t i = 0; i < L; ++i) mean_sq += norm2(dataset.row(i));
    mean_sq /= static_cast<double>(L);
    if (eigvals[order[0]] <= 1e-24 * std::max(1.0, mean_sq)) {
        throw DegenerateData("init_codebook_linear: data covariance has rank 0");
    }

    std::vector<double> e1(t), e2(t, 0.0);
    for (std::size_t s = 0; s < t; ++s) e1[s] = eigvecs(s, order[0]);
    fix_sign(e1);
    const double sd1 = std::sqrt(eigvals[order[0]]);
    double sd2 = 0.0;
    if (t >= 2) {
        for (std::size_t s = 0; s < t; ++s) e2[s] = eigvecs(s, order[1]);
        fix_sign(e2);
        // Eigenvalues at rounding level of the leading one are rank
        // deficiency, not spread.
        const double lambda2 = eigvals[order[1]];
        if (lambda2 > eigvals[order[0]] * 1e-12) sd2 = std::sqrt(lambda2);
    }

    // The longer grid axis follows the leading component.
    const bool rows_lead = rows >= cols;

    Codebook cb;
    cb.topology = GridTopology{rows, cols};
    cb.prototypes = Matrix(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), t);
    for (int r = 0; r < rows; ++r) {
        const double fr = rows > 1 ? 2.0 * r / static_cast<double>(rows - 1) - 1.0 : 0.0;
        for (int c = 0; c < cols; ++c) {
            const double fc = cols > 1 ? 2.0 * c / static_cast<double>(cols - 1) - 1.0 : 0.0;
            const double a1 = (rows_lead ? fr : fc) * 2.0 * sd1;
            const double a2 = (rows_lead ? fc : fr) * 2.0 * sd2;
            const std::size_t j = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                                  static_cast<std::size_t>(c);
            for (std::size_t s = 0; s < t; ++s) {
                cb.prototypes(j, s) = mean[s] + a1 * e1[s] + a2 * e2[s];
            }
        }
    }
    return cb;
}

int bmu(const Codebook& codebook, std::span<const double> x) {
    if (x.size() != codebook.dim()) {
        throw DimensionMismatch("bmu: input dimension does not match codebook");
    }
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    const std::size_t n = codebook.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double d2 = dist2(codebook.prototype(j), x);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(j);
        }
    }
    return best;
}

Assignment assign_all(const Codebook& codebook, const Dataset& dataset) {
    require_same_dim(codebook, dataset);
    Assignment a;
    a.bmu_of.resize(dataset.size());
    a.hits_of.assign(codebook.size(), 0);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const int b = bmu(codebook, dataset.row(i));
        a.bmu_of[i] = b;
        ++a.hits_of[static_cast<std::size_t>(b)];
    }
    return a;
}

double quantization_error(const Codebook& codebook, const Dataset& dataset) {
    require_same_dim(codebook, dataset);
    double total = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto x = dataset.row(i);
        total += dist(codebook.prototype(static_cast<std::size_t>(bmu(codebook, x))), x);
    }
    return total / static_cast<double>(dataset.size());
}

Codebook train_batch(Codebook codebook, const Dataset& dataset, const TrainSchedule& schedule) {
    require_same_dim(codebook, dataset);
    if (schedule.rough_epochs < 0 || schedule.fine_epochs < 0 ||
        schedule.rough_epochs + schedule.fine_epochs < 1) {
        throw InvalidParameter("train_batch: need at least one epoch");
    }
    if (!(schedule.sigma_start >= schedule.sigma_end) || !(schedule.sigma_end > 0.0)) {
        throw InvalidParameter("train_batch: require sigma_start >= sigma_end > 0");
    }

    const int epochs = schedule.rough_epochs + schedule.fine_epochs;
    const std::size_t n = codebook.size();
    const std::size_t t = codebook.dim();
    const std::size_t L = dataset.size();

    Matrix cell_sum(n, t);
    std::vector<std::int64_t> cell_hits(n);
    Matrix next(n, t);

    for (int epoch = 0; epoch < epochs; ++epoch) {
        const double frac = epochs > 1 ? static_cast<double>(epoch) / (epochs - 1) : 0.0;
        const double sigma = schedule.sigma_start + (schedule.sigma_end - schedule.sigma_start) * frac;
        const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);

        std::fill(cell_sum.data.begin(), cell_sum.data.end(), 0.0);
        std::fill(cell_hits.begin(), cell_hits.end(), 0);
        for (std::size_t i = 0; i < L; ++i) {
            const auto x = dataset.row(i);
            const auto b = static_cast<std::size_t>(bmu(codebook, x));
            for (std::size_t s = 0; s < t; ++s) cell_sum(b, s) += x[s];
            ++cell_hits[b];
        }

        for (std::size_t j = 0; j < n; ++j) {
            double den = 0.0;
            auto num = next.row(j);
            std::fill(num.begin(), num.end(), 0.0);
            for (std::size_t b = 0; b < n; ++b) {
                if (cell_hits[b] == 0) continue;
                const double h = std::exp(-codebook.topology.grid_dist2(static_cast<int>(j),
                                                                        static_cast<int>(b)) *
                                          inv_two_sigma2);
                if (h == 0.0) continue;
                den += h * static_cast<double>(cell_hits[b]);
                const auto sums = cell_sum.row(b);
                for (std::size_t s = 0; s < t; ++s) num[s] += h * sums[s];
            }
            if (den > 0.0) {
                for (std::size_t s = 0; s < t; ++s) num[s] /= den;
            } else {
                const auto old = codebook.prototypes.row(j);
                std::copy(old.begin(), old.end(), num.begin());
            }
        }
        std::swap(codebook.prototypes, next);
    }
    return codebook;
}

} // namespace csst
