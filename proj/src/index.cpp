#include "csst/index.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csst/errors.hpp"
#include "csst/vecmath.hpp"

namespace csst {

RegionPair make_region_pair(std::span<const double> c1, std::span<const double> c2,
                            int j1, int j2) {
    if (c1.size() != c2.size()) {
        throw DimensionMismatch("region pair: prototype dimensions differ");
    }
    RegionPair pair;
    pair.j1 = j1;
    pair.j2 = j2;
    pair.w1.resize(c1.size());
    pair.w2.resize(c1.size());
    for (std::size_t s = 0; s < c1.size(); ++s) {
        pair.w1[s] = c2[s] - c1[s];
        pair.w2[s] = c1[s] - c2[s];
    }
    pair.axis_len = norm(pair.w1);
    if (pair.axis_len == 0.0) {
        throw DegeneratePair("region pair: prototypes coincide");
    }
    return pair;
}

double cosine_similarity(std::span<const double> v, std::span<const double> w) {
    if (v.size() != w.size()) {
        throw DimensionMismatch("cosine similarity: dimensions differ");
    }
    const double nw = norm(w);
    if (nw == 0.0) {
        throw DegeneratePair("cosine similarity: reference vector has zero norm");
    }
    const double nv = norm(v);
    if (nv == 0.0) return 0.0;
    return dot(v, w) / (nv * nw);
}

double project_t(std::span<const double> x, const RegionPair& pair,
                 std::span<const double> c1, std::span<const double> c2, int q) {
    if (q != 1 && q != 2) {
        throw InvalidParameter("project_t: q must be 1 or 2");
    }
    const auto& cq = (q == 1) ? c1 : c2;
    const auto& wq = (q == 1) ? pair.w1 : pair.w2;
    if (x.size() != cq.size()) {
        throw DimensionMismatch("project_t: dimensions differ");
    }
    double d = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) d += (x[s] - cq[s]) * wq[s];
    const double s = d / (pair.axis_len * pair.axis_len);
    return (q == 1) ? s : 1.0 - s;
}

GapHistogram build_histogram(std::span<const SidedPoint> points,
                             std::span<const double> c1,
                             std::span<const double> c2, int k) {
    if (k < 2) {
        throw InvalidParameter("build_histogram: k must be >= 2, got " + std::to_string(k));
    }
    const RegionPair pair = make_region_pair(c1, c2);
    const double axis_len2 = pair.axis_len * pair.axis_len;

    GapHistogram h;
    h.k = k;
    h.counts.assign(static_cast<std::size_t>(k), 0);

    std::vector<double> v(c1.size());
    for (const SidedPoint& p : points) {
        if (p.q != 1 && p.q != 2) {
            throw InvalidParameter("build_histogram: q must be 1 or 2");
        }
        const auto& own = (p.q == 1) ? c1 : c2;
        const auto& wq = (p.q == 1) ? pair.w1 : pair.w2;
        if (p.x.size() != own.size()) {
            throw DimensionMismatch("build_histogram: point dimension differs");
        }
        for (std::size_t s = 0; s < v.size(); ++s) v[s] = p.x[s] - own[s];
        if (!(cosine_similarity(v, wq) > 0.0)) continue;

        // Offset along the axis measured from the point's own prototype; the
        // same expression on either side, so swapping the pair reverses bins
        // bit-exactly. d_cos > 0 guarantees s > 0.
        const double s = dot(v, wq) / axis_len2;
        const double scaled = std::floor(s * static_cast<double>(k));
        // Beyond the far prototype -> far end bin. Compare before casting:
        // s is unbounded for outliers.
        const std::int64_t u =
            scaled < static_cast<double>(k) ? static_cast<std::int64_t>(scaled) : k - 1;
        const std::int64_t bin = (p.q == 1) ? u : (k - 1 - u);
        ++h.counts[static_cast<std::size_t>(bin)];
        ++h.n_d;
    }
    return h;
}

double gini(std::span<const double> a) {
    const std::size_t k = a.size();
    if (k == 0) return 0.0;
    double sum = 0.0;
    for (double v : a) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw InvalidParameter("gini: entries must be non-negative and finite");
        }
        sum += v;
    }
    if (sum == 0.0) return 0.0;

    // Sorted form of the mean-absolute-difference definition:
    // G = sum_i (2i - k - 1) a_(i) / (k * sum), i = 1..k ascending.
    std::vector<double> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += (2.0 * static_cast<double>(i + 1) - static_cast<double>(k) - 1.0) * sorted[i];
    }
    return acc / (static_cast<double>(k) * sum);
}

CsstResult csst_from_histogram(const GapHistogram& h) {
    if (h.k < 2 || h.counts.size() != static_cast<std::size_t>(h.k)) {
        throw InvalidParameter("csst_from_histogram: malformed histogram");
    }
    std::int64_t total = 0;
    for (std::int64_t c : h.counts) {
        if (c < 0) throw InvalidParameter("csst_from_histogram: negative count");
        total += c;
    }
    if (total != h.n_d) {
        throw InvalidParameter("csst_from_histogram: counts do not sum to n_d");
    }
    if (h.n_d == 0) {
        throw EmptySupport("csst_from_histogram: no projected vectors");
    }

    const std::size_t k = static_cast<std::size_t>(h.k);
    const double uniform_share = static_cast<double>(h.n_d) / static_cast<double>(h.k);

    CsstResult res;
    res.histogram = h;
    res.r.resize(k);
    res.z.resize(k);
    std::vector<double> above(k, 0.0); // z_u * r_u
    std::vector<double> below(k, 0.0); // (1 - z_u) * r_u
    for (std::size_t u = 0; u < k; ++u) {
        const double n_u = static_cast<double>(h.counts[u]);
        res.r[u] = std::fabs(n_u - uniform_share);
        res.z[u] = n_u >= uniform_share;
        (res.z[u] ? above : below)[u] = res.r[u];
    }
    res.gini_plus = gini(above);
    res.gini_minus = gini(below);

    double above_sum = 0.0;
    double below_sum = 0.0;
    for (std::size_t u = 0; u < k; ++u) {
        above_sum += above[u];
        below_sum += below[u];
    }
    res.value = (above_sum * (1.0 + res.gini_plus) + below_sum * (1.0 + res.gini_minus)) /
                static_cast<double>(h.n_d);
    return res;
}

CsstResult analyze_pair(const Dataset& dataset, const Assignment& assignment,
                        const Codebook& codebook, int j1, int j2, int k,
                        std::int64_t min_support) {
    const int n = codebook.topology.size();
    if (j1 < 0 || j1 >= n || j2 < 0 || j2 >= n) {
        throw InvalidParameter("analyze_pair: neuron index out of range");
    }
    if (j1 == j2) {
        throw InvalidParameter("analyze_pair: j1 and j2 must differ");
    }
    if (min_support < 1) {
        throw InvalidParameter("analyze_pair: min_support must be >= 1");
    }
    if (assignment.bmu_of.size() != dataset.size()) {
        throw DimensionMismatch("analyze_pair: assignment does not match dataset");
    }
    if (codebook.dim() != dataset.dim()) {
        throw DimensionMismatch("analyze_pair: codebook does not match dataset");
    }

    std::vector<SidedPoint> points;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (assignment.bmu_of[i] == j1) {
            points.push_back({dataset.row(i), 1});
        } else if (assignment.bmu_of[i] == j2) {
            points.push_back({dataset.row(i), 2});
        }
    }

    const GapHistogram h =
        build_histogram(points, codebook.prototype(static_cast<std::size_t>(j1)),
                        codebook.prototype(static_cast<std::size_t>(j2)), k);
    if (h.n_d == 0) {
        throw EmptySupport("analyze_pair: no vectors with positive cosine similarity");
    }
    if (h.n_d < min_support) {
        throw LowSupport(h.n_d, min_support);
    }
    return csst_from_histogram(h);
}

std::vector<int> select_regions(const Assignment& assignment, int m) {
    std::vector<int> nonzero;
    for (std::size_t j = 0; j < assignment.hits_of.size(); ++j) {
        if (assignment.hits_of[j] > 0) nonzero.push_back(static_cast<int>(j));
    }
    if (m < 1 || static_cast<std::size_t>(m) > nonzero.size()) {
        throw InvalidParameter("select_regions: m must be in [1, number of nonzero-hit neurons (" +
                               std::to_string(nonzero.size()) + ")]");
    }
    std::sort(nonzero.begin(), nonzero.end(), [&](int a, int b) {
        if (assignment.hits_of[a] != assignment.hits_of[b]) {
            return assignment.hits_of[a] > assignment.hits_of[b];
        }
        return a < b;
    });
    nonzero.resize(static_cast<std::size_t>(m));
    std::sort(nonzero.begin(), nonzero.end());
    return nonzero;
}

LabeledMatrix csst_matrix(const Dataset& dataset, const Assignment& assignment,
                          const Codebook& codebook, const std::vector<int>& regions,
                          int k, std::int64_t min_support) {
    for (std::size_t a = 0; a < regions.size(); ++a) {
        for (std::size_t b = a + 1; b < regions.size(); ++b) {
            if (regions[a] == regions[b]) {
                throw InvalidParameter("csst_matrix: duplicate region index");
            }
        }
    }
    LabeledMatrix m;
    m.labels = regions;
    m.values.assign(regions.size() * regions.size(), std::nullopt);
    for (std::size_t a = 0; a < regions.size(); ++a) {
        m.at(a, a) = 0.0;
        for (std::size_t b = a + 1; b < regions.size(); ++b) {
            try {
                const CsstResult res =
                    analyze_pair(dataset, assignment, codebook, regions[a], regions[b], k, min_support);
                m.at(a, b) = res.value;
                m.at(b, a) = res.value;
            } catch (const LowSupport&) {
            } catch (const EmptySupport&) {
            } catch (const DegeneratePair&) {
            }
        }
    }
    return m;
}

LabeledMatrix euclidean_matrix(const Codebook& codebook, const std::vector<int>& regions) {
    const int n = codebook.topology.size();
    for (std::size_t a = 0; a < regions.size(); ++a) {
        if (regions[a] < 0 || regions[a] >= n) {
            throw InvalidParameter("euclidean_matrix: region index out of range");
        }
        for (std::size_t b = a + 1; b < regions.size(); ++b) {
            if (regions[a] == regions[b]) {
                throw InvalidParameter("euclidean_matrix: duplicate region index");
            }
        }
    }
    LabeledMatrix m;
    m.labels = regions;
    m.values.assign(regions.size() * regions.size(), std::nullopt);
    for (std::size_t a = 0; a < regions.size(); ++a) {
        m.at(a, a) = 0.0;
        for (std::size_t b = a + 1; b < regions.size(); ++b) {
            const double d = dist(codebook.prototype(static_cast<std::size_t>(regions[a])),
                                  codebook.prototype(static_cast<std::size_t>(regions[b])));
            m.at(a, b) = d;
            m.at(b, a) = d;
        }
    }
    return m;
}

} // namespace csst
