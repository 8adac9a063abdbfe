#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "csst/datagen.hpp"
#include "csst/errors.hpp"
#include "csst/som.hpp"
#include "csst/vecmath.hpp"

using namespace csst;

namespace {

Dataset random_dataset(std::size_t n, std::size_t t, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(n, t);
    for (double& v : m.data) v = dist(gen);
    return make_dataset(std::move(m));
}

Codebook codebook_from(std::vector<std::vector<double>> protos, int rows, int cols) {
    Codebook cb;
    cb.topology = GridTopology{rows, cols};
    cb.prototypes = Matrix(protos.size(), protos[0].size());
    for (std::size_t j = 0; j < protos.size(); ++j) {
        for (std::size_t s = 0; s < protos[j].size(); ++s) cb.prototypes(j, s) = protos[j][s];
    }
    return cb;
}

} // namespace

TEST_CASE("linear init on the peaks dataset") {
    const Dataset d = gen_peaks(49);
    const Codebook cb = init_codebook_linear(d, 30, 30);
    CHECK(cb.size() == 900);
    CHECK(cb.dim() == 3);
    for (double v : cb.prototypes.data) CHECK(std::isfinite(v));
}

TEST_CASE("linear init keeps a line dataset on its line") {
    // Points on the 3D line p(t) = (1,2,3) + t*(2,-1,0.5).
    Matrix m(40, 3);
    for (int i = 0; i < 40; ++i) {
        const double t = -2.0 + i * 0.1;
        m(i, 0) = 1.0 + 2.0 * t;
        m(i, 1) = 2.0 - 1.0 * t;
        m(i, 2) = 3.0 + 0.5 * t;
    }
    const Dataset d = make_dataset(std::move(m));
    const Codebook cb = init_codebook_linear(d, 3, 3);

    const std::vector<double> dir = {2.0, -1.0, 0.5};
    const std::vector<double> origin = {1.0, 2.0, 3.0};
    const double dir2 = norm2(dir);
    for (std::size_t j = 0; j < cb.size(); ++j) {
        const auto p = cb.prototype(j);
        std::vector<double> rel = {p[0] - origin[0], p[1] - origin[1], p[2] - origin[2]};
        const double along = dot(rel, dir) / dir2;
        double off2 = 0.0;
        for (int s = 0; s < 3; ++s) {
            const double r = rel[s] - along * dir[s];
            off2 += r * r;
        }
        CHECK(off2 < 1e-18);
    }
}

TEST_CASE("linear init rejects rank-0 data") {
    Matrix m(10, 3);
    for (int i = 0; i < 10; ++i) {
        m(i, 0) = 0.1;
        m(i, 1) = -2.5;
        m(i, 2) = 7.0;
    }
    CHECK_THROWS_AS(init_codebook_linear(make_dataset(std::move(m)), 3, 3), DegenerateData);
}

TEST_CASE("linear init parameter validation") {
    const Dataset d = random_dataset(10, 3, 1);
    CHECK_THROWS_AS(init_codebook_linear(d, 1, 3), InvalidParameter);
    Matrix single(1, 3);
    single(0, 0) = 1.0;
    CHECK_THROWS_AS(init_codebook_linear(make_dataset(std::move(single)), 3, 3),
                    InvalidParameter);
}

TEST_CASE("bmu picks the nearest prototype, lowest index on ties") {
    const Codebook cb = codebook_from({{1, 0, 0}, {0, 2, 0}}, 1, 2);
    const std::vector<double> origin = {0.0, 0.0, 0.0};
    CHECK(bmu(cb, origin) == 0);

    const std::vector<double> exact = {0.0, 2.0, 0.0};
    CHECK(bmu(cb, exact) == 1);

    // Six prototypes; 2 and 5 equidistant from the query.
    const Codebook six = codebook_from(
        {{9, 9}, {9, -9}, {1, 0}, {-9, 9}, {-9, -9}, {-1, 0}}, 2, 3);
    const std::vector<double> query = {0.0, 0.0};
    CHECK(bmu(six, query) == 2);
}

TEST_CASE("bmu is permutation-equivariant") {
    const Dataset protos = random_dataset(12, 3, 2);
    Codebook cb;
    cb.topology = GridTopology{3, 4};
    cb.prototypes = protos.points;

    Codebook reversed = cb;
    for (std::size_t j = 0; j < cb.size(); ++j) {
        for (std::size_t s = 0; s < cb.dim(); ++s) {
            reversed.prototypes(j, s) = cb.prototypes(cb.size() - 1 - j, s);
        }
    }
    const Dataset queries = random_dataset(50, 3, 3);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const int a = bmu(cb, queries.row(i));
        const int b = bmu(reversed, queries.row(i));
        CHECK(a == static_cast<int>(cb.size()) - 1 - b);
    }
}

TEST_CASE("bmu dimension mismatch") {
    const Codebook cb = codebook_from({{1, 0, 0}, {0, 2, 0}}, 1, 2);
    const std::vector<double> bad = {0.0, 0.0};
    CHECK_THROWS_AS(bmu(cb, bad), DimensionMismatch);
}

TEST_CASE("assign_all on the prototypes themselves is the identity") {
    const Dataset protos = random_dataset(9, 3, 4);
    Codebook cb;
    cb.topology = GridTopology{3, 3};
    cb.prototypes = protos.points;

    const Assignment a = assign_all(cb, protos);
    for (std::size_t i = 0; i < protos.size(); ++i) {
        CHECK(a.bmu_of[i] == static_cast<int>(i));
        CHECK(a.hits_of[i] == 1);
    }
}

TEST_CASE("assignment hits always sum to L") {
    const Dataset d = random_dataset(137, 3, 5);
    const Codebook cb = init_codebook_linear(d, 4, 5);
    const Assignment a = assign_all(cb, d);
    std::int64_t total = 0;
    for (std::int64_t h : a.hits_of) total += h;
    CHECK(total == 137);
}

TEST_CASE("quantization error hand cases") {
    const Codebook cb = codebook_from({{0, 0}, {10, 0}, {0, 10}, {10, 10}}, 2, 2);

    Matrix exact(4, 2);
    exact(0, 0) = 0;
    exact(0, 1) = 0;
    exact(1, 0) = 10;
    exact(1, 1) = 0;
    exact(2, 0) = 0;
    exact(2, 1) = 10;
    exact(3, 0) = 10;
    exact(3, 1) = 10;
    CHECK(quantization_error(cb, make_dataset(std::move(exact))) == 0.0);

    Matrix one(1, 2);
    one(0, 0) = 3.0;
    one(0, 1) = 0.0;
    CHECK(quantization_error(cb, make_dataset(std::move(one))) == doctest::Approx(3.0));

    Matrix two(2, 2);
    two(0, 0) = 1.0;
    two(0, 1) = 0.0;
    two(1, 0) = 0.0;
    two(1, 1) = 3.0;
    CHECK(quantization_error(cb, make_dataset(std::move(two))) == doctest::Approx(2.0));
}

TEST_CASE("one epoch with a huge neighborhood pulls everything to a single point") {
    Matrix m(1, 3);
    m(0, 0) = 4.0;
    m(0, 1) = -1.0;
    m(0, 2) = 0.5;
    const Dataset d{std::move(m), {}};

    Codebook cb = codebook_from({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}}, 2, 2);
    const TrainSchedule s{1, 0, 1e6, 1e6};
    const Codebook trained = train_batch(cb, d, s);
    for (std::size_t j = 0; j < trained.size(); ++j) {
        CHECK(trained.prototype(j)[0] == doctest::Approx(4.0));
        CHECK(trained.prototype(j)[1] == doctest::Approx(-1.0));
        CHECK(trained.prototype(j)[2] == doctest::Approx(0.5));
    }
}

TEST_CASE("one epoch with sigma near zero is a k-means batch step") {
    const Dataset d = random_dataset(60, 3, 6);
    const Codebook cb = init_codebook_linear(d, 3, 3);
    const Assignment before = assign_all(cb, d);

    const TrainSchedule s{1, 0, 1e-9, 1e-9};
    const Codebook trained = train_batch(cb, d, s);

    for (std::size_t j = 0; j < cb.size(); ++j) {
        if (before.hits_of[j] == 0) {
            // Dead unit: prototype unchanged.
            for (std::size_t c = 0; c < cb.dim(); ++c) {
                CHECK(trained.prototypes(j, c) == cb.prototypes(j, c));
            }
            continue;
        }
        std::vector<double> mean(cb.dim(), 0.0);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (before.bmu_of[i] != static_cast<int>(j)) continue;
            for (std::size_t c = 0; c < cb.dim(); ++c) mean[c] += d.row(i)[c];
        }
        for (std::size_t c = 0; c < cb.dim(); ++c) {
            mean[c] /= static_cast<double>(before.hits_of[j]);
            CHECK(trained.prototypes(j, c) == doctest::Approx(mean[c]).epsilon(1e-14));
        }
    }
}

TEST_CASE("training reduces quantization error on peaks") {
    const Dataset d = gen_peaks(49);
    const Codebook init = init_codebook_linear(d, 30, 30);
    const Codebook trained = train_batch(init, d, default_schedule(30, 30));

    const double before = quantization_error(init, d);
    const double after = quantization_error(trained, d);
    CHECK(after < before);
    // Regression pin for the fixed deterministic init and default schedule.
    CHECK(after == doctest::Approx(0.123947569).epsilon(1e-2));
}

TEST_CASE("train_batch validates inputs") {
    const Dataset d = random_dataset(10, 3, 7);
    Codebook cb = codebook_from({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, 2, 2);
    CHECK_THROWS_AS(train_batch(cb, d, TrainSchedule{}), DimensionMismatch);

    const Codebook ok = init_codebook_linear(d, 2, 2);
    CHECK_THROWS_AS(train_batch(ok, d, TrainSchedule{0, 0, 2.0, 0.5}), InvalidParameter);
    CHECK_THROWS_AS(train_batch(ok, d, TrainSchedule{1, 1, 0.5, 2.0}), InvalidParameter);
    CHECK_THROWS_AS(train_batch(ok, d, TrainSchedule{1, 1, 1.0, 0.0}), InvalidParameter);
}

TEST_CASE("default schedule follows the grid size") {
    const TrainSchedule s = default_schedule(30, 30);
    CHECK(s.rough_epochs == 20);
    CHECK(s.fine_epochs == 30);
    CHECK(s.sigma_start == doctest::Approx(7.5));
    CHECK(s.sigma_end == doctest::Approx(0.5));
}
