#include <doctest.h>

#include <cmath>

#include "dkde/mise.hpp"
#include "dkde/rng.hpp"
#include "support/oracles.hpp"

using namespace dkde;

namespace {

// The stationary single-batch reference: summary (0,1,10), target (0,1), sigma 1.
MiseComponents stationary_components() {
    const std::vector<BatchSummary> s{BatchSummary(0.0, 1.0, 10)};
    return build_components(s, GaussianParams(0.0, 1.0), 1.0);
}

MiseComponents random_components(SplitRng& rng, std::size_t window) {
    const auto inst = testing::random_instance(rng, window);
    return build_components(inst.summaries, inst.target, inst.bandwidth);
}

}  // namespace

TEST_SUITE("mise") {

TEST_CASE("BatchSummary validation") {
    CHECK_THROWS_AS(BatchSummary(0.0, -0.1, 3), std::domain_error);
    CHECK_THROWS_AS(BatchSummary(0.0, 1.0, 0), std::domain_error);
    CHECK_THROWS_AS(BatchSummary(std::numeric_limits<double>::infinity(), 1.0, 3),
                    std::domain_error);
    CHECK(BatchSummary(0.0, 0.0, 1).gamma == 0.0);
}

TEST_CASE("stationary single-batch entries") {
    const auto c = stationary_components();
    REQUIRE(c.size() == 1);
    CHECK(c.phi_at(0, 0) == doctest::Approx(0.1994711).epsilon(1e-6));
    CHECK(c.d_diag[0] == doctest::Approx(0.0082623).epsilon(1e-4));
    CHECK(c.theta[0] == doctest::Approx(0.2303294).epsilon(1e-6));
    CHECK(c.constant == doctest::Approx(0.2820948).epsilon(1e-6));

    // cross-checks against the defining integrals
    const auto smoothed = GaussianParams(0.0, std::sqrt(2.0));  // kernel * p_1
    const double phi_numeric = testing::quad(
        [&](double x) {
            const double v = phi(smoothed.sigma, x - smoothed.mu);
            return v * v;
        },
        -16.0, 16.0);
    CHECK(std::abs(c.phi_at(0, 0) - phi_numeric) <= 1e-9);
    const double theta_numeric = testing::quad(
        [&](double x) { return phi(smoothed.sigma, x - smoothed.mu) * phi(1.0, x); }, -16.0, 16.0);
    CHECK(std::abs(c.theta[0] - theta_numeric) <= 1e-9);
}

TEST_CASE("build_components validation") {
    const std::vector<BatchSummary> none;
    CHECK_THROWS_AS(build_components(none, GaussianParams(0, 1), 1.0), std::domain_error);
    const std::vector<BatchSummary> one{BatchSummary(0, 1, 5)};
    CHECK_THROWS_AS(build_components(one, GaussianParams(0, 1), 0.0), std::domain_error);
    const std::vector<BatchSummary> huge(kMaxWindow + 1, BatchSummary(0, 1, 5));
    CHECK_THROWS_AS(build_components(huge, GaussianParams(0, 1), 1.0), std::domain_error);
}

TEST_CASE("zero batch std gives a zero variance entry") {
    const std::vector<BatchSummary> s{BatchSummary(0.0, 0.0, 4), BatchSummary(1.0, 0.5, 4)};
    const auto c = build_components(s, GaussianParams(0.5, 1.0), 0.8);
    CHECK(c.d_diag[0] == 0.0);
    CHECK(c.d_diag[1] > 0.0);
}

TEST_CASE("phi matrix is symmetric with the stated diagonal") {
    SplitRng rng(11, 0);
    const auto inst = testing::random_instance(rng, 4);
    const auto c = build_components(inst.summaries, inst.target, inst.bandwidth);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double gi = inst.summaries[i].gamma;
        const double expected =
            phi(std::sqrt(2 * inst.bandwidth * inst.bandwidth + 2 * gi * gi), 0.0);
        CHECK(c.phi_at(i, i) == doctest::Approx(expected).epsilon(1e-14));
        for (std::size_t j = 0; j < c.size(); ++j) {
            CHECK(c.phi_at(i, j) == c.phi_at(j, i));
            CHECK(c.phi_at(i, j) > 0.0);
        }
    }
}

TEST_CASE("phi and theta entries match their defining integrals") {
    SplitRng rng(12, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = testing::random_instance(rng, 3);
        const auto c = build_components(inst.summaries, inst.target, inst.bandwidth);
        const double s2 = inst.bandwidth * inst.bandwidth;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const GaussianParams si(inst.summaries[i].mu,
                                    std::sqrt(s2 + inst.summaries[i].gamma * inst.summaries[i].gamma));
            for (std::size_t j = 0; j <= i; ++j) {
                const GaussianParams sj(
                    inst.summaries[j].mu,
                    std::sqrt(s2 + inst.summaries[j].gamma * inst.summaries[j].gamma));
                const double lo = std::min(si.mu, sj.mu) - 12.0 * std::max(si.sigma, sj.sigma);
                const double hi = std::max(si.mu, sj.mu) + 12.0 * std::max(si.sigma, sj.sigma);
                const double numeric = testing::quad(
                    [&](double x) { return phi(si.sigma, x - si.mu) * phi(sj.sigma, x - sj.mu); },
                    lo, hi);
                CHECK(std::abs(c.phi_at(i, j) - numeric) <= 1e-9);
            }
            const double lo = std::min(si.mu, inst.target.mu) -
                              12.0 * std::max(si.sigma, inst.target.sigma);
            const double hi = std::max(si.mu, inst.target.mu) +
                              12.0 * std::max(si.sigma, inst.target.sigma);
            const double numeric = testing::quad(
                [&](double x) {
                    return phi(si.sigma, x - si.mu) * phi(inst.target.sigma, x - inst.target.mu);
                },
                lo, hi);
            CHECK(std::abs(c.theta[i] - numeric) <= 1e-9);
        }
    }
}

TEST_CASE("stationary exact mise, bias, and variance") {
    const auto c = stationary_components();
    const WeightVector one{{1.0}};
    CHECK(exact_mise(c, one) == doctest::Approx(0.0291694).epsilon(1e-4));
    CHECK(ib_squared(c, one) == doctest::Approx(0.0209071).epsilon(1e-4));
    CHECK(iv(c, one) == doctest::Approx(0.0082623).epsilon(1e-4));
}

TEST_CASE("stationary squared bias matches quadrature of the smoothed mismatch") {
    const auto c = stationary_components();
    // K_sigma * p_1 vs the target, integrated directly.
    const double numeric = testing::quad(
        [&](double x) {
            const double d = phi(std::sqrt(2.0), x) - phi(1.0, x);
            return d * d;
        },
        -16.0, 16.0);
    CHECK(std::abs(ib_squared(c, WeightVector{{1.0}}) - numeric) <= 1e-9);
}

TEST_CASE("dimension mismatch is rejected") {
    const auto c = stationary_components();
    CHECK_THROWS_AS(exact_mise(c, WeightVector{{0.5, 0.5}}), std::domain_error);
    CHECK_THROWS_AS(ib_squared(c, WeightVector{{0.5, 0.5}}), std::domain_error);
    CHECK_THROWS_AS(iv(c, WeightVector{{0.5, 0.5}}), std::domain_error);
}

TEST_CASE("mise approaches zero as the kernel sharpens on a matched batch") {
    // mu_1 = mu_t, gamma_1 = gamma_t and the variance matrix zeroed (the
    // infinite-sample limit): only the smoothing bias remains, and it
    // vanishes with sigma.
    const std::vector<BatchSummary> s{BatchSummary(0.0, 1.0, 1)};
    double previous = 1.0;
    for (double sigma : {0.5, 0.1, 0.01, 0.001}) {
        auto c = build_components(s, GaussianParams(0.0, 1.0), sigma);
        c.d_diag.assign(c.size(), 0.0);
        const double m = exact_mise(c, WeightVector{{1.0}});
        CHECK(m < previous);
        previous = m;
    }
    CHECK(previous < 1e-6);
}

TEST_CASE("variance at current weights picks out the last diagonal entry") {
    SplitRng rng(20, 0);
    const auto inst = testing::random_instance(rng, 5);
    const auto c = build_components(inst.summaries, inst.target, inst.bandwidth);
    CHECK(iv(c, current_weights(5)) == c.d_diag[4]);
}

TEST_CASE("decomposition identity on random inputs") {
    SplitRng rng(21, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto c = random_components(rng, 1 + rng.next_int(0, 5));
        const WeightVector alpha{testing::random_simplex_point(rng, c.size())};
        const double whole = exact_mise(c, alpha);
        const double parts = ib_squared(c, alpha) + iv(c, alpha);
        CHECK(std::abs(whole - parts) <= 1e-14);
        CHECK(whole >= -1e-12);
        CHECK(ib_squared(c, alpha) >= -1e-12);
        CHECK(iv(c, alpha) >= 0.0);
    }
}

TEST_CASE("variance term scales as one over n") {
    SplitRng rng(22, 0);
    const auto inst = testing::random_instance(rng, 3);
    auto doubled = inst.summaries;
    for (auto& s : doubled) {
        s = BatchSummary(s.mu, s.gamma, 2 * s.n);
    }
    const auto c1 = build_components(inst.summaries, inst.target, inst.bandwidth);
    const auto c2 = build_components(doubled, inst.target, inst.bandwidth);
    const WeightVector alpha{testing::random_simplex_point(rng, 3)};
    CHECK(iv(c2, alpha) == doctest::Approx(0.5 * iv(c1, alpha)).epsilon(1e-14));
    // bias is independent of n
    CHECK(ib_squared(c2, alpha) == ib_squared(c1, alpha));
}

TEST_CASE("lambda stays positive semidefinite over random draws") {
    SplitRng rng(23, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto c = random_components(rng, 1 + rng.next_int(0, 5));
        auto lambda = c.phi_matrix;
        for (std::size_t i = 0; i < c.size(); ++i) {
            lambda[i * c.size() + i] += c.d_diag[i];
            CHECK(c.d_diag[i] >= 0.0);
        }
        CHECK(testing::min_eigenvalue(lambda, c.size()) >= -1e-10);
    }
}

TEST_CASE("closed_form_ise of the target against itself is zero") {
    const GaussianParams target(0.7, 1.3);
    const MixtureDensity h{{{1.0, target}}};
    CHECK(std::abs(closed_form_ise(h, target)) <= 1e-15);
}

TEST_CASE("closed_form_ise matches quadrature and ignores component order") {
    const GaussianParams target(0.0, 1.0);
    const MixtureDensity h{{{0.5, GaussianParams(-1.0, 1.0)}, {0.5, GaussianParams(1.0, 1.0)}}};
    const double numeric = testing::quad(
        [&](double x) {
            const double d = h.pdf(x) - phi(target.sigma, x - target.mu);
            return d * d;
        },
        -16.0, 16.0);
    CHECK(std::abs(closed_form_ise(h, target) - numeric) <= 1e-10);

    const MixtureDensity reversed{{h.components[1], h.components[0]}};
    CHECK(closed_form_ise(reversed, target) == closed_form_ise(h, target));
}

TEST_CASE("closed_form_ise rejects an empty mixture") {
    CHECK_THROWS_AS(closed_form_ise(MixtureDensity{}, GaussianParams(0, 1)), std::domain_error);
}

TEST_CASE("mise equals resampled mean ise on small windows") {
    // Brute-force check of the expectation: resample full windows, score the
    // realized mixtures, and compare the average with the closed form.
    SplitRng rng(31, 0);
    for (int config = 0; config < 4; ++config) {
        const std::size_t window = 1 + config % 3;
        std::vector<BatchSummary> summaries;
        double mu = rng.next_symmetric(1.0);
        double gamma = 1.0 + 0.5 * rng.next_unit();
        for (std::size_t i = 0; i < window; ++i) {
            mu += rng.next_symmetric(1.0);
            gamma = std::max(gamma + rng.next_symmetric(0.2), 1.0);
            summaries.emplace_back(mu, gamma, rng.next_int(2, 5));
        }
        const GaussianParams target(summaries.back().mu, summaries.back().gamma);
        const double sigma = 0.5 + rng.next_unit();
        const auto c = build_components(summaries, target, sigma);
        const WeightVector alpha{testing::random_simplex_point(rng, window)};
        const double expected = exact_mise(c, alpha);

        const int runs = 30000;
        double sum = 0.0;
        double sum_sq = 0.0;
        MixtureDensity h;
        for (int run = 0; run < runs; ++run) {
            h.components.clear();
            for (std::size_t i = 0; i < window; ++i) {
                const auto& s = summaries[i];
                const double w = alpha[i] / s.n;
                for (int j = 0; j < s.n; ++j) {
                    h.components.push_back(
                        {w, GaussianParams(s.mu + s.gamma * rng.next_normal(), sigma)});
                }
            }
            const double ise = closed_form_ise(h, target);
            sum += ise;
            sum_sq += ise * ise;
        }
        const double mean = sum / runs;
        const double variance = (sum_sq - runs * mean * mean) / (runs - 1);
        const double se = std::sqrt(variance / runs);
        CHECK(std::abs(mean - expected) <= 3.0 * se);
    }
}

}  // TEST_SUITE
