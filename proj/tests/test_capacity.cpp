// Copyright 2026 The gausschan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "gausschan/capacity.hpp"
#include "gausschan/errors.hpp"
#include "test_util.hpp"

using namespace gausschan;
using namespace gausschan::testing;

TEST_CASE("g values") {
    CHECK(g(0.0) == 0.0);
    CHECK(g(1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g(0.5) == doctest::Approx(1.3774437510817343).epsilon(1e-14));
    CHECK(g(3.0) == doctest::Approx(3.2451124978365315).epsilon(1e-14));
    CHECK(g(-1e-12) == 0.0);
    CHECK_THROWS_AS(g(-0.1), DomainError);
}

TEST_CASE("g is monotone and concave") {
    double prev = 0.0;
    double prev_slope = 1e300;
    for (double x = 1e-6; x < 50.0; x *= 1.7) {
        const double val = g(x);
        CHECK(val > prev);
        const double slope = (val - prev) / (x - x / 1.7);
        CHECK(slope < prev_slope);
        prev = val;
        prev_slope = slope;
    }
}

TEST_CASE("holevo chi") {
    CHECK(holevo_chi_g(1.7, 1.7) == 0.0);
    CHECK(holevo_chi_g(1.5, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(holevo_chi_g(3.5, 1.5) == doctest::Approx(1.2451124978365315).epsilon(1e-14));
    CHECK_THROWS_AS(holevo_chi_g(1.0, 0.4), DomainError);
}

TEST_CASE("n_threshold") {
    CHECK(n_threshold({0.5, 0.3, 0.0}) == 0.0);
    CHECK(n_threshold({1.0, 0.5, 0.3}) == doctest::Approx(0.7293861912693751).epsilon(1e-13));
    CHECK(n_threshold({1.0, 0.5, -0.3}) == n_threshold({1.0, 0.5, 0.3}));
    CHECK_THROWS_AS(n_threshold({0.0, 0.7, 0.1}), DomainError);
}

TEST_CASE("y_threshold_curve") {
    CHECK(y_threshold_curve(1.0, 0.5, 0.12) ==
          doctest::Approx(1.5037532725793271).epsilon(1e-13));
    CHECK_THROWS_AS(y_threshold_curve(1.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(y_threshold_curve(0.0, 0.5, 0.1), DomainError);
    // The curve blows up as the noise squeezing vanishes.
    CHECK(y_threshold_curve(1.0, 0.5, 1e-4) > 1e3);

    SUBCASE("definitional inverse of the energy threshold") {
        std::mt19937_64 rng(71);
        for (int k = 0; k < 2000; ++k) {
            const double tau = uniform(rng, 0.05, 2.5) * (uniform(rng, 0.0, 1.0) < 0.3 ? -1 : 1);
            const double s = uniform(rng, 0.01, 1.0);
            const double n_bar = uniform(rng, 0.0, 10.0);
            const double y_thr = y_threshold_curve(tau, n_bar, s);
            if (y_thr <= 0.0) continue;
            CHECK(n_threshold({tau, y_thr, s}) == doctest::Approx(n_bar).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed form reproduces the thermal special cases") {
    SUBCASE("pure lossy") {
        const CapacityReport rep = gaussian_capacity_closed_form({0.5, 0.25, 0.0}, {1.0});
        CHECK(rep.c_gauss == doctest::Approx(1.3774437510817343).epsilon(1e-13));
        CHECK(rep.regime == CapacityRegime::ClosedForm);
        CHECK(rep.n_thr == 0.0);
    }
    SUBCASE("additive noise") {
        const CapacityReport rep = gaussian_capacity_closed_form({1.0, 1.0, 0.0}, {2.0});
        CHECK(rep.c_gauss == doctest::Approx(1.2451124978365315).epsilon(1e-13));
    }
}

TEST_CASE("closed form encoding is feasible and saturates the budget") {
    std::mt19937_64 rng(73);
    for (int k = 0; k < 500; ++k) {
        const double tau = uniform(rng, 0.1, 2.5) * (uniform(rng, 0.0, 1.0) < 0.3 ? -1 : 1);
        const double y = std::fabs(tau - 1.0) / 2.0 + uniform(rng, 1e-3, 2.0);
        const double s = uniform(rng, 0.0, 0.8);
        const FiducialParams f{tau, y, s};
        const double n_bar = n_threshold(f) + uniform(rng, 0.0, 5.0);
        const CapacityReport rep = gaussian_capacity_closed_form(f, {n_bar});
        const EigenSym2 eig = eigen_sym2(rep.encoding.V_mod);
        CHECK(eig.l2 >= -1e-12);
        CHECK(rep.encoding.V_in.trace() + rep.encoding.V_mod.trace() ==
              doctest::Approx(2.0 * n_bar + 1.0).epsilon(1e-12));
        CHECK(rep.encoding.V_in.det() * 4.0 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closed form rejects sub-threshold budgets") {
    const FiducialParams f{1.0, 0.5, 0.3};
    CHECK_THROWS_AS(gaussian_capacity_closed_form(f, {0.5}), BelowThreshold);
    CHECK_THROWS_AS(gaussian_capacity_closed_form({0.0, 0.7, 0.0}, {1.0}), DomainError);
}

TEST_CASE("optimizer agrees with the closed form above threshold") {
    const FiducialParams f{1.0, 0.5, 0.3};
    const double n_bar = 1.0;  // threshold is about 0.7294
    const CapacityReport closed = gaussian_capacity_closed_form(f, {n_bar});
    const CapacityReport numerical = numerical_one_shot(to_channel(f), {n_bar});
    CHECK(std::fabs(closed.c_gauss - numerical.c_gauss) <= 1e-6);
    CHECK(numerical.regime == CapacityRegime::NumericalOneShot);
    CHECK(numerical.optimizer.has_value());
    CHECK(numerical.optimizer->starts == 32);
}

TEST_CASE("optimizer handles degenerate budgets") {
    const CapacityReport rep = numerical_one_shot(to_channel({0.8, 0.2, 0.0}), {0.0});
    CHECK(rep.c_gauss == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("thermal channels are additive at every budget") {
    std::mt19937_64 rng(79);
    for (int k = 0; k < 8; ++k) {
        const double tau = uniform(rng, 0.2, 2.0);
        const double y = std::fabs(tau - 1.0) / 2.0 + uniform(rng, 0.05, 1.0);
        const double n_bar = uniform(rng, 0.05, 3.0);
        const CapacityReport closed = gaussian_capacity_closed_form({tau, y, 0.0}, {n_bar});
        const CapacityReport numerical = numerical_one_shot(thermal_channel(tau, y), {n_bar});
        CHECK(std::fabs(closed.c_gauss - numerical.c_gauss) <= 1e-6);
    }
}

TEST_CASE("optimizer is deterministic for a fixed seed") {
    const GaussianChannel c = to_channel({1.0, 0.5, 0.3});
    OneShotOptions opts;
    opts.seed = 99;
    const CapacityReport a = numerical_one_shot(c, {0.5}, opts);
    const CapacityReport b = numerical_one_shot(c, {0.5}, opts);
    CHECK(a.c_gauss == b.c_gauss);
    CHECK(a.optimizer->best_iter == b.optimizer->best_iter);
    CHECK(a.optimizer->local_optima == b.optimizer->local_optima);
}

TEST_CASE("capacity_of_channel") {
    SUBCASE("identity channel") {
        const GaussianChannel id = new_channel(Mat2::identity(), SymMat2::zero());
        const CapacityReport rep = capacity_of_channel(id, {1.0});
        CHECK(rep.c_gauss == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(rep.regime == CapacityRegime::ClosedForm);
    }
    SUBCASE("zero transmission carries nothing") {
        const GaussianChannel c = new_channel(Mat2::zero(), SymMat2::identity());
        const CapacityReport rep = capacity_of_channel(c, {3.0});
        CHECK(rep.c_gauss == 0.0);
    }
    SUBCASE("below threshold routes to the optimizer") {
        const CapacityReport rep = capacity_of_channel(to_channel({1.0, 0.5, 0.3}), {0.5});
        CHECK(rep.regime == CapacityRegime::NumericalOneShot);
        CHECK(rep.n_thr == doctest::Approx(0.7293861912693751).epsilon(1e-12));
        CHECK_FALSE(rep.c_bar.has_value());
        CHECK(rep.c_gauss > 0.0);
    }
    SUBCASE("dressing does not change the report") {
        std::mt19937_64 rng(83);
        for (int k = 0; k < 50; ++k) {
            const GaussianChannel c = random_channel(rng, 2.0);
            const double n_bar = 2.0 + n_threshold(decompose_fiducial(c).fiducial);
            const CapacityReport base = capacity_of_channel(c, {n_bar});
            const GaussianChannel d =
                compose(new_channel(random_symplectic(rng), SymMat2::zero(), {}, 1e-6),
                        compose(c, new_channel(rotation_matrix(uniform(rng, -3.0, 3.0)),
                                               SymMat2::zero())));
            const CapacityReport alt = capacity_of_channel(d, {n_bar});
            CHECK(std::fabs(base.c_gauss - alt.c_gauss) <= 1e-9);
        }
    }
}

TEST_CASE("the displacement has no effect on classification or capacity") {
    const GaussianChannel plain = thermal_channel(0.6, 0.4);
    const GaussianChannel shifted =
        new_channel(plain.X, plain.Y, {1.5, -2.0});
    CHECK(classify(plain).tag == classify(shifted).tag);
    CHECK(capacity_of_channel(plain, {1.0}).c_gauss ==
          capacity_of_channel(shifted, {1.0}).c_gauss);
    CHECK(upper_bound_cbar(plain, {1.0}) == upper_bound_cbar(shifted, {1.0}));
}

TEST_CASE("capacity is symmetric in the sign of the noise squeezing") {
    const CapacityReport plus = gaussian_capacity_closed_form({0.8, 0.4, 0.5}, {4.0});
    const CapacityReport minus = gaussian_capacity_closed_form({0.8, 0.4, -0.5}, {4.0});
    CHECK(plus.c_gauss == minus.c_gauss);
    CHECK(plus.n_thr == minus.n_thr);
}

TEST_CASE("capacity monotonicity in the closed-form regime") {
    std::mt19937_64 rng(89);
    for (int k = 0; k < 500; ++k) {
        const double tau = uniform(rng, 0.1, 2.5);
        const double y = std::fabs(tau - 1.0) / 2.0 + uniform(rng, 1e-3, 2.0);
        const double s = uniform(rng, 0.0, 0.6);
        const FiducialParams f{tau, y, s};
        const double n0 = n_threshold(f) + uniform(rng, 0.1, 3.0);
        const double dn = uniform(rng, 0.01, 2.0);
        CHECK(gaussian_capacity_closed_form(f, {n0 + dn}).c_gauss >=
              gaussian_capacity_closed_form(f, {n0}).c_gauss);
        // more noise at fixed (tau, s, n) never helps
        const FiducialParams noisier{tau, y + uniform(rng, 0.01, 1.0), s};
        if (n0 >= n_threshold(noisier)) {
            CHECK(gaussian_capacity_closed_form(noisier, {n0}).c_gauss <=
                  gaussian_capacity_closed_form(f, {n0}).c_gauss + 1e-12);
        }
    }
}

TEST_CASE("upper bound examples") {
    SUBCASE("thermal bound at s = 0") {
        const double c_bar = upper_bound_cbar(FiducialParams{0.5, 0.3, 0.0}, {1.0});
        CHECK(c_bar == doctest::Approx(1.3391494664174068).epsilon(1e-13));
        const double c_gauss = gaussian_capacity_closed_form({0.5, 0.3, 0.0}, {1.0}).c_gauss;
        CHECK(c_bar - c_gauss >= 0.0);
        CHECK(c_bar - c_gauss <= kBitsPerNat);
    }
    SUBCASE("gap shrinks with noise squeezing") {
        // delta(s) <= delta(0) along a grid in s, at fixed (tau, y, n).
        const double tau = 0.8;
        const double y = 0.5;
        const double n_bar = n_threshold({tau, y, 1.0}) + 0.5;  // above threshold for all s
        double delta0 = 0.0;
        for (double s = 0.0; s <= 1.0; s += 0.1) {
            const FiducialParams f{tau, y, s};
            const double delta =
                upper_bound_cbar(f, {n_bar}) - gaussian_capacity_closed_form(f, {n_bar}).c_gauss;
            if (s == 0.0) {
                delta0 = delta;
            } else {
                CHECK(delta <= delta0 + 1e-12);
            }
        }
    }
    SUBCASE("phase-conjugating variant still bounds the capacity") {
        const FiducialParams f{-0.5, 1.0, 0.0};
        const double c_bar = upper_bound_cbar(f, {1.0});
        CHECK(c_bar == doctest::Approx(1.6182509907577811).epsilon(1e-13));
        CHECK(c_bar >= gaussian_capacity_closed_form(f, {1.0}).c_gauss);
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(upper_bound_cbar(FiducialParams{0.0, 0.7, 0.0}, {1.0}), DomainError);
        CHECK_THROWS_AS(upper_bound_cbar(FiducialParams{1.0, 0.5, 0.4}, {0.1}), BelowThreshold);
    }
}

TEST_CASE("bound chain on random channels") {
    std::mt19937_64 rng(97);
    for (int k = 0; k < 1000; ++k) {
        const double tau = uniform(rng, 0.02, 3.0);
        const double y = std::fabs(tau - 1.0) / 2.0 + uniform(rng, 1e-3, 3.0);
        const double s = uniform(rng, 0.0, 1.2);
        const FiducialParams f{tau, y, s};
        const double n_bar = n_threshold(f) + uniform(rng, 0.0, 10.0);
        const double c_gauss = gaussian_capacity_closed_form(f, {n_bar}).c_gauss;
        const double c_bar = upper_bound_cbar(f, {n_bar});
        CHECK(c_bar - c_gauss >= -1e-12);
        CHECK(c_bar - c_gauss <= kBitsPerNat + 1e-9);
    }
}

TEST_CASE("one-shot value never exceeds the upper bound") {
    std::mt19937_64 rng(101);
    for (int k = 0; k < 6; ++k) {
        const double tau = uniform(rng, 0.2, 1.5);
        const double y = std::fabs(tau - 1.0) / 2.0 + uniform(rng, 0.05, 1.0);
        const double s = uniform(rng, 0.0, 0.5);
        const FiducialParams f{tau, y, s};
        const double n_bar = n_threshold(f) + uniform(rng, 0.2, 2.0);
        const CapacityReport numerical = numerical_one_shot(to_channel(f), {n_bar});
        CHECK(numerical.c_gauss <= upper_bound_cbar(f, {n_bar}) + 1e-6);
    }
}

TEST_CASE("supplementary bound") {
    const GaussianChannel c = to_channel({1.0, 1.0, 0.0});
    SUBCASE("b = 0 is the max-output-entropy bound") {
        CHECK(supplementary_bound(c, {2.0}, 0.0) ==
              doctest::Approx(3.2451124978365315).epsilon(1e-13));
    }
    SUBCASE("the closed form is recovered at the matching b") {
        const FiducialParams f{1.0, 1.0, 0.0};
        const double b = g(f.y + (std::fabs(f.tau) - 1.0) / 2.0);
        CHECK(supplementary_bound(c, {2.0}, b) ==
              doctest::Approx(gaussian_capacity_closed_form(f, {2.0}).c_gauss).epsilon(1e-14));
    }
    SUBCASE("non-increasing in b") {
        CHECK(supplementary_bound(c, {2.0}, 0.5) > supplementary_bound(c, {2.0}, 1.0));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(supplementary_bound(c, {2.0}, -0.1), DomainError);
        CHECK_THROWS_AS(supplementary_bound(thermal_channel(-0.5, 1.0), {2.0}, 0.0), DomainError);
    }
}
