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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gausschan/channel.hpp"
#include "gausschan/decompose.hpp"

namespace gausschan {

/// 1 / ln 2: the additivity gap bound of the closed-form upper bound, in
/// bits.
inline constexpr double kBitsPerNat = 1.4426950408889634;

/// Mean-photon-number constraint on the modulated input.
struct EnergyBudget {
    double n_bar = 0.0;
};

enum class CapacityRegime {
    ClosedForm,       ///< additive regime, value is exact
    NumericalOneShot  ///< best one-shot value found by the optimizer
};

/// Input state and classical modulation covariances achieving a report's
/// value, stated in the fiducial frame of the channel.
struct GaussianEncoding {
    SymMat2 V_in = SymMat2::isotropic(0.5);
    SymMat2 V_mod;
};

struct OptimizerDiagnostics {
    int starts = 0;
    int best_iter = 0;
    /// Objective value reached from every start, in start order.
    std::vector<double> local_optima;
};

struct CapacityReport {
    double c_gauss = 0.0;
    CapacityRegime regime = CapacityRegime::ClosedForm;
    double n_thr = 0.0;
    std::optional<double> c_bar;     ///< present iff tau > 0 in the closed-form regime
    std::optional<double> gap_bound; ///< = 1/ln2 whenever c_bar carries the additivity guarantee
    GaussianEncoding encoding;
    std::optional<OptimizerDiagnostics> optimizer;
};

/// Entropy of a thermal state with mean photon number x, in bits:
/// g(x) = (x+1) log2(x+1) - x log2 x, with g(0) = 0 by continuity.
/// Throws DomainError for x < -1e-9; tiny negatives round to 0.
double g(double x);

/// g(nu_bar - 1/2) - g(nu - 1/2) for symplectic eigenvalues of the
/// modulated and unmodulated output states.
double holevo_chi_g(double nu_bar, double nu);

/// Input energy above which the one-shot value is additive:
/// N_thr = (e^{2|s|} + (2y/|tau|) sinh(2|s|) - 1) / 2. Zero iff s = 0.
double n_threshold(const FiducialParams& f);

/// The noise level below which additivity holds at fixed energy:
/// y_thr = |tau| (e^{-2|s|}(1 + 2 n_bar) - 1) / (1 - e^{-4|s|}).
/// y <= y_thr is equivalent to n_bar >= N_thr. Undefined at s = 0.
double y_threshold_curve(double tau, double n_bar, double s);

/// Closed-form constrained capacity over Gaussian encodings, valid for
/// n_bar >= N_thr:
///
///     C = g(|tau| N + y cosh 2s + (|tau|-1)/2) - g(y + (|tau|-1)/2),
///
/// together with the optimal encoding that attains it. Throws
/// BelowThreshold when the budget cannot realize that encoding.
CapacityReport gaussian_capacity_closed_form(const FiducialParams& f, EnergyBudget e,
                                             double tol = kDefaultTol);

struct OneShotOptions {
    int starts = 32;
    std::uint64_t seed = 12345;
    int max_evals_per_start = 6000;
    double step_tol = 1e-8;
};

/// Direct maximization of the one-shot value chi = g(nu_bar - 1/2) -
/// g(nu - 1/2) over pure input covariances V_in (2 parameters) and PSD
/// modulation covariances V_mod (3 parameters) under
/// tr(V_in + V_mod) <= 2 n_bar + 1, by seeded multistart pattern search.
/// Deterministic for a fixed seed.
CapacityReport numerical_one_shot(const GaussianChannel& c, EnergyBudget e,
                                  const OneShotOptions& opts = {});

struct CapacityOptions {
    double s_trunc = 10.0;
    double tol = kDefaultTol;
    OneShotOptions one_shot;
};

/// Capacity of an arbitrary channel: routes through decompose_fiducial,
/// then evaluates the closed form when n_bar >= N_thr and otherwise
/// falls back to the numerical one-shot optimizer on the fiducial
/// channel. Channels with tau = 0 carry no signal and report 0 bits.
CapacityReport capacity_of_channel(const GaussianChannel& c, EnergyBudget e,
                                   const CapacityOptions& opts = {});

/// Closed-form upper bound on the unrestricted classical capacity,
///
///     C_bar = g((2 tau N + (2y + 1 - tau) sinh^2 s) / (2y + 1 + tau)),
///
/// for tau > 0 (where C_gauss <= C <= C_bar <= C_gauss + 1/ln2); for
/// tau < 0 the variant with y -> -y is returned and the last inequality
/// is not guaranteed. Requires n_bar >= N_thr.
double upper_bound_cbar(const FiducialParams& f, EnergyBudget e);
double upper_bound_cbar(const GaussianChannel& c, EnergyBudget e,
                        const CapacityOptions& opts = {});

/// Family of bounds C <= g(|tau| N + y cosh 2s + (|tau|-1)/2) - b for a
/// caller-supplied lower bound b >= 0 on the minimal output entropy;
/// b = 0 gives the max-output-entropy bound.
double supplementary_bound(const GaussianChannel& c, EnergyBudget e, double b,
                           const CapacityOptions& opts = {});

}  // namespace gausschan
