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

#include "gausschan/mat2.hpp"

namespace gausschan {

/// Single-mode Gaussian state, described by its coherent vector and
/// covariance matrix (hbar = 1, vacuum variance 1/2).
struct GaussianState {
    Vec2 alpha;
    SymMat2 V = SymMat2::isotropic(0.5);

    /// N = (tr V + |alpha|^2) / 2 - 1/2.
    double mean_photon_number() const;
};

/// Uncertainty relation check: V >= 0 and det V >= 1/4 within tol.
bool is_valid_state(const GaussianState& st, double tol = kDefaultTol);

/// Single-mode Gaussian channel acting on moments as
///
///     alpha -> X alpha + delta,  V -> X V X^T + Y.
///
/// The derived parameters tau = det X and y = sqrt(det Y) are cached at
/// construction. The displacement delta is carried through composition
/// and state application but has no effect on classification or
/// capacities.
struct GaussianChannel {
    Mat2 X;
    SymMat2 Y;
    Vec2 delta;
    double tau = 1.0;
    double y = 0.0;
};

/// Validating constructor.
///
/// Throws NotPositive when Y has an eigenvalue below -tol, and
/// NotPhysical when y < |tau - 1|/2 - tol (the map would not be
/// completely positive).
GaussianChannel new_channel(const Mat2& X, const SymMat2& Y, const Vec2& delta = {},
                            double tol = kDefaultTol);

/// True iff y >= (|tau| + 1)/2 - tol; such channels destroy all input
/// entanglement and their one-shot capacity is additive.
bool is_entanglement_breaking(const GaussianChannel& c, double tol = kDefaultTol);

/// The seven canonical channel classes.
enum class CanonicalTag {
    A1,  ///< zero transmission
    A2,  ///< classical signal (quadrature erasing)
    B1,  ///< single-quadrature classical noise
    B2,  ///< classical additive noise
    CL,  ///< lossy
    CA,  ///< amplification
    D,   ///< phase conjugating
    Id,  ///< perfect transmission
};

const char* tag_name(CanonicalTag tag);

/// Canonical class together with the beam-splitter transmissivity T and
/// two-mode-squeezer gain G realizing it.
struct CanonicalClass {
    CanonicalTag tag = CanonicalTag::Id;
    double T = 1.0;
    double G = 1.0;
};

/// Optical-realization parameters for a point (tau, y):
/// for tau >= 0, G = y + (tau+1)/2 and T = tau/G (so tau = T G);
/// for tau < 0, G = y + (|tau|+1)/2 and T = |tau|/(G-1) (so tau = -T(G-1)).
struct ThermalGains {
    double T = 1.0;
    double G = 1.0;
};
ThermalGains table_gains(double tau, double y);

/// Classify a physical channel by the numerical ranks of (X, Y) and the
/// location of (tau, y).
CanonicalClass classify(const GaussianChannel& c, double tol = kDefaultTol);

/// Cascade second ∘ first: X = X2 X1, Y = X2 Y1 X2^T + Y2,
/// delta = X2 delta1 + delta2.
GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first);

/// Channel action on a state's moments.
GaussianState apply(const GaussianChannel& c, const GaussianState& st);

/// nu = sqrt(det V) >= 1/2. Throws NotAState if det V < 1/4 - tol.
double symplectic_eigenvalue(const SymMat2& V, double tol = kDefaultTol);

/// Thermal channel: X = sqrt(|tau|) diag(1, sgn tau), Y = y I.
GaussianChannel thermal_channel(double tau, double y, double tol = kDefaultTol);

}  // namespace gausschan
