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

#include "gausschan/channel.hpp"
#include "gausschan/mat2.hpp"

namespace gausschan {

/// Parameters (tau, y, s) of a fiducial channel: a thermal channel whose
/// added noise is squeezed,
///
///     X_F = sqrt(|tau|) diag(1, sgn tau),
///     Y_F = y diag(e^{2s}, e^{-2s}).
struct FiducialParams {
    double tau = 1.0;
    double y = 0.0;
    double s = 0.0;

    Mat2 x_matrix() const;
    SymMat2 y_matrix() const;
};

/// Materialize the fiducial parameters as a channel (validates
/// physicality).
GaussianChannel to_channel(const FiducialParams& f, double tol = kDefaultTol);

/// How a decomposition represents its channel.
enum class LimitKind {
    Exact,  ///< X = M X_F Theta and Y = M Y_F M^T hold directly
    B1,     ///< rank(X)=2, rank(Y)=1: exact only in the limit s_T -> inf
    A2,     ///< rank(X)=1, rank(Y)=2: exact only in the limit s_T -> inf
};

/// Factorization of a channel as Phi = M ∘ Phi_F(tau, y, s) ∘ Theta with
/// M symplectic and Theta a pure phase-space rotation.
///
/// For the two rank-deficient families the stored fiducial parameters
/// describe a finite-s_T member of a family that converges to the
/// channel as s_T grows; `s_trunc` records the truncation used.
struct FiducialDecomposition {
    Mat2 M = Mat2::identity();
    Rotation theta;
    FiducialParams fiducial;
    LimitKind limit = LimitKind::Exact;
    double s_trunc = 0.0;
};

/// Decompose a physical channel. `s_trunc` is the truncation squeezing
/// used for the rank-deficient families (it is ignored for exact cases);
/// it must lie in (0, 100].
FiducialDecomposition decompose_fiducial(const GaussianChannel& c, double s_trunc = 10.0);

/// Rebuild (X, Y, delta=0) from a decomposition. For limit kinds this
/// yields the finite-s_trunc member of the family.
GaussianChannel reconstruct(const FiducialDecomposition& d, double tol = kDefaultTol);

/// Max-abs entry difference between reconstruct(d) and c over X and Y.
double reconstruction_residual(const FiducialDecomposition& d, const GaussianChannel& c);

/// Classical canonical form Phi = M2 ∘ Phi_C ∘ M1 with M1, M2 symplectic
/// and (X_C, Y_C) one of the seven canonical channel shapes.
struct CanonicalDecomposition {
    Mat2 M1 = Mat2::identity();
    Mat2 M2 = Mat2::identity();
    Mat2 Xc = Mat2::identity();
    SymMat2 Yc;
    CanonicalClass canonical;
};

CanonicalDecomposition decompose_canonical(const GaussianChannel& c, double tol = kDefaultTol);

}  // namespace gausschan
