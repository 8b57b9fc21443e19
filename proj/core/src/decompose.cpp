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

#include "gausschan/decompose.hpp"

#include <cmath>
#include <numbers>

#include "gausschan/errors.hpp"

namespace gausschan {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

/// Shared core of the factorization. Inputs are the singular frame of X
/// (angles t1, t2 and squeezing s_x, so that the singular values are
/// sqrt(|tau|) e^{+-s_x}) and the spectral frame of Y (angle theta_y,
/// squeezing s_y, symplectic eigenvalue y).
///
/// The rotation Theta_F that diagonalizes the squeezed-noise product and
/// the resulting squeezing parameter s follow the closed-form
/// expressions; the branch with the minus sign before the radical keeps
/// e^{2s} <= 1, and a final exact quarter-turn regauge flips the sign of
/// s so that the stored s is always >= 0.
FiducialDecomposition assemble(double tau, double y, double s_x, double s_y, double t1,
                               double t2, double theta_y) {
    const double delta = theta_y - t1;
    const double a = std::exp(4.0 * s_y);
    const double b = std::exp(4.0 * s_x);
    const double cos2d = std::cos(2.0 * delta);
    const double sin2d = std::sin(2.0 * delta);
    const double xi = (1.0 + a) * (1.0 + b) - (a - 1.0) * (b - 1.0) * cos2d;
    const double disc = std::max(xi * xi - 16.0 * a * b, 0.0);
    const double root = std::sqrt(disc);
    const double denom = 2.0 * sin2d * (a - 1.0);

    double theta_f = 0.0;
    double s_raw = 0.0;
    if (denom == 0.0) {
        // Noise frame aligned with the singular frame of X: the product
        // is already diagonal and the rotation degenerates.
        const Mat2 k = squeeze_matrix(-s_x) * rotation_matrix(delta) *
                       squeeze_matrix(2.0 * s_y) * rotation_matrix(-delta) *
                       squeeze_matrix(-s_x);
        s_raw = 0.25 * std::log(k.a11 / k.a22);
    } else {
        // 4 sqrt(ab) / (xi + root) equals (xi - root)/(4 sqrt(ab)) but
        // avoids the cancellation between xi and root.
        const double u = 4.0 * std::sqrt(a * b) / (xi + root);
        s_raw = 0.5 * std::log(u);
        const double xi_t = (1.0 + a) * (b - 1.0) - (a - 1.0) * (1.0 + b) * cos2d;
        const double lambda = -std::exp(-2.0 * s_x) * (xi_t + root) / denom;
        const double sg = lambda == 0.0 ? 0.0 : sign_of(lambda);
        theta_f = -std::asin(sg / std::sqrt(1.0 + lambda * lambda));
    }

    const bool flip = s_raw < 0.0;
    Mat2 theta_f_mat = rotation_matrix(theta_f);
    if (flip) theta_f_mat = theta_f_mat * Mat2::quarter_turn();

    FiducialDecomposition out;
    out.fiducial = {tau, y, std::fabs(s_raw)};
    out.M = rotation_matrix(t1) * squeeze_matrix(s_x) * theta_f_mat.transposed();
    const double theta_f_final = flip ? normalize_angle(theta_f + kPi / 2.0) : theta_f;
    out.theta.theta = normalize_angle(sign_of(tau) * theta_f_final + t2);
    return out;
}

}  // namespace

Mat2 FiducialParams::x_matrix() const {
    const double r = std::sqrt(std::fabs(tau));
    return Mat2::diagonal(r, tau < 0.0 ? -r : r);
}

SymMat2 FiducialParams::y_matrix() const {
    return SymMat2::diagonal(y * std::exp(2.0 * s), y * std::exp(-2.0 * s));
}

GaussianChannel to_channel(const FiducialParams& f, double tol) {
    return new_channel(f.x_matrix(), f.y_matrix(), {}, tol);
}

FiducialDecomposition decompose_fiducial(const GaussianChannel& c, double s_trunc) {
    if (!(s_trunc > 0.0) || s_trunc > 100.0) {
        throw DomainError("decompose_fiducial: s_trunc must lie in (0, 100]");
    }
    const Svd2 sv = svd2(c.X);
    const EigenSym2 eig = eigen_sym2(c.Y);
    const int rank_x = rank_of(c.X);
    const int rank_y = rank_of(c.Y);
    const double sgn = sv.conjugating ? -1.0 : 1.0;
    const double tau = sgn * sv.x1 * sv.x2;

    if (rank_x == 2 && rank_y == 2) {
        const double y = std::sqrt(eig.l1 * eig.l2);
        const double s_x = 0.5 * std::log(sv.x1 / sv.x2);
        const double s_y = 0.25 * std::log(eig.l1 / eig.l2);
        return assemble(tau, y, s_x, s_y, sv.theta1, sv.theta2, eig.theta);
    }
    if (rank_x == 2 && rank_y == 0) {
        // Unitarily equivalent to perfect transmission; Y_F vanishes so
        // s is pure gauge and is pinned to zero.
        FiducialDecomposition out;
        out.fiducial = {tau, 0.0, 0.0};
        out.M = rotation_matrix(sv.theta1) * squeeze_matrix(0.5 * std::log(sv.x1 / sv.x2));
        out.theta.theta = normalize_angle(sv.theta2);
        return out;
    }
    if (rank_x == 0 && rank_y == 2) {
        // Zero transmission: X = 0 and only the noise is decomposed.
        const double y = std::sqrt(eig.l1 * eig.l2);
        const double s_y = 0.25 * std::log(eig.l1 / eig.l2);
        return assemble(0.0, y, 0.0, s_y, 0.0, 0.0, eig.theta);
    }
    if (rank_x == 2 && rank_y == 1) {
        // Single-quadrature noise family: reorder the noise eigenvalues
        // so the vanishing one comes first, then truncate it at
        // y -> e^{-2 s_T}/2 with the compensating squeezing shift.
        const double y2 = eig.l1;
        const double theta_y = normalize_angle(eig.theta + kPi / 2.0);
        const double s_y = -0.5 * std::log(2.0 * y2) - s_trunc;
        const double y_eff = 0.5 * std::exp(-2.0 * s_trunc);
        const double s_x = 0.5 * std::log(sv.x1 / sv.x2);
        FiducialDecomposition out =
            assemble(tau, y_eff, s_x, s_y, sv.theta1, sv.theta2, theta_y);
        out.limit = LimitKind::B1;
        out.s_trunc = s_trunc;
        return out;
    }
    if (rank_x == 1 && rank_y == 2) {
        // Classical-signal family: raise the vanishing singular value of
        // X to e^{-2 s_T}/x1, which sets tau -> e^{-2 s_T}.
        const double y = std::sqrt(eig.l1 * eig.l2);
        const double s_y = 0.25 * std::log(eig.l1 / eig.l2);
        const double s_x = std::log(sv.x1) + s_trunc;
        const double tau_eff = std::exp(-2.0 * s_trunc);
        FiducialDecomposition out =
            assemble(tau_eff, y, s_x, s_y, sv.theta1, sv.theta2, eig.theta);
        out.limit = LimitKind::A2;
        out.s_trunc = s_trunc;
        return out;
    }
    throw NotPhysical("decompose_fiducial: rank combination is not a quantum channel");
}

GaussianChannel reconstruct(const FiducialDecomposition& d, double tol) {
    const Mat2 X = d.M * d.fiducial.x_matrix() * d.theta.mat();
    const SymMat2 Y = congruence(d.M, d.fiducial.y_matrix());
    return new_channel(X, Y, {}, tol);
}

double reconstruction_residual(const FiducialDecomposition& d, const GaussianChannel& c) {
    const GaussianChannel r = reconstruct(d, 1.0);  // tolerance immaterial here
    const double rx = (r.X - c.X).max_abs();
    const double ry = (r.Y - c.Y).max_abs();
    return std::max(rx, ry);
}

CanonicalDecomposition decompose_canonical(const GaussianChannel& c, double tol) {
    CanonicalDecomposition out;
    out.canonical = classify(c, tol);
    const Svd2 sv = svd2(c.X);
    const EigenSym2 eig = eigen_sym2(c.Y);
    const int rank_x = rank_of(c.X);
    const int rank_y = rank_of(c.Y);
    const double sgn = sv.conjugating ? -1.0 : 1.0;

    if (rank_x == 2 && rank_y == 1) {
        // X is symplectic (tau = 1); the noise reduces to diag(0, 1/2).
        const double s_y = -0.5 * std::log(2.0 * eig.l1);
        const double theta_y = normalize_angle(eig.theta + kPi / 2.0);
        const double s_x = 0.5 * std::log(sv.x1 / sv.x2);
        out.Xc = Mat2::identity();
        out.Yc = SymMat2::diagonal(0.0, 0.5);
        out.M1 = squeeze_matrix(-s_y) * rotation_matrix(-theta_y) * rotation_matrix(sv.theta1) *
                 squeeze_matrix(s_x) * rotation_matrix(sv.theta2);
        out.M2 = rotation_matrix(theta_y) * squeeze_matrix(s_y);
        return out;
    }
    if (rank_x == 1) {
        // Quadrature-erasing core diag(1, 0); the inner rank-one map is
        // re-factored so its left rotation joins M2.
        const double y = std::sqrt(std::max(eig.l1 * eig.l2, 0.0));
        const double s_y = 0.25 * std::log(eig.l1 / eig.l2);
        const Mat2 x_cs = Mat2::diagonal(1.0, 0.0);
        const Mat2 inner = squeeze_matrix(-s_y) * rotation_matrix(-eig.theta) *
                           rotation_matrix(sv.theta1) * squeeze_matrix(std::log(sv.x1)) * x_cs *
                           rotation_matrix(sv.theta2);
        const Svd2 in_sv = svd2(inner);
        out.Xc = x_cs;
        out.Yc = SymMat2::isotropic(y);
        out.M1 = squeeze_matrix(std::log(in_sv.x1)) * rotation_matrix(in_sv.theta2);
        out.M2 = rotation_matrix(eig.theta) * squeeze_matrix(s_y) * rotation_matrix(in_sv.theta1);
        return out;
    }

    // Thermal families (ranks (2,2), (2,0), (0,2)).
    const double tau = rank_x == 0 ? 0.0 : sgn * sv.x1 * sv.x2;
    const double y = rank_y == 2 ? std::sqrt(eig.l1 * eig.l2) : 0.0;
    const double s_y = rank_y == 2 ? 0.25 * std::log(eig.l1 / eig.l2) : 0.0;
    const double theta_y = rank_y == 2 ? eig.theta : 0.0;
    const double s_x = rank_x == 2 ? 0.5 * std::log(sv.x1 / sv.x2) : 0.0;
    const double t1 = rank_x == 2 ? sv.theta1 : 0.0;
    const double t2 = rank_x == 2 ? sv.theta2 : 0.0;
    const double sg = tau < 0.0 ? -1.0 : 1.0;
    const double r = std::sqrt(std::fabs(tau));
    out.Xc = Mat2::diagonal(r, tau < 0.0 ? -r : r);
    out.Yc = SymMat2::isotropic(y);
    out.M1 = squeeze_matrix(-s_y) * rotation_matrix(-sg * theta_y) * rotation_matrix(sg * t1) *
             squeeze_matrix(s_x) * rotation_matrix(t2);
    out.M2 = rotation_matrix(theta_y) * squeeze_matrix(s_y);
    return out;
}

}  // namespace gausschan
