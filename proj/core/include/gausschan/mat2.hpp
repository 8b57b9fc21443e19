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

#include <cmath>

namespace gausschan {

/// Absolute residual tolerance used as default across the library.
inline constexpr double kDefaultTol = 1e-9;

/// Relative threshold deciding numerical rank of 2x2 matrices.
inline constexpr double kRankTol = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

/// Dense real 2x2 matrix with value semantics.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 diagonal(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
    /// The symplectic form Omega = [[0, 1], [-1, 0]].
    static constexpr Mat2 omega() { return {0.0, 1.0, -1.0, 0.0}; }
    /// Exact quarter turn [[0, -1], [1, 0]]; equals a rotation by +pi/2.
    static constexpr Mat2 quarter_turn() { return {0.0, -1.0, 1.0, 0.0}; }

    constexpr Mat2 transposed() const { return {a11, a21, a12, a22}; }
    constexpr double det() const { return a11 * a22 - a12 * a21; }
    constexpr double trace() const { return a11 + a22; }

    constexpr Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    constexpr Vec2 operator*(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
    constexpr Mat2 operator+(const Mat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    constexpr Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    constexpr Mat2 operator*(double c) const { return {c * a11, c * a12, c * a21, c * a22}; }
    friend constexpr Mat2 operator*(double c, const Mat2& m) { return m * c; }

    double max_abs() const {
        return std::max(std::max(std::fabs(a11), std::fabs(a12)),
                        std::max(std::fabs(a21), std::fabs(a22)));
    }
    bool is_finite() const {
        return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) &&
               std::isfinite(a22);
    }
};

/// Symmetric real 2x2 matrix, stored as (a11, a12, a22).
struct SymMat2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;

    static constexpr SymMat2 identity() { return {1.0, 0.0, 1.0}; }
    static constexpr SymMat2 zero() { return {}; }
    static constexpr SymMat2 diagonal(double d1, double d2) { return {d1, 0.0, d2}; }
    static constexpr SymMat2 isotropic(double c) { return {c, 0.0, c}; }

    constexpr Mat2 mat() const { return {a11, a12, a12, a22}; }
    constexpr double det() const { return a11 * a22 - a12 * a12; }
    constexpr double trace() const { return a11 + a22; }
    constexpr SymMat2 operator+(const SymMat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a22 + o.a22};
    }
    constexpr SymMat2 operator-(const SymMat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a22 - o.a22};
    }
    constexpr SymMat2 operator*(double c) const { return {c * a11, c * a12, c * a22}; }
    friend constexpr SymMat2 operator*(double c, const SymMat2& m) { return m * c; }
    double max_abs() const {
        return std::max(std::fabs(a11), std::max(std::fabs(a12), std::fabs(a22)));
    }
};

/// m * v * m^T, computed so the result is symmetric by construction.
SymMat2 congruence(const Mat2& m, const SymMat2& v);

/// Phase-space rotation by `theta` radians.
struct Rotation {
    double theta = 0.0;
    Mat2 mat() const;
};

/// Single-mode squeezer diag(e^s, e^-s).
struct Squeezer {
    double s = 0.0;
    Mat2 mat() const;
};

/// Singular value decomposition of a real 2x2 matrix in the form
///
///     m = O(theta1) * diag(x1, x2) * J * O(theta2),
///
/// with x1 >= x2 >= 0 and J = sigma_z when `conjugating` (det m < 0),
/// J = identity otherwise.
struct Svd2 {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    bool conjugating = false;

    Mat2 reconstruct() const;
};

/// O(theta) = [[cos t, -sin t], [sin t, cos t]].
Mat2 rotation_matrix(double theta);

/// diag(e^s, e^-s).
Mat2 squeeze_matrix(double s);

/// Wrap an angle into (-pi, pi].
double normalize_angle(double theta);

Svd2 svd2(const Mat2& m);

/// Spectral decomposition of a symmetric 2x2 matrix:
/// y = O(theta) * diag(l1, l2) * O(theta)^T with l1 >= l2 and
/// theta in (-pi/2, pi/2].
struct EigenSym2 {
    double theta = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
};
EigenSym2 eigen_sym2(const SymMat2& y);

/// Symplectic (Williamson) diagonalization of a positive-definite 2x2
/// matrix: y = O(theta_y) S(s_y) diag(y_sym, y_sym) S(s_y) O(theta_y)^T,
/// where y_sym = sqrt(det y) is the symplectic eigenvalue and
/// s_y = ln(l1/l2)/4 for the eigenvalues ordered largest first.
struct Williamson2 {
    double theta_y = 0.0;
    double s_y = 0.0;
    double y_sym = 0.0;
};

/// Throws RankDeficient when y is numerically singular; rank-deficient
/// noise matrices are handled by the limit constructions in decompose.
Williamson2 williamson2(const SymMat2& y);

/// A 2x2 matrix is symplectic iff |det m - 1| <= tol.
bool is_symplectic(const Mat2& m, double tol = kDefaultTol);

/// Numerical rank against kRankTol * max(1, largest singular value).
int rank_of(const Mat2& m);
int rank_of(const SymMat2& m);

}  // namespace gausschan
