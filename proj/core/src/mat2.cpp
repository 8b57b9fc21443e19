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

#include "gausschan/mat2.hpp"

#include <algorithm>
#include <numbers>

#include "gausschan/errors.hpp"

namespace gausschan {

namespace {
constexpr double kPi = std::numbers::pi;

double rank_threshold(double largest) { return kRankTol * std::max(1.0, largest); }
}  // namespace

SymMat2 congruence(const Mat2& m, const SymMat2& v) {
    // rows of m applied to v from both sides; a12 computed once.
    const Vec2 r1{m.a11, m.a12};
    const Vec2 r2{m.a21, m.a22};
    const Mat2 vm = v.mat();
    const Vec2 vr1 = vm * r1;
    const Vec2 vr2 = vm * r2;
    return {r1.x * vr1.x + r1.y * vr1.y, r1.x * vr2.x + r1.y * vr2.y,
            r2.x * vr2.x + r2.y * vr2.y};
}

Mat2 rotation_matrix(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, -s, s, c};
}

Mat2 squeeze_matrix(double s) {
    const double e = std::exp(s);
    return {e, 0.0, 0.0, 1.0 / e};
}

Mat2 Rotation::mat() const { return rotation_matrix(theta); }

Mat2 Squeezer::mat() const { return squeeze_matrix(s); }

double normalize_angle(double theta) {
    double t = std::remainder(theta, 2.0 * kPi);
    if (t <= -kPi) t += 2.0 * kPi;
    return t;
}

Mat2 Svd2::reconstruct() const {
    Mat2 core = Mat2::diagonal(x1, conjugating ? -x2 : x2);
    return rotation_matrix(theta1) * core * rotation_matrix(theta2);
}

Svd2 svd2(const Mat2& m) {
    // Split m into its rotation-like and reflection-like parts; each is a
    // scaled rotation, which diagonalizes in closed form.
    const double e = (m.a11 + m.a22) / 2.0;
    const double f = (m.a11 - m.a22) / 2.0;
    const double g = (m.a21 + m.a12) / 2.0;
    const double h = (m.a21 - m.a12) / 2.0;
    const double q = std::hypot(e, h);
    const double r = std::hypot(f, g);
    const double sum_angle = std::atan2(h, e);
    const double dif_angle = std::atan2(g, f);

    Svd2 out;
    out.x1 = q + r;
    out.conjugating = q < r;
    out.x2 = std::fabs(q - r);
    out.theta1 = normalize_angle((sum_angle + dif_angle) / 2.0);
    out.theta2 = normalize_angle((sum_angle - dif_angle) / 2.0);
    // Degenerate spectrum: fix the gauge by absorbing all rotation into
    // theta1.
    if (r <= 1e-14 * q) {
        out.theta1 = normalize_angle(sum_angle);
        out.theta2 = 0.0;
    } else if (q <= 1e-14 * r) {
        out.theta1 = normalize_angle(dif_angle);
        out.theta2 = 0.0;
    }
    return out;
}

EigenSym2 eigen_sym2(const SymMat2& y) {
    EigenSym2 out;
    const double mean = (y.a11 + y.a22) / 2.0;
    const double rad = std::hypot((y.a11 - y.a22) / 2.0, y.a12);
    out.l1 = mean + rad;
    // Small eigenvalue through the determinant avoids cancellation.
    out.l2 = out.l1 > 0.0 ? y.det() / out.l1 : mean - rad;
    double theta = std::atan2(out.l1 - y.a11, y.a12);
    if (theta > kPi / 2.0) theta -= kPi;
    if (theta <= -kPi / 2.0) theta += kPi;
    out.theta = theta;
    return out;
}

Williamson2 williamson2(const SymMat2& y) {
    const EigenSym2 eig = eigen_sym2(y);
    if (eig.l2 <= rank_threshold(std::fabs(eig.l1))) {
        throw RankDeficient("williamson2: matrix is numerically singular");
    }
    Williamson2 out;
    out.theta_y = eig.theta;
    out.y_sym = std::sqrt(eig.l1 * eig.l2);
    out.s_y = 0.25 * std::log(eig.l1 / eig.l2);
    return out;
}

bool is_symplectic(const Mat2& m, double tol) { return std::fabs(m.det() - 1.0) <= tol; }

int rank_of(const Mat2& m) {
    const Svd2 d = svd2(m);
    const double thr = rank_threshold(d.x1);
    return (d.x1 > thr ? 1 : 0) + (d.x2 > thr ? 1 : 0);
}

int rank_of(const SymMat2& m) {
    const EigenSym2 eig = eigen_sym2(m);
    const double big = std::max(std::fabs(eig.l1), std::fabs(eig.l2));
    const double thr = rank_threshold(big);
    return (std::fabs(eig.l1) > thr ? 1 : 0) + (std::fabs(eig.l2) > thr ? 1 : 0);
}

}  // namespace gausschan
