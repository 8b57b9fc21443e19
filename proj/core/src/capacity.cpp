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

#include "gausschan/capacity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "gausschan/errors.hpp"

namespace gausschan {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

double g(double x) {
    if (x < 0.0) {
        if (x >= -1e-9) return 0.0;  // roundoff below the continuity limit
        throw DomainError("g: argument must be non-negative");
    }
    if (x == 0.0) return 0.0;
    if (x < 1e-8) return (x - x * std::log(x)) / kLn2;
    return (x + 1.0) * std::log1p(x) / kLn2 - x * std::log2(x);
}

double holevo_chi_g(double nu_bar, double nu) {
    if (nu < 0.5 - 1e-9) throw DomainError("holevo_chi_g: nu must be >= 1/2");
    return g(nu_bar - 0.5) - g(nu - 0.5);
}

double n_threshold(const FiducialParams& f) {
    if (f.tau == 0.0) throw DomainError("n_threshold: undefined for tau = 0");
    const double s2 = 2.0 * std::fabs(f.s);
    return 0.5 * (std::expm1(s2) + (2.0 * f.y / std::fabs(f.tau)) * std::sinh(s2));
}

double y_threshold_curve(double tau, double n_bar, double s) {
    if (s == 0.0) throw DomainError("y_threshold_curve: undefined at s = 0");
    if (tau == 0.0) throw DomainError("y_threshold_curve: undefined for tau = 0");
    const double s2 = 2.0 * std::fabs(s);
    const double num = std::exp(-s2) * (1.0 + 2.0 * n_bar) - 1.0;
    const double den = -std::expm1(-2.0 * s2);
    return std::fabs(tau) * num / den;
}

CapacityReport gaussian_capacity_closed_form(const FiducialParams& f, EnergyBudget e,
                                             double tol) {
    if (f.tau == 0.0) throw DomainError("gaussian_capacity_closed_form: tau must be nonzero");
    const double n_thr = n_threshold(f);
    if (e.n_bar < n_thr - tol) {
        throw BelowThreshold("gaussian_capacity_closed_form: n_bar below additivity threshold");
    }
    const double at = std::fabs(f.tau);
    const double edge = f.y + (at - 1.0) / 2.0;

    CapacityReport rep;
    rep.regime = CapacityRegime::ClosedForm;
    rep.n_thr = n_thr;
    rep.c_gauss = g(at * e.n_bar + f.y * std::cosh(2.0 * f.s) + (at - 1.0) / 2.0) - g(edge);

    const double shear = (f.y / at) * std::sinh(2.0 * f.s);
    rep.encoding.V_in = SymMat2::diagonal(0.5 * std::exp(2.0 * f.s), 0.5 * std::exp(-2.0 * f.s));
    const SymMat2 v_bar =
        SymMat2::diagonal(e.n_bar + 0.5 - shear, e.n_bar + 0.5 + shear);
    rep.encoding.V_mod = v_bar - rep.encoding.V_in;

    if (f.tau > 0.0) {
        rep.c_bar = upper_bound_cbar(f, e);
        rep.gap_bound = kBitsPerNat;
    }
    return rep;
}

namespace {

/// Objective evaluation for the one-shot search. Parameters are
/// (r, phi) for the pure input V_in = O(phi) diag(e^2r, e^-2r)/2 O(phi)^T
/// and the three symmetric entries of V_mod. Feasibility is restored by
/// clamping r, projecting V_mod onto the PSD cone, and rescaling it onto
/// the energy simplex.
struct OneShotObjective {
    Mat2 X;
    SymMat2 Y;
    double n_bar;
    double r_max;

    double operator()(const std::array<double, 5>& p, GaussianEncoding* enc = nullptr) const {
        const double r = std::clamp(p[0], -r_max, r_max);
        const Mat2 rot = rotation_matrix(p[1]);
        SymMat2 v_in = congruence(rot, SymMat2::diagonal(0.5 * std::exp(2.0 * r),
                                                         0.5 * std::exp(-2.0 * r)));
        SymMat2 v_mod{p[2], p[4], p[3]};
        EigenSym2 eig = eigen_sym2(v_mod);
        if (eig.l1 < 0.0 || eig.l2 < 0.0) {
            const Mat2 u = rotation_matrix(eig.theta);
            v_mod = congruence(u, SymMat2::diagonal(std::max(eig.l1, 0.0),
                                                    std::max(eig.l2, 0.0)));
        }
        const double budget = 2.0 * n_bar + 1.0 - v_in.trace();
        const double tr = v_mod.trace();
        if (tr > budget) {
            v_mod = v_mod * (budget > 0.0 && tr > 0.0 ? budget / tr : 0.0);
        }
        const double det_out = (congruence(X, v_in) + Y).det();
        const double det_mod = (congruence(X, v_in + v_mod) + Y).det();
        const double nu = std::sqrt(std::max(det_out, 0.25));
        const double nu_bar = std::sqrt(std::max(det_mod, 0.25));
        if (enc != nullptr) {
            enc->V_in = v_in;
            enc->V_mod = v_mod;
        }
        return g(nu_bar - 0.5) - g(nu - 0.5);
    }
};

/// Coordinate pattern search, best-of-poll, halving steps on failure.
double pattern_search(const OneShotObjective& f, std::array<double, 5>& p,
                      std::array<double, 5> step, int max_evals, double step_tol) {
    double fp = f(p);
    int evals = 1;
    while (evals < max_evals &&
           *std::max_element(step.begin(), step.end()) > step_tol) {
        double best = fp;
        std::array<double, 5> best_p = p;
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (double sgn : {1.0, -1.0}) {
                std::array<double, 5> q = p;
                q[i] += sgn * step[i];
                const double fq = f(q);
                ++evals;
                if (fq > best + 1e-15) {
                    best = fq;
                    best_p = q;
                }
            }
        }
        if (best > fp + 1e-15) {
            fp = best;
            p = best_p;
        } else {
            for (double& s : step) s *= 0.5;
        }
    }
    return fp;
}

}  // namespace

CapacityReport numerical_one_shot(const GaussianChannel& c, EnergyBudget e,
                                  const OneShotOptions& opts) {
    if (e.n_bar < 0.0) throw DomainError("numerical_one_shot: n_bar must be >= 0");
    CapacityReport rep;
    rep.regime = CapacityRegime::NumericalOneShot;
    rep.n_thr = rank_of(c.X) < 2 ? 0.0 : n_threshold(decompose_fiducial(c).fiducial);

    OneShotObjective obj;
    obj.X = c.X;
    obj.Y = c.Y;
    obj.n_bar = e.n_bar;
    obj.r_max = e.n_bar > 0.0 ? 0.5 * std::acosh(2.0 * e.n_bar + 1.0) : 0.0;

    const double energy = 2.0 * e.n_bar + 1.0;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    OptimizerDiagnostics diag;
    diag.starts = opts.starts;
    double best = -1.0;
    std::array<double, 5> best_p{};
    for (int k = 0; k < opts.starts; ++k) {
        std::array<double, 5> p;
        if (k == 0) {
            p = {0.0, 0.0, e.n_bar, e.n_bar, 0.0};
        } else {
            p = {obj.r_max * (2.0 * unit(rng) - 1.0), (unit(rng) - 0.5) * 3.141592653589793,
                 energy * unit(rng), energy * unit(rng), energy * (unit(rng) - 0.5)};
        }
        std::array<double, 5> step{0.3, 0.3, 0.3 * energy, 0.3 * energy, 0.3 * energy};
        const double val =
            pattern_search(obj, p, step, opts.max_evals_per_start, opts.step_tol);
        diag.local_optima.push_back(val);
        if (val > best) {
            best = val;
            best_p = p;
            diag.best_iter = k;
        }
    }
    rep.c_gauss = obj(best_p, &rep.encoding);
    rep.optimizer = std::move(diag);
    return rep;
}

CapacityReport capacity_of_channel(const GaussianChannel& c, EnergyBudget e,
                                   const CapacityOptions& opts) {
    if (e.n_bar < 0.0) throw DomainError("capacity_of_channel: n_bar must be >= 0");
    const FiducialDecomposition d = decompose_fiducial(c, opts.s_trunc);
    if (d.fiducial.tau == 0.0) {
        // Nothing of the input survives; zero capacity at any budget.
        CapacityReport rep;
        rep.c_gauss = 0.0;
        rep.regime = CapacityRegime::ClosedForm;
        rep.n_thr = 0.0;
        return rep;
    }
    const double n_thr = n_threshold(d.fiducial);
    if (e.n_bar >= n_thr - opts.tol) {
        return gaussian_capacity_closed_form(d.fiducial, e, opts.tol);
    }
    CapacityReport rep = numerical_one_shot(to_channel(d.fiducial, 1.0), e, opts.one_shot);
    rep.n_thr = n_thr;
    return rep;
}

double upper_bound_cbar(const FiducialParams& f, EnergyBudget e) {
    if (f.tau == 0.0) throw DomainError("upper_bound_cbar: undefined for tau = 0");
    if (e.n_bar < n_threshold(f) - kDefaultTol) {
        throw BelowThreshold("upper_bound_cbar: requires n_bar >= threshold");
    }
    const double sh2 = std::sinh(f.s) * std::sinh(f.s);
    // tau < 0 takes the variant with y -> -y (no additivity-gap
    // guarantee in that case).
    const double y = f.tau > 0.0 ? f.y : -f.y;
    return g((2.0 * f.tau * e.n_bar + (2.0 * y + 1.0 - f.tau) * sh2) / (2.0 * y + 1.0 + f.tau));
}

double upper_bound_cbar(const GaussianChannel& c, EnergyBudget e, const CapacityOptions& opts) {
    const FiducialDecomposition d = decompose_fiducial(c, opts.s_trunc);
    return upper_bound_cbar(d.fiducial, e);
}

double supplementary_bound(const GaussianChannel& c, EnergyBudget e, double b,
                           const CapacityOptions& opts) {
    if (b < 0.0) throw DomainError("supplementary_bound: b must be >= 0");
    const FiducialDecomposition d = decompose_fiducial(c, opts.s_trunc);
    const FiducialParams& f = d.fiducial;
    if (f.tau <= 0.0) throw DomainError("supplementary_bound: requires tau > 0");
    const double at = std::fabs(f.tau);
    return g(at * e.n_bar + f.y * std::cosh(2.0 * f.s) + (at - 1.0) / 2.0) - b;
}

}  // namespace gausschan
