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

#include "gausschan/network.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gausschan/errors.hpp"

namespace gausschan {

namespace {

void check_mode(int mode, int n_modes, const char* what) {
    if (mode < 0 || mode >= n_modes) {
        std::ostringstream msg;
        msg << what << ": mode " << mode << " outside register of " << n_modes;
        throw ModeIndexOutOfRange(msg.str());
    }
}

void set_block(Eigen::MatrixXd& m, int i, int j, const Mat2& b) {
    m(2 * i, 2 * j) = b.a11;
    m(2 * i, 2 * j + 1) = b.a12;
    m(2 * i + 1, 2 * j) = b.a21;
    m(2 * i + 1, 2 * j + 1) = b.a22;
}

}  // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& V) {
    const int n = static_cast<int>(V.rows()) / 2;
    // sqrt(V) Omega sqrt(V) is skew-symmetric with spectrum {±i nu_k};
    // its Gram matrix is symmetric with eigenvalues nu_k^2, twice each.
    // Symmetric solvers stay accurate on the clustered vacuum spectrum.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> root_solver(V);
    const Eigen::MatrixXd root = root_solver.operatorSqrt();
    const Eigen::MatrixXd k = root * symplectic_form(n) * root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_solver(k.transpose() * k);
    std::vector<double> nus;
    for (int i = 0; i < n; ++i) {
        const double pair_mean =
            0.5 * (gram_solver.eigenvalues()(2 * i) + gram_solver.eigenvalues()(2 * i + 1));
        nus.push_back(std::sqrt(std::max(pair_mean, 0.0)));
    }
    std::sort(nus.begin(), nus.end());
    return nus;
}

Gate Gate::phase_shift(double theta, int mode) { return {Kind::PhaseShift, theta, mode, -1}; }
Gate Gate::single_squeeze(double s, int mode) { return {Kind::SingleSqueeze, s, mode, -1}; }
Gate Gate::beam_splitter(double T, int a, int b) { return {Kind::BeamSplitter, T, a, b}; }
Gate Gate::two_mode_squeeze(double G, int a, int b) { return {Kind::TwoModeSqueeze, G, a, b}; }
Gate Gate::cv_cnot(int control, int target) { return {Kind::CvCnot, 0.0, control, target}; }

Eigen::MatrixXd gate_matrix(const Gate& gate, int n_modes) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    check_mode(gate.mode_a, n_modes, "gate");
    const bool two_mode = gate.kind == Gate::Kind::BeamSplitter ||
                          gate.kind == Gate::Kind::TwoModeSqueeze ||
                          gate.kind == Gate::Kind::CvCnot;
    if (two_mode) {
        check_mode(gate.mode_b, n_modes, "gate");
        if (gate.mode_a == gate.mode_b) {
            throw ModeIndexOutOfRange("gate: two-mode gate needs distinct modes");
        }
    }
    const int i = gate.mode_a;
    const int j = gate.mode_b;
    switch (gate.kind) {
        case Gate::Kind::PhaseShift:
            set_block(s, i, i, rotation_matrix(gate.param));
            break;
        case Gate::Kind::SingleSqueeze:
            set_block(s, i, i, squeeze_matrix(gate.param));
            break;
        case Gate::Kind::BeamSplitter: {
            if (gate.param < 0.0 || gate.param > 1.0) {
                throw DomainError("beam splitter: T must lie in [0, 1]");
            }
            const double t = std::sqrt(gate.param);
            const double r = std::sqrt(1.0 - gate.param);
            set_block(s, i, i, Mat2::identity() * t);
            set_block(s, i, j, Mat2::identity() * r);
            set_block(s, j, i, Mat2::identity() * -r);
            set_block(s, j, j, Mat2::identity() * t);
            break;
        }
        case Gate::Kind::TwoModeSqueeze: {
            if (gate.param < 1.0) throw DomainError("two-mode squeezer: G must be >= 1");
            const double cg = std::sqrt(gate.param);
            const double sg = std::sqrt(gate.param - 1.0);
            const Mat2 sz = Mat2::diagonal(1.0, -1.0);
            set_block(s, i, i, Mat2::identity() * cg);
            set_block(s, i, j, sz * sg);
            set_block(s, j, i, sz * sg);
            set_block(s, j, j, Mat2::identity() * cg);
            break;
        }
        case Gate::Kind::CvCnot:
            // q_target += q_control, p_control -= p_target.
            s(2 * j, 2 * i) = 1.0;
            s(2 * i + 1, 2 * j + 1) = -1.0;
            break;
    }
    return s;
}

int OpticalNetwork::input_mode() const {
    std::vector<bool> init(n_modes, false);
    for (const AncillaInit& a : ancillas) {
        if (a.mode >= 0 && a.mode < n_modes) init[a.mode] = true;
        if (a.kind == AncillaInit::Kind::TmsPair && a.partner >= 0 && a.partner < n_modes) {
            init[a.partner] = true;
        }
    }
    for (int k = 0; k < n_modes; ++k) {
        if (!init[k]) return k;
    }
    return -1;
}

void validate(const OpticalNetwork& net) {
    if (net.n_modes < 1) throw DomainError("network: needs at least one mode");
    check_mode(net.keep_mode, net.n_modes, "network keep");
    std::vector<int> count(net.n_modes, 0);
    for (const AncillaInit& a : net.ancillas) {
        check_mode(a.mode, net.n_modes, "ancilla");
        ++count[a.mode];
        if (a.kind == AncillaInit::Kind::TmsPair) {
            check_mode(a.partner, net.n_modes, "ancilla partner");
            if (a.partner == a.mode) throw DomainError("ancilla: tms pair needs two modes");
            ++count[a.partner];
        }
        if (a.kind == AncillaInit::Kind::Thermal && a.param < 0.5 - 1e-12) {
            throw DomainError("ancilla: thermal noise y must be >= 1/2");
        }
        if (a.kind == AncillaInit::Kind::TmsPair && a.param < 1.0) {
            throw DomainError("ancilla: tms gain G must be >= 1");
        }
    }
    int uninitialized = 0;
    for (int k = 0; k < net.n_modes; ++k) {
        if (count[k] > 1) throw DomainError("ancilla: mode initialized more than once");
        if (count[k] == 0) ++uninitialized;
    }
    if (uninitialized != 1) {
        throw DomainError("network: exactly one mode must be left for the input");
    }
    for (const Gate& gate : net.gates) {
        gate_matrix(gate, net.n_modes);  // throws on bad modes or parameters
    }
}

MultiModeState run_joint(const OpticalNetwork& net, const GaussianState& input) {
    validate(net);
    const int n = net.n_modes;
    MultiModeState st;
    st.alpha = Eigen::VectorXd::Zero(2 * n);
    st.V = Eigen::MatrixXd::Zero(2 * n, 2 * n);

    const int in = net.input_mode();
    st.alpha(2 * in) = input.alpha.x;
    st.alpha(2 * in + 1) = input.alpha.y;
    set_block(st.V, in, in, input.V.mat());
    for (const AncillaInit& a : net.ancillas) {
        switch (a.kind) {
            case AncillaInit::Kind::Vacuum:
                set_block(st.V, a.mode, a.mode, Mat2::identity() * 0.5);
                break;
            case AncillaInit::Kind::Thermal:
                set_block(st.V, a.mode, a.mode, Mat2::identity() * a.param);
                break;
            case AncillaInit::Kind::TmsPair: {
                const double d = a.param - 0.5;
                const Mat2 cross = Mat2::diagonal(1.0, -1.0) *
                                   std::sqrt(a.param * (a.param - 1.0));
                set_block(st.V, a.mode, a.mode, Mat2::identity() * d);
                set_block(st.V, a.partner, a.partner, Mat2::identity() * d);
                set_block(st.V, a.mode, a.partner, cross);
                set_block(st.V, a.partner, a.mode, cross);
                break;
            }
        }
    }
    for (const Gate& gate : net.gates) {
        const Eigen::MatrixXd s = gate_matrix(gate, n);
        st.alpha = s * st.alpha;
        st.V = s * st.V * s.transpose();
    }
    return st;
}

GaussianState run(const OpticalNetwork& net, const GaussianState& input) {
    const MultiModeState joint = run_joint(net, input);
    const int k = net.keep_mode;
    GaussianState out;
    out.alpha = {joint.alpha(2 * k), joint.alpha(2 * k + 1)};
    // Partial trace of a Gaussian state: keep the block of the surviving
    // mode.
    out.V = {joint.V(2 * k, 2 * k),
             0.5 * (joint.V(2 * k, 2 * k + 1) + joint.V(2 * k + 1, 2 * k)),
             joint.V(2 * k + 1, 2 * k + 1)};
    return out;
}

GaussianChannel extract_channel(const OpticalNetwork& net, double tol, double* residual_out) {
    const GaussianState vacuum{{0.0, 0.0}, SymMat2::isotropic(0.5)};
    const GaussianState base = run(net, vacuum);
    const Vec2 delta = base.alpha;

    const GaussianState ex = run(net, {{1.0, 0.0}, SymMat2::isotropic(0.5)});
    const GaussianState ey = run(net, {{0.0, 1.0}, SymMat2::isotropic(0.5)});
    Mat2 X;
    X.a11 = ex.alpha.x - delta.x;
    X.a21 = ex.alpha.y - delta.y;
    X.a12 = ey.alpha.x - delta.x;
    X.a22 = ey.alpha.y - delta.y;
    const SymMat2 Y = base.V - congruence(X, SymMat2::isotropic(0.5));

    double worst = 0.0;
    // Covariance probes double-check linearity of the second-moment map.
    const SymMat2 probes[] = {SymMat2::diagonal(1.0, 0.0), SymMat2::diagonal(0.0, 1.0),
                              SymMat2{0.0, 0.5, 0.0}};
    for (const SymMat2& e : probes) {
        const GaussianState out = run(net, {{0.0, 0.0}, SymMat2::isotropic(0.5) + e});
        const SymMat2 diff = out.V - base.V - congruence(X, e);
        worst = std::max(worst, diff.max_abs());
        if (diff.max_abs() > tol) {
            throw NotAffine("extract_channel: covariance probes are inconsistent");
        }
    }
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        GaussianState st;
        st.alpha = {4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0};
        const Mat2 rot = rotation_matrix(3.14 * (unit(rng) - 0.5));
        st.V = congruence(rot, SymMat2::diagonal(0.5 + 2.5 * unit(rng), 0.5 + 2.5 * unit(rng)));
        const GaussianState out = run(net, st);
        const SymMat2 dv = out.V - (congruence(X, st.V) + Y);
        const Vec2 da = out.alpha - (X * st.alpha + delta);
        worst = std::max({worst, dv.max_abs(), std::fabs(da.x), std::fabs(da.y)});
        if (dv.max_abs() > tol || std::max(std::fabs(da.x), std::fabs(da.y)) > tol) {
            throw NotAffine("extract_channel: map is not affine on random states");
        }
    }
    if (residual_out != nullptr) *residual_out = worst;
    return new_channel(X, Y, delta);
}

OpticalNetwork build_thermal(double tau, double y, double tol) {
    if (y < std::fabs(tau - 1.0) / 2.0 - tol) {
        throw DomainError("build_thermal: (tau, y) is not a physical channel");
    }
    const ThermalGains tg = table_gains(tau, y);
    OpticalNetwork net;
    net.n_modes = 3;
    net.ancillas = {{AncillaInit::Kind::Vacuum, 1, 0.0, -1},
                    {AncillaInit::Kind::Vacuum, 2, 0.0, -1}};
    if (std::fabs(tg.T - 1.0) > 1e-15) {
        net.gates.push_back(Gate::beam_splitter(tg.T, 0, 1));
    }
    if (std::fabs(tg.G - 1.0) > 1e-15) {
        net.gates.push_back(Gate::two_mode_squeeze(tg.G, 0, 2));
    }
    net.keep_mode = tau < 0.0 ? 2 : 0;
    return net;
}

OpticalNetwork build_fiducial(const FiducialParams& f, double tol) {
    if (f.tau == 0.0) throw DomainError("build_fiducial: requires tau != 0");
    OpticalNetwork net = build_thermal(f.tau, f.y, tol);
    if (f.s != 0.0) {
        net.gates.insert(net.gates.begin(), Gate::single_squeeze(-f.s, 0));
        net.gates.push_back(Gate::single_squeeze(f.s, net.keep_mode));
    }
    return net;
}

OpticalNetwork build_classical_signal(double y, double tol) {
    if (y < 0.5 - tol) throw DomainError("build_classical_signal: requires y >= 1/2");
    const double gain = y + 0.5;
    OpticalNetwork net;
    if (gain <= 1.0 + 1e-15) {
        net.n_modes = 2;
        net.ancillas = {{AncillaInit::Kind::Vacuum, 1, 0.0, -1}};
    } else {
        net.n_modes = 3;
        net.ancillas = {{AncillaInit::Kind::TmsPair, 1, gain, 2}};
    }
    net.gates = {Gate::cv_cnot(0, 1)};
    net.keep_mode = 1;
    return net;
}

OpticalNetwork build_single_quadrature_noise() {
    OpticalNetwork net;
    net.n_modes = 2;
    net.ancillas = {{AncillaInit::Kind::Vacuum, 1, 0.0, -1}};
    net.gates = {Gate::cv_cnot(0, 1)};
    net.keep_mode = 0;
    return net;
}

}  // namespace gausschan
