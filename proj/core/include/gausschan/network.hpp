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

#include <Eigen/Dense>
#include <vector>

#include "gausschan/channel.hpp"
#include "gausschan/decompose.hpp"

namespace gausschan {

/// Joint Gaussian state of n modes in (q1, p1, ..., qn, pn) ordering.
struct MultiModeState {
    Eigen::VectorXd alpha;  ///< 2n coherent vector
    Eigen::MatrixXd V;      ///< 2n x 2n covariance matrix

    int modes() const { return static_cast<int>(alpha.size()) / 2; }
};

/// Block-diagonal symplectic form of n modes.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Positive spectrum of i Omega V, ascending. All entries are >= 1/2 for
/// a valid covariance matrix.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& V);

/// One element of an optical circuit.
struct Gate {
    enum class Kind { PhaseShift, SingleSqueeze, BeamSplitter, TwoModeSqueeze, CvCnot };

    Kind kind = Kind::PhaseShift;
    double param = 0.0;  ///< theta | s | T | G (unused for CvCnot)
    int mode_a = 0;
    int mode_b = -1;     ///< second mode; target mode for CvCnot

    static Gate phase_shift(double theta, int mode);
    static Gate single_squeeze(double s, int mode);
    static Gate beam_splitter(double T, int mode_a, int mode_b);
    static Gate two_mode_squeeze(double G, int mode_a, int mode_b);
    static Gate cv_cnot(int control, int target);
};

/// The 2n x 2n symplectic matrix of a gate embedded in an n-mode
/// register.
Eigen::MatrixXd gate_matrix(const Gate& gate, int n_modes);

/// Initial condition of one non-input mode.
struct AncillaInit {
    enum class Kind { Vacuum, Thermal, TmsPair };
    Kind kind = Kind::Vacuum;
    int mode = 0;
    double param = 0.0;  ///< thermal noise y, or two-mode-squeezer gain G
    int partner = -1;    ///< second mode of a TmsPair
};

/// Ordered gate list with declared ancillas; exactly one mode is left
/// uninitialized and receives the input state. After the gates run, all
/// modes except keep_mode are traced out.
struct OpticalNetwork {
    int n_modes = 1;
    std::vector<AncillaInit> ancillas;
    std::vector<Gate> gates;
    int keep_mode = 0;

    /// The unique mode with no ancilla declaration.
    int input_mode() const;
};

/// Structural validation; throws ModeIndexOutOfRange / DomainError.
void validate(const OpticalNetwork& net);

/// Joint state right before tracing (for inspection and tests).
MultiModeState run_joint(const OpticalNetwork& net, const GaussianState& input);

/// Propagate the input through the network and trace down to keep_mode.
GaussianState run(const OpticalNetwork& net, const GaussianState& input);

/// Recover the affine moment map (X, Y, delta) of a network by probing
/// with basis coherent vectors and covariance perturbations, then verify
/// it on random states. Throws NotAffine when verification fails. The
/// largest verification residual observed is reported through
/// `residual_out` when given.
GaussianChannel extract_channel(const OpticalNetwork& net, double tol = 1e-10,
                                double* residual_out = nullptr);

/// Beam splitter + two-mode squeezer realization of the thermal channel
/// at (tau, y); the phase-conjugating branch keeps the idler output.
OpticalNetwork build_thermal(double tau, double y, double tol = kDefaultTol);

/// Thermal core dressed by an input anti-squeezer and an output squeezer
/// realizing the fiducial channel at (tau, y, s).
OpticalNetwork build_fiducial(const FiducialParams& f, double tol = kDefaultTol);

/// CV-CNOT whose target is one arm of a two-mode squeezed vacuum at gain
/// G = y + 1/2; keeping the target realizes the classical-signal
/// channel, X = diag(1, 0), Y = y I. Requires y >= 1/2.
OpticalNetwork build_classical_signal(double y, double tol = kDefaultTol);

/// CV-CNOT with a vacuum target; keeping the control realizes the
/// single-quadrature classical noise channel, X = I, Y = diag(0, 1/2).
OpticalNetwork build_single_quadrature_noise();

}  // namespace gausschan
