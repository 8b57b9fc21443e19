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

#include "gausschan/channel.hpp"

#include <cmath>
#include <sstream>

#include "gausschan/errors.hpp"

namespace gausschan {

double GaussianState::mean_photon_number() const {
    return (V.trace() + alpha.norm_sq()) / 2.0 - 0.5;
}

bool is_valid_state(const GaussianState& st, double tol) {
    const EigenSym2 eig = eigen_sym2(st.V);
    return eig.l2 >= -tol && st.V.det() >= 0.25 - tol;
}

GaussianChannel new_channel(const Mat2& X, const SymMat2& Y, const Vec2& delta, double tol) {
    if (!X.is_finite() || !Y.mat().is_finite() || !std::isfinite(delta.x) ||
        !std::isfinite(delta.y)) {
        throw DomainError("new_channel: matrix entries must be finite");
    }
    const EigenSym2 eig = eigen_sym2(Y);
    if (eig.l2 < -tol) {
        std::ostringstream msg;
        msg << "new_channel: Y has negative eigenvalue " << eig.l2;
        throw NotPositive(msg.str());
    }
    GaussianChannel c;
    c.X = X;
    c.Y = Y;
    c.delta = delta;
    c.tau = X.det();
    c.y = std::sqrt(std::max(Y.det(), 0.0));
    const double y_min = std::fabs(c.tau - 1.0) / 2.0;
    if (c.y < y_min - tol) {
        std::ostringstream msg;
        msg << "new_channel: not a quantum channel, y >= |tau-1|/2 requires y >= " << y_min
            << " but y = " << c.y;
        throw NotPhysical(msg.str());
    }
    return c;
}

bool is_entanglement_breaking(const GaussianChannel& c, double tol) {
    return c.y >= (std::fabs(c.tau) + 1.0) / 2.0 - tol;
}

const char* tag_name(CanonicalTag tag) {
    switch (tag) {
        case CanonicalTag::A1: return "A1";
        case CanonicalTag::A2: return "A2";
        case CanonicalTag::B1: return "B1";
        case CanonicalTag::B2: return "B2";
        case CanonicalTag::CL: return "CL";
        case CanonicalTag::CA: return "CA";
        case CanonicalTag::D: return "D";
        case CanonicalTag::Id: return "Id";
    }
    return "?";
}

ThermalGains table_gains(double tau, double y) {
    ThermalGains tg;
    if (tau >= 0.0) {
        tg.G = y + (tau + 1.0) / 2.0;
        tg.T = tg.G > 0.0 ? tau / tg.G : 0.0;
    } else {
        tg.G = y + (-tau + 1.0) / 2.0;
        tg.T = -tau / (tg.G - 1.0);
    }
    return tg;
}

CanonicalClass classify(const GaussianChannel& c, double tol) {
    CanonicalClass out;
    const ThermalGains tg = table_gains(c.tau, c.y);
    out.T = tg.T;
    out.G = tg.G;
    const int rx = rank_of(c.X);
    const int ry = rank_of(c.Y);
    if (rx == 0) {
        out.tag = CanonicalTag::A1;
    } else if (rx == 1) {
        out.tag = CanonicalTag::A2;
    } else if (ry == 0) {
        out.tag = CanonicalTag::Id;  // y = 0 forces tau = 1
    } else if (ry == 1) {
        out.tag = CanonicalTag::B1;
    } else if (std::fabs(c.tau - 1.0) <= tol) {
        out.tag = CanonicalTag::B2;
    } else if (c.tau < 0.0) {
        out.tag = CanonicalTag::D;
    } else if (c.tau < 1.0) {
        out.tag = CanonicalTag::CL;
    } else {
        out.tag = CanonicalTag::CA;
    }
    return out;
}

GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first) {
    const Mat2 X = second.X * first.X;
    const SymMat2 Y = congruence(second.X, first.Y) + second.Y;
    const Vec2 delta = second.X * first.delta + second.delta;
    return new_channel(X, Y, delta);
}

GaussianState apply(const GaussianChannel& c, const GaussianState& st) {
    GaussianState out;
    out.alpha = c.X * st.alpha + c.delta;
    out.V = congruence(c.X, st.V) + c.Y;
    return out;
}

double symplectic_eigenvalue(const SymMat2& V, double tol) {
    const double d = V.det();
    if (d < 0.25 - tol || V.a11 <= 0.0 || V.a22 <= 0.0) {
        throw NotAState("symplectic_eigenvalue: det V >= 1/4 violated");
    }
    return std::sqrt(d);
}

GaussianChannel thermal_channel(double tau, double y, double tol) {
    const double r = std::sqrt(std::fabs(tau));
    const Mat2 X = Mat2::diagonal(r, tau < 0.0 ? -r : r);
    return new_channel(X, SymMat2::isotropic(y), {}, tol);
}

}  // namespace gausschan
