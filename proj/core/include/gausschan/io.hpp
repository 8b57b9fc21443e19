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

#include <string>
#include <string_view>

#include "gausschan/capacity.hpp"
#include "gausschan/channel.hpp"
#include "gausschan/decompose.hpp"
#include "gausschan/network.hpp"

namespace gausschan {

/// %.17g rendering; every double round-trips exactly.
std::string format_double(double v);

/// {"X": [[..],[..]], "Y": [[..],[..]], "delta": [..]}, row-major.
std::string to_json(const GaussianChannel& c);
GaussianChannel channel_from_json(std::string_view text, double tol = kDefaultTol);

/// {"M": [[..],[..]], "theta": t, "tau": ., "y": ., "s": .,
///  "limit": "exact"|"b1"|"a2", "s_T": .}
std::string to_json(const FiducialDecomposition& d);
FiducialDecomposition decomposition_from_json(std::string_view text);

/// {"c_gauss": ., "regime": "closed_form"|"numerical", "n_thr": .,
///  "c_bar": .|null, "encoding": {"V_in": [[..]], "V_mod": [[..]]},
///  "optimizer": {"starts": n, "best_iter": k}|null}
std::string to_json(const CapacityReport& rep);

/// {"modes": n, "ancillas": [...], "gates": [...], "keep": k}. Gate
/// kinds: "bs" (T), "tms" (G), "phase" (theta), "squeeze" (s), "cvcnot";
/// ancilla kinds: "vacuum", "thermal" (y), "tms" (G, partner).
std::string to_json(const OpticalNetwork& net);
OpticalNetwork network_from_json(std::string_view text);

/// Classification record used by the command-line frontend:
/// {"class": tag, "tau": ., "y": ., "T": ., "G": .,
///  "entanglement_breaking": bool}.
std::string classify_json(const GaussianChannel& c, const CanonicalClass& cls, bool eb);

}  // namespace gausschan
