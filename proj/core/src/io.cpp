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

#include "gausschan/io.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "gausschan/errors.hpp"

namespace gausschan {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Compact dump with doubles rendered through format_double. nlohmann's
/// own dump uses shortest-round-trip notation, which is not what the
/// file formats pin down.
void dump_value(const ordered_json& j, std::string& out) {
    switch (j.type()) {
        case ordered_json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += ordered_json(it.key()).dump();
                out += ':';
                dump_value(it.value(), out);
            }
            out += '}';
            break;
        }
        case ordered_json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out += ',';
                dump_value(j[i], out);
            }
            out += ']';
            break;
        }
        case ordered_json::value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

std::string dump(const ordered_json& j) {
    std::string out;
    dump_value(j, out);
    return out;
}

ordered_json mat_json(const Mat2& m) {
    return ordered_json::array({ordered_json::array({m.a11, m.a12}),
                                ordered_json::array({m.a21, m.a22})});
}

ordered_json sym_json(const SymMat2& m) {
    return mat_json(m.mat());
}

int line_of_offset(std::string_view text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

ordered_json parse(std::string_view text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        std::ostringstream msg;
        msg << "line " << line_of_offset(text, err.byte > 0 ? err.byte - 1 : 0)
            << ": " << err.what();
        throw ParseError(msg.str());
    }
}

Mat2 mat_from(const ordered_json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2) {
        throw ParseError(std::string(what) + ": expected a 2x2 array");
    }
    Mat2 m;
    try {
        m.a11 = j[0][0].get<double>();
        m.a12 = j[0][1].get<double>();
        m.a21 = j[1][0].get<double>();
        m.a22 = j[1][1].get<double>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string(what) + ": entries must be numbers");
    }
    return m;
}

SymMat2 sym_from(const ordered_json& j, const char* what) {
    const Mat2 m = mat_from(j, what);
    const double scale = std::max(m.max_abs(), 1.0);
    if (std::fabs(m.a12 - m.a21) > 1e-9 * scale) {
        throw ParseError(std::string(what) + ": matrix must be symmetric");
    }
    return {m.a11, 0.5 * (m.a12 + m.a21), m.a22};
}

const ordered_json& field(const ordered_json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
    return *it;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_json(const GaussianChannel& c) {
    ordered_json j;
    j["X"] = mat_json(c.X);
    j["Y"] = sym_json(c.Y);
    j["delta"] = ordered_json::array({c.delta.x, c.delta.y});
    return dump(j);
}

GaussianChannel channel_from_json(std::string_view text, double tol) {
    const ordered_json j = parse(text);
    if (!j.is_object()) throw ParseError("channel: expected a JSON object");
    const Mat2 x = mat_from(field(j, "X"), "X");
    const SymMat2 y = sym_from(field(j, "Y"), "Y");
    Vec2 delta;
    if (j.contains("delta")) {
        const ordered_json& d = j["delta"];
        if (!d.is_array() || d.size() != 2) throw ParseError("delta: expected a 2-vector");
        delta = {d[0].get<double>(), d[1].get<double>()};
    }
    return new_channel(x, y, delta, tol);
}

namespace {
const char* limit_name(LimitKind k) {
    switch (k) {
        case LimitKind::Exact: return "exact";
        case LimitKind::B1: return "b1";
        case LimitKind::A2: return "a2";
    }
    return "exact";
}
}  // namespace

std::string to_json(const FiducialDecomposition& d) {
    ordered_json j;
    j["M"] = mat_json(d.M);
    j["theta"] = d.theta.theta;
    j["tau"] = d.fiducial.tau;
    j["y"] = d.fiducial.y;
    j["s"] = d.fiducial.s;
    j["limit"] = limit_name(d.limit);
    j["s_T"] = d.s_trunc;
    return dump(j);
}

FiducialDecomposition decomposition_from_json(std::string_view text) {
    const ordered_json j = parse(text);
    FiducialDecomposition d;
    d.M = mat_from(field(j, "M"), "M");
    d.theta.theta = field(j, "theta").get<double>();
    d.fiducial.tau = field(j, "tau").get<double>();
    d.fiducial.y = field(j, "y").get<double>();
    d.fiducial.s = field(j, "s").get<double>();
    const std::string limit = field(j, "limit").get<std::string>();
    if (limit == "exact") {
        d.limit = LimitKind::Exact;
    } else if (limit == "b1") {
        d.limit = LimitKind::B1;
    } else if (limit == "a2") {
        d.limit = LimitKind::A2;
    } else {
        throw ParseError("limit: expected \"exact\", \"b1\" or \"a2\"");
    }
    d.s_trunc = field(j, "s_T").get<double>();
    return d;
}

std::string to_json(const CapacityReport& rep) {
    ordered_json j;
    j["c_gauss"] = rep.c_gauss;
    j["regime"] = rep.regime == CapacityRegime::ClosedForm ? "closed_form" : "numerical";
    j["n_thr"] = rep.n_thr;
    if (rep.c_bar.has_value()) {
        j["c_bar"] = *rep.c_bar;
    } else {
        j["c_bar"] = nullptr;
    }
    j["encoding"]["V_in"] = sym_json(rep.encoding.V_in);
    j["encoding"]["V_mod"] = sym_json(rep.encoding.V_mod);
    if (rep.optimizer.has_value()) {
        j["optimizer"]["starts"] = rep.optimizer->starts;
        j["optimizer"]["best_iter"] = rep.optimizer->best_iter;
    } else {
        j["optimizer"] = nullptr;
    }
    return dump(j);
}

std::string to_json(const OpticalNetwork& net) {
    ordered_json j;
    j["modes"] = net.n_modes;
    j["ancillas"] = ordered_json::array();
    for (const AncillaInit& a : net.ancillas) {
        ordered_json entry;
        entry["mode"] = a.mode;
        switch (a.kind) {
            case AncillaInit::Kind::Vacuum:
                entry["kind"] = "vacuum";
                break;
            case AncillaInit::Kind::Thermal:
                entry["kind"] = "thermal";
                entry["y"] = a.param;
                break;
            case AncillaInit::Kind::TmsPair:
                entry["kind"] = "tms";
                entry["G"] = a.param;
                entry["partner"] = a.partner;
                break;
        }
        j["ancillas"].push_back(entry);
    }
    j["gates"] = ordered_json::array();
    for (const Gate& gate : net.gates) {
        ordered_json entry;
        switch (gate.kind) {
            case Gate::Kind::BeamSplitter:
                entry["kind"] = "bs";
                entry["T"] = gate.param;
                entry["modes"] = ordered_json::array({gate.mode_a, gate.mode_b});
                break;
            case Gate::Kind::TwoModeSqueeze:
                entry["kind"] = "tms";
                entry["G"] = gate.param;
                entry["modes"] = ordered_json::array({gate.mode_a, gate.mode_b});
                break;
            case Gate::Kind::PhaseShift:
                entry["kind"] = "phase";
                entry["theta"] = gate.param;
                entry["mode"] = gate.mode_a;
                break;
            case Gate::Kind::SingleSqueeze:
                entry["kind"] = "squeeze";
                entry["s"] = gate.param;
                entry["mode"] = gate.mode_a;
                break;
            case Gate::Kind::CvCnot:
                entry["kind"] = "cvcnot";
                entry["modes"] = ordered_json::array({gate.mode_a, gate.mode_b});
                break;
        }
        j["gates"].push_back(entry);
    }
    j["keep"] = net.keep_mode;
    return dump(j);
}

OpticalNetwork network_from_json(std::string_view text) {
    const ordered_json j = parse(text);
    OpticalNetwork net;
    net.n_modes = field(j, "modes").get<int>();
    net.keep_mode = field(j, "keep").get<int>();
    for (const ordered_json& entry : field(j, "ancillas")) {
        AncillaInit a;
        a.mode = field(entry, "mode").get<int>();
        const std::string kind = field(entry, "kind").get<std::string>();
        if (kind == "vacuum") {
            a.kind = AncillaInit::Kind::Vacuum;
        } else if (kind == "thermal") {
            a.kind = AncillaInit::Kind::Thermal;
            a.param = field(entry, "y").get<double>();
        } else if (kind == "tms") {
            a.kind = AncillaInit::Kind::TmsPair;
            a.param = field(entry, "G").get<double>();
            a.partner = field(entry, "partner").get<int>();
        } else {
            std::ostringstream msg;
            msg << "line " << line_of_offset(text, text.find(kind))
                << ": unknown ancilla kind \"" << kind << "\"";
            throw ParseError(msg.str());
        }
        net.ancillas.push_back(a);
    }
    for (const ordered_json& entry : field(j, "gates")) {
        const std::string kind = field(entry, "kind").get<std::string>();
        Gate gate;
        auto modes = [&entry]() -> std::pair<int, int> {
            const ordered_json& m = field(entry, "modes");
            if (!m.is_array() || m.size() != 2) throw ParseError("gate: modes must be a pair");
            return {m[0].get<int>(), m[1].get<int>()};
        };
        if (kind == "bs") {
            auto [a, b] = modes();
            gate = Gate::beam_splitter(field(entry, "T").get<double>(), a, b);
        } else if (kind == "tms") {
            auto [a, b] = modes();
            gate = Gate::two_mode_squeeze(field(entry, "G").get<double>(), a, b);
        } else if (kind == "phase") {
            gate = Gate::phase_shift(field(entry, "theta").get<double>(),
                                     field(entry, "mode").get<int>());
        } else if (kind == "squeeze") {
            gate = Gate::single_squeeze(field(entry, "s").get<double>(),
                                        field(entry, "mode").get<int>());
        } else if (kind == "cvcnot") {
            auto [a, b] = modes();
            gate = Gate::cv_cnot(a, b);
        } else {
            std::ostringstream msg;
            msg << "line " << line_of_offset(text, text.find(kind)) << ": unknown gate kind \""
                << kind << "\"";
            throw ParseError(msg.str());
        }
        net.gates.push_back(gate);
    }
    return net;
}

std::string classify_json(const GaussianChannel& c, const CanonicalClass& cls, bool eb) {
    ordered_json j;
    j["class"] = tag_name(cls.tag);
    j["tau"] = c.tau;
    j["y"] = c.y;
    j["T"] = cls.T;
    j["G"] = cls.G;
    j["entanglement_breaking"] = eb;
    return dump(j);
}

}  // namespace gausschan
