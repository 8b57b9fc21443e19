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

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "gausschan/capacity.hpp"
#include "gausschan/channel.hpp"
#include "gausschan/decompose.hpp"
#include "gausschan/errors.hpp"
#include "gausschan/io.hpp"
#include "gausschan/network.hpp"

namespace {

using namespace gausschan;

struct CommonOpts {
    std::string x_text;
    std::string y_text;
    std::string delta_text;
    std::string channel_file;
    double tol = kDefaultTol;
    double s_trunc = 10.0;
    std::uint64_t seed = 12345;
    double n_bar = 0.0;
    std::string format = "json";
};

double env_tolerance() {
    if (const char* env = std::getenv("GAUSSCHAN_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0.0) return v;
        } catch (...) {
            // fall through to the default
        }
    }
    return kDefaultTol;
}

void add_channel_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--x", opts.x_text, "X matrix as a JSON 2x2 array");
    cmd->add_option("--y", opts.y_text, "Y matrix as a JSON 2x2 array");
    cmd->add_option("--delta", opts.delta_text, "displacement as a JSON 2-vector");
    cmd->add_option("--channel", opts.channel_file, "channel description file (JSON)");
    cmd->add_option("--tol", opts.tol, "numeric tolerance (env GAUSSCHAN_TOL)")
        ->capture_default_str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

GaussianChannel load_channel(const CommonOpts& opts) {
    const bool inline_given = !opts.x_text.empty() || !opts.y_text.empty();
    if (!opts.channel_file.empty() && inline_given) {
        throw ParseError("give either --channel or --x/--y, not both");
    }
    if (!opts.channel_file.empty()) {
        return channel_from_json(read_file(opts.channel_file), opts.tol);
    }
    if (opts.x_text.empty() || opts.y_text.empty()) {
        throw ParseError("a channel needs --x and --y (or --channel FILE)");
    }
    std::string doc = "{\"X\":" + opts.x_text + ",\"Y\":" + opts.y_text;
    if (!opts.delta_text.empty()) doc += ",\"delta\":" + opts.delta_text;
    doc += "}";
    return channel_from_json(doc, opts.tol);
}

void flatten(const nlohmann::ordered_json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "." + std::to_string(i), out);
        }
    } else if (j.is_number_float()) {
        out << prefix << "," << format_double(j.get<double>()) << "\n";
    } else {
        out << prefix << "," << j.dump() << "\n";
    }
}

void emit(const std::string& json_text, const std::string& format) {
    if (format == "csv") {
        flatten(nlohmann::ordered_json::parse(json_text), "", std::cout);
    } else {
        std::cout << json_text << "\n";
    }
}

/// Append extra fields to a serialized JSON object.
std::string with_field(std::string json_text, const std::string& key, const std::string& raw) {
    json_text.pop_back();
    return json_text + ",\"" + key + "\":" + raw + "}";
}

int run_cli(int argc, char** argv) {
    CLI::App app{"single-mode Gaussian channel toolbox"};
    app.require_subcommand(1);
    CommonOpts opts;
    opts.tol = env_tolerance();

    auto* classify_cmd = app.add_subcommand("classify", "canonical class of a channel");
    add_channel_options(classify_cmd, opts);
    classify_cmd->add_option("--format", opts.format, "json|csv");
    classify_cmd->callback([&]() {
        const GaussianChannel c = load_channel(opts);
        const CanonicalClass cls = classify(c, opts.tol);
        emit(classify_json(c, cls, is_entanglement_breaking(c, opts.tol)), opts.format);
    });

    bool verify = false;
    auto* decompose_cmd = app.add_subcommand("decompose", "fiducial factorization");
    add_channel_options(decompose_cmd, opts);
    decompose_cmd->add_option("--st", opts.s_trunc, "truncation squeezing for limit cases")
        ->capture_default_str();
    decompose_cmd->add_flag("--verify", verify, "recompute the reconstruction residual");
    decompose_cmd->add_option("--format", opts.format, "json|csv");
    decompose_cmd->callback([&]() {
        const GaussianChannel c = load_channel(opts);
        const FiducialDecomposition d = decompose_fiducial(c, opts.s_trunc);
        std::string out = to_json(d);
        if (verify) {
            out = with_field(out, "residual", format_double(reconstruction_residual(d, c)));
        }
        emit(out, opts.format);
    });

    bool force_numerical = false;
    int starts = 32;
    auto* capacity_cmd = app.add_subcommand("capacity", "constrained capacity report");
    add_channel_options(capacity_cmd, opts);
    capacity_cmd->add_option("--nbar", opts.n_bar, "mean photon number budget")->required();
    capacity_cmd->add_option("--st", opts.s_trunc, "truncation squeezing")->capture_default_str();
    capacity_cmd->add_option("--seed", opts.seed, "optimizer seed")->capture_default_str();
    capacity_cmd->add_option("--starts", starts, "optimizer multistarts")->capture_default_str();
    capacity_cmd->add_flag("--force-numerical", force_numerical,
                           "run the optimizer even above threshold and print the gap");
    capacity_cmd->add_option("--format", opts.format, "json|csv");
    capacity_cmd->callback([&]() {
        const GaussianChannel c = load_channel(opts);
        CapacityOptions copts;
        copts.s_trunc = opts.s_trunc;
        copts.tol = opts.tol;
        copts.one_shot.seed = opts.seed;
        copts.one_shot.starts = starts;
        const CapacityReport rep = capacity_of_channel(c, {opts.n_bar}, copts);
        if (!force_numerical) {
            emit(to_json(rep), opts.format);
            return;
        }
        const CapacityReport num = numerical_one_shot(c, {opts.n_bar}, copts.one_shot);
        std::string out = to_json(num);
        if (rep.regime == CapacityRegime::ClosedForm) {
            out = with_field(out, "gap", format_double(std::fabs(rep.c_gauss - num.c_gauss)));
        }
        emit(out, opts.format);
    });

    double bound_b = 0.0;
    auto* bounds_cmd = app.add_subcommand("bounds", "capacity upper bounds");
    add_channel_options(bounds_cmd, opts);
    bounds_cmd->add_option("--nbar", opts.n_bar, "mean photon number budget")->required();
    bounds_cmd->add_option("--st", opts.s_trunc, "truncation squeezing")->capture_default_str();
    bounds_cmd->add_option("--b", bound_b, "minimal output entropy lower bound (bits)")
        ->capture_default_str();
    bounds_cmd->add_option("--format", opts.format, "json|csv");
    bounds_cmd->callback([&]() {
        const GaussianChannel c = load_channel(opts);
        CapacityOptions copts;
        copts.s_trunc = opts.s_trunc;
        copts.tol = opts.tol;
        const FiducialDecomposition d = decompose_fiducial(c, opts.s_trunc);
        const double c_bar = upper_bound_cbar(d.fiducial, {opts.n_bar});
        const CapacityReport rep = capacity_of_channel(c, {opts.n_bar}, copts);
        const bool guaranteed = d.fiducial.tau > 0.0;
        std::string out = "{\"c_gauss\":" + format_double(rep.c_gauss) +
                          ",\"n_thr\":" + format_double(rep.n_thr) +
                          ",\"c_bar\":" + format_double(c_bar) +
                          ",\"gap_bound\":" + (guaranteed ? format_double(kBitsPerNat) : "null") +
                          ",\"supplementary\":" +
                          (guaranteed
                               ? format_double(supplementary_bound(c, {opts.n_bar}, bound_b, copts))
                               : "null") +
                          "}";
        emit(out, opts.format);
    });

    double tau_min = -2.0, tau_max = 2.5, region_s = 0.0;
    int grid = 101;
    std::string region_format = "csv";
    auto* region_cmd = app.add_subcommand("region", "physicality / EB / threshold curves");
    region_cmd->add_option("--tau-min", tau_min, "")->capture_default_str();
    region_cmd->add_option("--tau-max", tau_max, "")->capture_default_str();
    region_cmd->add_option("--grid", grid, "number of tau samples")->capture_default_str();
    region_cmd->add_option("--nbar", opts.n_bar, "budget for the threshold curve")
        ->capture_default_str();
    region_cmd->add_option("--s", region_s, "noise squeezing for the threshold curve")
        ->capture_default_str();
    region_cmd->add_option("--format", region_format, "csv|json")->capture_default_str();
    region_cmd->callback([&]() {
        if (grid < 2) throw ParseError("region: --grid must be at least 2");
        const bool with_thr = region_s != 0.0;
        std::string csv = "tau,y_min,y_eb,y_thr\n";
        std::string json = "[";
        for (int i = 0; i < grid; ++i) {
            const double tau = tau_min + (tau_max - tau_min) * i / (grid - 1);
            const double y_min = std::fabs(tau - 1.0) / 2.0;
            const double y_eb = (std::fabs(tau) + 1.0) / 2.0;
            std::string thr = "";
            if (with_thr && tau != 0.0) {
                thr = format_double(y_threshold_curve(tau, opts.n_bar, region_s));
            }
            csv += format_double(tau) + "," + format_double(y_min) + "," +
                   format_double(y_eb) + "," + thr + "\n";
            if (i) json += ",";
            json += "{\"tau\":" + format_double(tau) + ",\"y_min\":" + format_double(y_min) +
                    ",\"y_eb\":" + format_double(y_eb) + ",\"y_thr\":" +
                    (thr.empty() ? "null" : thr) + "}";
        }
        if (region_format == "json") {
            std::cout << json << "]\n";
        } else {
            std::cout << csv;
        }
    });

    std::string network_file, against_file;
    auto* simulate_cmd = app.add_subcommand("simulate", "extract the channel of a network");
    simulate_cmd->add_option("--network", network_file, "network description file (JSON)")
        ->required();
    simulate_cmd->add_option("--against", against_file, "expected channel file to compare");
    simulate_cmd->add_option("--tol", opts.tol, "extraction tolerance")->capture_default_str();
    simulate_cmd->add_option("--format", opts.format, "json|csv");
    simulate_cmd->callback([&]() {
        const OpticalNetwork net = network_from_json(read_file(network_file));
        double residual = 0.0;
        const GaussianChannel c = extract_channel(net, std::max(opts.tol, 1e-10), &residual);
        std::string out = with_field(to_json(c), "residual", format_double(residual));
        if (!against_file.empty()) {
            const GaussianChannel expect = channel_from_json(read_file(against_file), 1.0);
            const double diff = std::max((c.X - expect.X).max_abs(),
                                         (c.Y - expect.Y).max_abs());
            out = with_field(out, "against_residual", format_double(diff));
        }
        emit(out, opts.format);
    });

    auto* optimize_cmd = app.add_subcommand("optimize", "run the one-shot optimizer directly");
    add_channel_options(optimize_cmd, opts);
    optimize_cmd->add_option("--nbar", opts.n_bar, "mean photon number budget")->required();
    optimize_cmd->add_option("--seed", opts.seed, "optimizer seed")->capture_default_str();
    optimize_cmd->add_option("--starts", starts, "optimizer multistarts")->capture_default_str();
    optimize_cmd->add_option("--format", opts.format, "json|csv");
    optimize_cmd->callback([&]() {
        const GaussianChannel c = load_channel(opts);
        OneShotOptions oopts;
        oopts.seed = opts.seed;
        oopts.starts = starts;
        const CapacityReport rep = numerical_one_shot(c, {opts.n_bar}, oopts);
        std::string optima = "[";
        for (std::size_t i = 0; i < rep.optimizer->local_optima.size(); ++i) {
            if (i) optima += ",";
            optima += format_double(rep.optimizer->local_optima[i]);
        }
        optima += "]";
        emit(with_field(to_json(rep), "local_optima", optima), opts.format);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const gausschan::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gausschan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
