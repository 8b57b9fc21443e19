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

#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "gausschan/io.hpp"
#include "gausschan/network.hpp"

using namespace gausschan;
using json = nlohmann::json;

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd =
        (env.empty() ? "" : env + " ") + GAUSSCHAN_CLI_PATH + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    CmdResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) {
        result.out += buf.data();
    }
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

const char* kLossyArgs =
    "--x \"[[0.70710678118654757,0],[0,0.70710678118654757]]\" --y \"[[0.25,0],[0,0.25]]\"";

}  // namespace

TEST_CASE("classify reports the class record") {
    const CmdResult r = run_cli(
        "classify --x \"[[0.83666002653407556,0],[0,0.83666002653407556]]\" "
        "--y \"[[0.3,0],[0,0.3]]\"");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["class"] == "CL");
    CHECK(j["tau"].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(j["entanglement_breaking"] == false);
}

TEST_CASE("classify identity") {
    const CmdResult r = run_cli("classify --x \"[[1,0],[0,1]]\" --y \"[[0,0],[0,0]]\"");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["class"] == "Id");
    CHECK(j["entanglement_breaking"] == false);
}

TEST_CASE("unphysical channels exit 2 and cite the inequality") {
    const CmdResult r = run_cli(
        "classify --x \"[[0.70710678118654757,0],[0,0.70710678118654757]]\" "
        "--y \"[[0.1,0],[0,0.1]]\"");
    CHECK(r.status == 2);
    CHECK(r.out.find("y >= |tau-1|/2") != std::string::npos);
}

TEST_CASE("parse failures exit 1") {
    CHECK(run_cli("classify --x \"[[0.5\" --y \"[[0.3,0],[0,0.3]]\"").status == 1);
    CHECK(run_cli("classify --y \"[[0.3,0],[0,0.3]]\"").status == 1);
    CHECK(run_cli("frobnicate").status == 1);
}

TEST_CASE("decompose emits the factorization and verifies it") {
    const CmdResult r = run_cli(std::string("decompose --verify ") + kLossyArgs);
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["limit"] == "exact");
    CHECK(j["tau"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["residual"].get<double>() <= 1e-9);
}

TEST_CASE("decompose routes rank-deficient X to the a2 family") {
    const CmdResult r =
        run_cli("decompose --x \"[[1.3,0],[0,0]]\" --y \"[[0.9,0],[0,0.9]]\" --st 8");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["limit"] == "a2");
    CHECK(j["s_T"].get<double>() == 8.0);
}

TEST_CASE("capacity closed form on the pure lossy channel") {
    const CmdResult r = run_cli(std::string("capacity --nbar 1 ") + kLossyArgs);
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["regime"] == "closed_form");
    CHECK(j["c_gauss"].get<double>() == doctest::Approx(1.3774437510817343).epsilon(1e-12));
}

TEST_CASE("forced numerical capacity reports the oracle gap") {
    const CmdResult r = run_cli(std::string("capacity --nbar 1 --force-numerical ") + kLossyArgs);
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["regime"] == "numerical");
    CHECK(j["gap"].get<double>() <= 1e-6);
}

TEST_CASE("capacity below threshold switches regimes") {
    const CmdResult r = run_cli(
        "capacity --nbar 0.5 --x \"[[1,0],[0,1]]\" "
        "--y \"[[0.91105940019525255,0],[0,0.27440581804701325]]\"");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["regime"] == "numerical");
    CHECK(j["n_thr"].get<double>() == doctest::Approx(0.7293861912693751).epsilon(1e-9));
}

TEST_CASE("bounds") {
    const CmdResult r = run_cli(std::string("bounds --nbar 1 --b 0.25 ") + kLossyArgs);
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["c_bar"].get<double>() >= j["c_gauss"].get<double>() - 1e-12);
    CHECK(j["gap_bound"].get<double>() == doctest::Approx(1.4426950408889634));
    CHECK(j["supplementary"].get<double>() > 0.0);
    // tau = 0 has no finite bound
    CHECK(run_cli("bounds --nbar 1 --x \"[[0,0],[0,0]]\" --y \"[[1,0],[0,1]]\"").status == 2);
}

TEST_CASE("region emits the admissibility curves") {
    const CmdResult r = run_cli("region --tau-min 0 --tau-max 1 --grid 3 --nbar 0.5 --s 0.12");
    CHECK(r.status == 0);
    CHECK(r.out.find("tau,y_min,y_eb,y_thr\n") == 0);
    CHECK(r.out.find("\n1,0,1,1.5037532725793274\n") != std::string::npos);
    CHECK(r.out.find("\n0,0.5,0.5,\n") != std::string::npos);

    const CmdResult no_thr = run_cli("region --tau-min 1 --tau-max 1.5 --grid 2");
    CHECK(no_thr.out.find("\n1,0,1,\n") != std::string::npos);
}

TEST_CASE("simulate extracts the channel of a network file") {
    const auto net_path =
        write_temp("gausschan_test_net.json", to_json(build_thermal(0.5, 0.25)));
    const auto expect_path = write_temp("gausschan_test_expect.json",
                                        to_json(thermal_channel(0.5, 0.25)));
    const CmdResult r = run_cli("simulate --network " + net_path.string() + " --against " +
                                expect_path.string());
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["residual"].get<double>() <= 1e-10);
    CHECK(j["against_residual"].get<double>() <= 1e-10);
}

TEST_CASE("simulate reports exact single-quadrature noise") {
    const auto net_path =
        write_temp("gausschan_test_sq.json", to_json(build_single_quadrature_noise()));
    const CmdResult r = run_cli("simulate --network " + net_path.string());
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["X"][0][0].get<double>() == 1.0);
    CHECK(j["X"][1][1].get<double>() == 1.0);
    CHECK(j["Y"][0][0].get<double>() == 0.0);
    CHECK(j["Y"][1][1].get<double>() == 0.5);
}

TEST_CASE("malformed gate kinds exit 1 with a line number") {
    const auto path = write_temp("gausschan_test_bad.json", R"({
  "modes": 2,
  "ancillas": [{"mode": 1, "kind": "vacuum"}],
  "gates": [
    {"kind": "warp", "modes": [0, 1]}
  ],
  "keep": 0
})");
    const CmdResult r = run_cli("simulate --network " + path.string());
    CHECK(r.status == 1);
    CHECK(r.out.find("line 5") != std::string::npos);
    CHECK(r.out.find("unknown gate kind") != std::string::npos);
}

TEST_CASE("optimize is deterministic for a fixed seed") {
    const std::string args =
        "optimize --nbar 0.4 --seed 7 --starts 8 --x \"[[1,0],[0,1]]\" "
        "--y \"[[0.91105940019525255,0],[0,0.27440581804701325]]\"";
    const CmdResult a = run_cli(args);
    const CmdResult b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j["local_optima"].size() == 8);
}

TEST_CASE("subcommands agree on the channel parameters") {
    const std::string args = "--x \"[[0.9,0.2],[-0.1,0.8]]\" --y \"[[0.6,0.1],[0.1,0.5]]\"";
    const json cls = json::parse(run_cli("classify " + args).out);
    const json dec = json::parse(run_cli("decompose " + args).out);
    CHECK(cls["tau"].get<double>() == doctest::Approx(dec["tau"].get<double>()).epsilon(1e-12));
    const double y_cls = cls["y"].get<double>();
    const double y_dec = dec["y"].get<double>();
    CHECK(y_cls == doctest::Approx(y_dec).epsilon(1e-12));
}

TEST_CASE("csv format flattens the report") {
    const CmdResult r = run_cli(std::string("capacity --nbar 1 --format csv ") + kLossyArgs);
    CHECK(r.status == 0);
    CHECK(r.out.find("c_gauss,1.3774437510817") != std::string::npos);
    CHECK(r.out.find("regime,\"closed_form\"") != std::string::npos);
}

TEST_CASE("GAUSSCHAN_TOL env var loosens validation") {
    // y = 0.2495 violates physicality by 5e-4; a coarse tolerance accepts it.
    const std::string args =
        "classify --x \"[[0.70710678118654757,0],[0,0.70710678118654757]]\" "
        "--y \"[[0.2495,0],[0,0.2495]]\"";
    CHECK(run_cli(args).status == 2);
    CHECK(run_cli(args, "GAUSSCHAN_TOL=1e-3").status == 0);
    // the --tol flag wins over the environment
    CHECK(run_cli(args + " --tol 1e-9", "GAUSSCHAN_TOL=1e-3").status == 2);
}
