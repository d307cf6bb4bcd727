// Copyright 2026 The defermion Authors
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


#include "cli.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace cli = defermion::cli;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "defermion");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

int count_section(const std::string& text, const std::string& section) {
    int count = 0;
    bool inside = false;
    for (const auto& line : lines(text)) {
        if (line.rfind("# ", 0) == 0) {
            inside = line == section;
            continue;
        }
        count += inside ? 1 : 0;
    }
    return count;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("defermion_cli_test_" + name);
}

const std::vector<std::string> kTinyEvolve = {"evolve",         "--tau_max",     "0.2", "--dt",
                                              "0.01",           "--record_every", "10", "--outer_steps",
                                              "2",              "--inner_steps", "2",   "--excitation",
                                              "spin",           "--seed",        "5"};

}  // namespace

TEST(Cli, DimsLine) {
    Result r = run_cli({"dims"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("\n2x2: full 4096, physical 128\n"), std::string::npos);
    EXPECT_NE(r.out.find("qubits 12, with extra rishon 13"), std::string::npos);
}

TEST(Cli, OptionsAfterSubcommand) {
    Result r = run_cli({"dims", "--lx", "4", "--ly", "2"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("4x2: full 67108864, physical 32768"), std::string::npos) << r.out;
}

TEST(Cli, EncodeCountsAndDeterminism) {
    Result a = run_cli({"encode"});
    Result b = run_cli({"encode"});
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(count_section(a.out, "# terms hopping"), 16);
    EXPECT_EQ(count_section(a.out, "# stabilizers vertex"), 4);
    EXPECT_EQ(count_section(a.out, "# stabilizers plaquette"), 1);
    EXPECT_NE(a.out.find("# layout lattice=2x2 qubits=12 extra_rishon=false"), std::string::npos);
    EXPECT_NE(a.out.find("# stabilizers plaquette\n1 -IIIIIIIIXYYX\n"), std::string::npos);
}

TEST(Cli, InvalidLatticeIsInvalidInput) {
    Result r = run_cli({"dims", "--lx", "0"});
    EXPECT_EQ(r.code, cli::kInvalidInput);
    EXPECT_NE(r.err.find("invalid input"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, MalformedValuesAreInvalidInput) {
    EXPECT_EQ(run_cli({"dims", "--U", "abc"}).code, cli::kInvalidInput);
    EXPECT_EQ(run_cli({"dims", "--excitation", "photon"}).code, cli::kInvalidInput);
    EXPECT_EQ(run_cli({"dims", "--dt", "-1"}).code, cli::kInvalidInput);
    EXPECT_EQ(run_cli({"teleport"}).code, cli::kInvalidInput);
    EXPECT_EQ(run_cli({}).code, cli::kInvalidInput);
}

TEST(Cli, HelpExitsCleanly) {
    Result r = run_cli({"--help"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("evolve"), std::string::npos);
}

TEST(Cli, WeightsReport) {
    Result r = run_cli({"weights", "--lx", "3", "--ly", "3"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("hopping_single_species 6\n"), std::string::npos);
    EXPECT_NE(r.out.find("hopping_spinful 7\n"), std::string::npos);
    EXPECT_NE(r.out.find("plaquette 6\n"), std::string::npos);
}

TEST(Cli, VerifyPasses) {
    Result r = run_cli({"verify"});
    ASSERT_EQ(r.code, cli::kOk) << r.out << r.err;
    EXPECT_NE(r.out.find("check ed_equivalence PASS"), std::string::npos);
    EXPECT_NE(r.out.find("check stabilizer_commutation PASS 0 anticommuting pairs"), std::string::npos);
    EXPECT_NE(r.out.find("2x2: full 4096, physical 128"), std::string::npos);
    EXPECT_NE(r.out.find("result PASS"), std::string::npos);
}

TEST(Cli, VerifyRejectsLatticesBeyondCaps) {
    Result r = run_cli({"verify", "--lx", "4", "--ly", "2"});
    EXPECT_EQ(r.code, cli::kInvalidInput);
    EXPECT_NE(r.err.find("exact-diagonalization caps"), std::string::npos);
}

TEST(Cli, EvolveJsonlIsDeterministic) {
    Result a = run_cli(kTinyEvolve);
    Result b = run_cli(kTinyEvolve);
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto ls = lines(a.out);
    ASSERT_EQ(ls.size(), 5u);  // header, three records, summary
    EXPECT_EQ(ls[0].rfind("{\"defermion\":\"evolve\",\"config_hash\":\"fnv1a64:", 0), 0u);
    EXPECT_EQ(ls[1].rfind("{\"tau\":0.0,", 0), 0u);
    EXPECT_NE(ls[4].find("\"summary\""), std::string::npos);
}

TEST(Cli, EvolveOracleCheckAppendsDeviation) {
    auto args = kTinyEvolve;
    args.insert(args.end(), {"--oracle_check", "true"});
    Result r = run_cli(args);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 5u);
    EXPECT_NE(ls[3].find("\"oracle_deviation\":"), std::string::npos);
    EXPECT_EQ(ls[3].find("\"oracle_deviation\":null"), std::string::npos);
}

TEST(Cli, EvolveCsv) {
    auto args = kTinyEvolve;
    args.insert(args.end(), {"--format", "csv"});
    Result r = run_cli(args);
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    bool header = false;
    int rows = 0;
    for (const auto& line : lines(r.out)) {
        if (line.rfind("tau,sz_0,", 0) == 0) {
            header = true;
        } else if (!line.empty() && line[0] != '#') {
            ++rows;
        }
    }
    EXPECT_TRUE(header);
    EXPECT_EQ(rows, 3);
    EXPECT_NE(r.out.find("# summary excitation=spin site=(0,0)"), std::string::npos);
}

TEST(Cli, ChargeAwayFromCornerRejected) {
    Result r = run_cli({"evolve", "--excitation", "charge", "--site_x", "1", "--site_y", "0", "--tau_max", "0.1"});
    EXPECT_EQ(r.code, cli::kInvalidInput);
    EXPECT_NE(r.err.find("charge injection restricted to the (0,0) corner"), std::string::npos);
}

TEST(Cli, SiteOutsideLatticeRejected) {
    EXPECT_EQ(run_cli({"evolve", "--site_x", "5"}).code, cli::kInvalidInput);
}

TEST(Cli, ConvergenceSingleStepHasNoSlope) {
    Result r = run_cli({"convergence", "--dt_list", "0.1", "--convergence_tau_max", "0.5", "--outer_steps", "1"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[1].rfind("{\"dt\":0.1,\"error\":", 0), 0u);
    EXPECT_EQ(ls[2], "{\"slope\":null}");
}

TEST(Cli, ConvergenceRejectsAscendingList) {
    EXPECT_EQ(run_cli({"convergence", "--dt_list", "0.01,0.1"}).code, cli::kInvalidInput);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    auto path = temp_path("config.txt");
    {
        std::ofstream f(path);
        f << "# lattice\nlx = 3\nly=2\nU = 2.5  # interaction\n";
    }
    Result from_file = run_cli({"dims", "--config", path.string()});
    ASSERT_EQ(from_file.code, cli::kOk) << from_file.err;
    EXPECT_NE(from_file.out.find("3x2: full"), std::string::npos);
    EXPECT_NE(from_file.out.find("# config U=2.5\n"), std::string::npos);
    Result overridden = run_cli({"dims", "--config", path.string(), "--lx", "2"});
    ASSERT_EQ(overridden.code, cli::kOk);
    EXPECT_NE(overridden.out.find("2x2: full 4096"), std::string::npos);
    EXPECT_NE(overridden.out.find("# config U=2.5\n"), std::string::npos);
    {
        std::ofstream f(path);
        f << "colour = blue\n";
    }
    EXPECT_EQ(run_cli({"dims", "--config", path.string()}).code, cli::kInvalidInput);
    std::filesystem::remove(path);
    EXPECT_EQ(run_cli({"dims", "--config", path.string()}).code, cli::kInvalidInput);
}

TEST(Cli, HeaderHashCoversResolvedConfig) {
    cli::RunConfig c;
    std::string text = cli::resolved_text(c);
    Result r = run_cli({"dims"});
    EXPECT_NE(r.out.find("# config_hash fnv1a64:" + cli::hex64(cli::fnv1a64(text))), std::string::npos);
    cli::apply_setting(c, "U", "2");
    EXPECT_NE(cli::resolved_text(c), text);
    EXPECT_EQ(cli::hex64(cli::fnv1a64("")), "cbf29ce484222325");
    EXPECT_EQ(cli::hex64(cli::fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(Cli, ConfigKeysRoundTrip) {
    cli::RunConfig c;
    cli::apply_config_text(c, "dt_list = 0.2, 0.1\nexcitation = charge\nseed = 9\nfuse_blocks = yes\n");
    EXPECT_EQ(c.dt_list, (std::vector<double>{0.2, 0.1}));
    EXPECT_TRUE(c.use_extra_rishon());
    cli::RunConfig d;
    cli::apply_config_text(d, cli::resolved_text(c));
    EXPECT_EQ(cli::resolved_text(d), cli::resolved_text(c));
    EXPECT_THROW(cli::apply_setting(c, "nope", "1"), std::invalid_argument);
    EXPECT_THROW(cli::apply_config_text(c, "lx 3\n"), std::invalid_argument);
}

TEST(Cli, OutputFile) {
    auto path = temp_path("dims.txt");
    Result r = run_cli({"dims", "--output", path.string()});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    EXPECT_NE(buf.str().find("2x2: full 4096, physical 128"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, ExecutableExitCodes) {
    auto status = [](const std::string& args) {
        std::string cmd = std::string(DEFERMION_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("dims"), 0);
    EXPECT_EQ(status("dims --lx 0"), 2);
    EXPECT_EQ(status("evolve --excitation charge --site_x 1"), 2);
}
