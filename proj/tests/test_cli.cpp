#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

using orlicz::cli::run;
using nlohmann::json;

namespace {

struct Result
{
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args)
{
    args.insert(args.begin(), "orlicz_conc");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Last CSV field of the last non-empty line.
std::string last_field(const std::string& s)
{
    std::istringstream is(s);
    std::string line, last;
    while (std::getline(is, line))
        if (!line.empty())
            last = line;
    return last.substr(last.rfind(',') + 1);
}

const std::string kPsi = R"({"family":"PowerNorm","params":{"norm":"l2","a":2},"dim":2})";

} // namespace

TEST(Cli, NormExample)
{
    const auto r = call({"norm", "--psi", kPsi, "--p", "4", "--x", "3,4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(last_field(r.out)), 10.0, 1e-9);
    EXPECT_EQ(r.out.rfind("# config: ", 0), 0u);
}

TEST(Cli, BoundExample)
{
    const auto r = call({"bound", "l_constant", "--K", "1", "--D", "1", "--alpha", "2", "--beta", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(last_field(r.out)), 3.41421, 1e-5);
    const auto j = call({"bound", "l_constant", "--params", R"({"K":1,"D":1,"alpha":2,"beta":2})"});
    EXPECT_EQ(last_field(j.out), last_field(r.out));
}

TEST(Cli, InputErrors)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"bound", "l_constant", "--K", "1", "--D", "1", "--alpha", "2"},
             {"bound", "l_constant", "--K", "1", "--D", "1", "--alpha", "2", "--beta", "2", "--zz", "1"},
             {"bound", "no_such_bound"},
             {"norm", "--p", "4", "--x", "3,4"},
             {"norm", "--psi", R"({"family":"PowerNorm","params":{"norm":"l2","a":2},"dim":2,"extra":1})", "--p",
              "4", "--x", "3,4"},
             {"norm", "--psi", kPsi, "--p", "4", "--x", "3,4,5"},
             {"frobnicate"},
             {}}) {
        const auto r = call(args);
        EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
        if (!r.err.empty()) {
            const auto e = json::parse(r.err);
            EXPECT_EQ(e.at("error"), "input_error");
        }
    }
}

TEST(Cli, NumericalErrorExitCode)
{
    const auto r = call({"conjugate", "--psi", R"({"family":"PowerNorm","params":{"norm":"l2","a":1},"dim":1})",
                         "--t", "1"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(json::parse(r.err).at("error"), "numerical_error");
}

TEST(Cli, JsonFormatEchoesConfig)
{
    const auto r = call({"norm", "--psi", kPsi, "--p", "4,9", "--x", "3,4", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("config").at("subcommand"), "norm");
    EXPECT_EQ(j.at("config").at("psi").at("family"), "PowerNorm");
    EXPECT_EQ(j.at("result").size(), 2u);
}

TEST(Cli, ByteIdenticalAndReplayable)
{
    const std::vector<std::string> args{"tensor", "--matrix-json", R"({"k":2,"n":2,"data":[2,0,0,1]})",
                                        "--psi", R"({"family":"PowerNorm","params":{"norm":"l2","a":2},"dim":2})",
                                        "--p", "4", "--seed", "5"};
    const auto a = call(args), b = call(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);

    // Replaying the echoed argv reproduces the output.
    const auto cfg = json::parse(a.out.substr(10, a.out.find('\n') - 10));
    const auto replay = call(cfg.at("argv").get<std::vector<std::string>>());
    EXPECT_EQ(replay.out, a.out);
}

TEST(Cli, TensorChaosTerm)
{
    const auto r = call({"tensor", "--matrix-json", R"({"k":2,"n":2,"data":[2,0,0,1]})", "--psi",
                         R"({"family":"PowerNorm","params":{"norm":"l2","a":2},"dim":2})", "--p", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(last_field(r.out)), 32.0, 1e-9);
    EXPECT_NE(r.out.find("op,2"), std::string::npos) << r.out;
}

TEST(Cli, ConjugateTable)
{
    const auto r = call({"conjugate", "--psi", R"({"family":"SeparableTwoLevel","params":{"r":4},"dim":1})",
                         "--t-grid", "log:0.01:100:5"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#' && line[0] != 't')
            ++rows;
    EXPECT_EQ(rows, 5);
}

TEST(Cli, SampleBinaryRoundTrip)
{
    const auto dir = std::filesystem::temp_directory_path() / "orlicz_cli_test";
    std::filesystem::create_directories(dir);
    const auto bin = (dir / "g.bin").string();
    const auto r = call({"sample", "--family", "gaussian", "--n", "2", "--count", "5", "--seed", "3", "--format",
                         "bin", "--out", bin});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::filesystem::file_size(bin), 5u * 2u * 8u);
    EXPECT_TRUE(std::filesystem::exists(bin + ".json"));
    const auto csv = call({"sample", "--family", "gaussian", "--n", "2", "--count", "5", "--seed", "3"});
    ASSERT_EQ(csv.code, 0);
    std::ifstream in(bin, std::ios::binary);
    double first;
    in.read(reinterpret_cast<char*>(&first), 8);
    const auto body = csv.out.substr(csv.out.find('\n') + 1);
    EXPECT_EQ(first, std::stod(body.substr(0, body.find(','))));
    EXPECT_EQ(call({"sample", "--family", "gaussian", "--count", "5", "--format", "bin"}).code, 2);
    std::filesystem::remove_all(dir);
}

TEST(Cli, VerifyScenario)
{
    const auto r = call({"verify", "norm_oracle", "--N", "50", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err << r.out;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("result").at("scenario"), "norm_oracle");
    EXPECT_TRUE(j.at("result").at("pass").get<bool>());
    EXPECT_EQ(call({"verify", "no_such_scenario"}).code, 2);
}

TEST(Cli, Help)
{
    const auto r = call({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
}
