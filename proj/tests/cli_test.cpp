#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "setpair/setpair.hpp"

namespace setpair {
namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string command = env + " \"" SETPAIR_CLI "\" " + args + " 2>/dev/null";
    Run result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string data(const char* name) { return std::string("\"") + SETPAIR_DATA_DIR + "/" + name + "\""; }

std::string scratch(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

TEST(Cli, ClassifySharpIsStrong) {
    const auto r = run("classify " + data("sharp_1_1_1.json") + " --t 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "strong")) << r.out;
}

TEST(Cli, ClassifyDuplicatePairIsNeither) {
    const auto r = run("--json classify " + data("duplicate_pair.json") + " --t 0");
    EXPECT_EQ(r.code, 1);
    const Json j = parse_json_text(r.out);
    EXPECT_EQ(j.at("verdict"), "neither");
    EXPECT_EQ(j.at("witnesses").at(0).at("i"), 1);
    EXPECT_EQ(j.at("witnesses").at(0).at("j"), 2);
}

TEST(Cli, MalformedInputIsUsageError) {
    const auto path = scratch("setpair_cli_malformed.json");
    write_text_file(path, "{\"ground_size\": 2,");
    EXPECT_EQ(run("classify \"" + path + "\"").code, 2);
    EXPECT_EQ(run("sum \"" + path + "\"").code, 2);
    EXPECT_EQ(run("classify /nonexistent/file.json").code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("sum " + data("sharp_2_2_0.json") + " --which nope").code, 2);
    EXPECT_EQ(run("search --n 9").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, SumOfSharpSystem) {
    const auto r = run("sum " + data("sharp_2_2_0.json") + " --t 0");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "1/1")) << r.out;
}

TEST(Cli, SumOfSkewWitnessExceedsOne) {
    const auto r = run("sum " + data("skew_witness.json") + " --t 0");
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "> 1")) << r.out;
}

TEST(Cli, LymOfFullLevel) {
    const auto r = run("--json sum " + data("level_2_of_4.json") + " --which lym");
    EXPECT_EQ(r.code, 0);
    const Json j = parse_json_text(r.out);
    EXPECT_EQ(j.at("sum"), "1");
    EXPECT_EQ(j.at("antichain"), true);
}

TEST(Cli, DegeneratePairNamesIndex) {
    const std::string command = "\"" SETPAIR_CLI "\" sum " + data("duplicate_pair.json") + " --t 2 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::array<char, 512> buffer{};
    const std::string text(buffer.data(), std::fread(buffer.data(), 1, buffer.size(), pipe));
    const int status = pclose(pipe);
    EXPECT_EQ(WEXITSTATUS(status), 2);
    EXPECT_TRUE(contains(text, "pair 1")) << text;
}

TEST(Cli, GenerateRoundTripsThroughClassifyAndSum) {
    const auto path = scratch("setpair_cli_generate.json");
    ASSERT_EQ(run("generate 1 1 0 --out \"" + path + "\"").code, 0);
    EXPECT_EQ(run("classify \"" + path + "\" --t 0").code, 0);
    const auto sum = run("--json sum \"" + path + "\" --t 0");
    EXPECT_EQ(sum.code, 0);
    EXPECT_EQ(parse_json_text(sum.out).at("sum"), "1");
    const std::string text = read_text_file(path);
    EXPECT_EQ(dump(to_json(set_system_from_json(parse_json_text(text)))), text);
    std::filesystem::remove(path);
}

TEST(Cli, EmbedThenReduce) {
    const auto embedded = scratch("setpair_cli_embedded.json");
    const auto reduced = scratch("setpair_cli_reduced.json");
    ASSERT_EQ(run("embed " + data("sharp_1_1_1.json") + " --out \"" + embedded + "\"").code, 0);
    const auto r = run("--json --seed 7 reduce \"" + embedded + "\" --t 1 --out \"" + reduced + "\"");
    ASSERT_EQ(r.code, 0);
    const Json j = parse_json_text(r.out);
    EXPECT_EQ(j.at("seed"), 7);
    EXPECT_EQ(j.at("sum_before"), "1");
    EXPECT_EQ(j.at("sum_after"), "1");
    for (const auto& pair : j.at("dims")) {
        EXPECT_EQ(pair.at("u"), Json::array({2, 1}));
        EXPECT_EQ(pair.at("v"), Json::array({2, 1}));
    }
    const auto sys = subspace_system_from_json(read_json_file(reduced));
    EXPECT_TRUE(classify_subspace(sys, 0).strong);
    EXPECT_EQ(run("--seed 7 reduce " + data("sharp_1_1_1.json") + " --t 1").code, 0);
    std::filesystem::remove(embedded);
    std::filesystem::remove(reduced);
}

TEST(Cli, ReduceRejectsNonSkewInput) {
    EXPECT_EQ(run("reduce " + data("duplicate_pair.json") + " --t 0").code, 2);
}

TEST(Cli, SkewSearchFindsViolation) {
    const auto findings = scratch("setpair_cli_findings.json");
    std::filesystem::remove(findings);
    const auto r = run("--workers 2 search --mode skew --n 2 --t 0 --quiet --findings \"" + findings + "\"");
    EXPECT_EQ(r.code, 1);
    const Json found = read_json_file(findings);
    EXPECT_TRUE(found.contains("config"));
    EXPECT_TRUE(found.contains("seed"));
    const auto sys = set_system_from_json(found);
    EXPECT_TRUE(classify(sys, 0).skew);
    EXPECT_EQ(furedi_sum(sys, 0), rational_from_json(found.at("sum")));
    EXPECT_GT(furedi_sum(sys, 0), 1);
    EXPECT_EQ(run("sum \"" + findings + "\"").code, 1);
    std::filesystem::remove(findings);
}

TEST(Cli, StrongSearchHoldsAndIsDeterministic) {
    const std::string args = "--json --seed 5 search --n 3 --t 0 --quiet";
    const auto first = run("--workers 1 " + args);
    const auto second = run("--workers 3 " + args);
    EXPECT_EQ(first.code, 0);
    EXPECT_EQ(first.out, second.out);
    const Json j = parse_json_text(first.out);
    EXPECT_EQ(j.at("best_sum"), "1");
    EXPECT_EQ(j.at("exhausted"), true);
}

TEST(Cli, BudgetCutExitsZeroAndFlagsIt) {
    const auto r = run("--json --time-budget 0.05 search --mode skew --n 5 --t 0 --quiet");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse_json_text(r.out).at("exhausted"), false);
}

TEST(Cli, CheckpointResume) {
    const auto checkpoint = scratch("setpair_cli_checkpoint.json");
    std::filesystem::remove(checkpoint);
    const std::string args = "--json --checkpoint \"" + checkpoint + "\" search --n 3 --t 0 --quiet";
    const auto first = run(args);
    EXPECT_TRUE(std::filesystem::exists(checkpoint));
    const auto resumed = run(args);
    EXPECT_EQ(first.code, 0);
    EXPECT_EQ(first.out, resumed.out);
    std::filesystem::remove(checkpoint);
}

TEST(Cli, VerifyCorpus) {
    const auto r = run("--json verify-corpus --n 3 --t 0 --mode skew --ordering monotone --quiet");
    EXPECT_EQ(r.code, 0);
    const Json j = parse_json_text(r.out);
    EXPECT_TRUE(j.at("violations").empty());
    EXPECT_GT(j.at("checked").get<int>(), 0);
}

TEST(Cli, GroundCapFromEnvironment) {
    const auto path = scratch("setpair_cli_wide.json");
    EXPECT_EQ(run("generate 1 1 70 --out \"" + path + "\"").code, 2);
    EXPECT_EQ(run("generate 1 1 70 --out \"" + path + "\"", "SETPAIR_MAX_GROUND=128").code, 0);
    EXPECT_EQ(run("classify \"" + path + "\" --t 70", "SETPAIR_MAX_GROUND=128").code, 0);
    EXPECT_EQ(run("classify \"" + path + "\" --t 70").code, 2);
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace setpair
