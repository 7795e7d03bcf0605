#include <gtest/gtest.h>

#include <filesystem>

#include "setpair/io.hpp"
#include "setpair/search.hpp"
#include "setpair/subspace_system.hpp"

namespace setpair {
namespace {

std::filesystem::path scratch(const char* name) { return std::filesystem::temp_directory_path() / name; }

template <class Parse>
void expect_stable_round_trip(const Json& original, Parse parse) {
    const auto path = scratch("setpair_io_roundtrip.json");
    const std::string first = dump(original);
    write_text_file(path.string(), first);
    const std::string second = dump(to_json(parse(read_json_file(path.string()))));
    EXPECT_EQ(first, second);
    std::filesystem::remove(path);
}

TEST(RoundTrip, SetSystem) {
    const auto sys = generate_sharp_system(2, 1, 1);
    expect_stable_round_trip(to_json(sys), [](const Json& j) { return set_system_from_json(j); });
    EXPECT_EQ(set_system_from_json(to_json(sys)), sys);
}

TEST(RoundTrip, EmptySetsAndWideGround) {
    const SetPairSystem sys(3, {{Subset{}, Subset::from_elements({1, 3})}});
    expect_stable_round_trip(to_json(sys), [](const Json& j) { return set_system_from_json(j); });
    const auto wide = generate_sharp_system<2>(1, 1, 70);
    expect_stable_round_trip(to_json(wide), [](const Json& j) { return set_system_from_json<2>(j); });
}

TEST(RoundTrip, SubspaceWithFractions) {
    const Subspace s(3, RationalMatrix::from_rows(3, {{Rational(1, 2), 0, Rational(-3, 7)}, {0, 2, 5}}));
    expect_stable_round_trip(to_json(s), [](const Json& j) { return subspace_from_json(j); });
    EXPECT_EQ(subspace_from_json(to_json(s)).basis(), s.basis());
}

TEST(RoundTrip, SubspaceSystem) {
    const auto sys = embed_sets_as_coordinate_subspaces(generate_sharp_system(1, 2, 1));
    const auto reduced = reduce_to_zero_system(sys, 1, 3);
    expect_stable_round_trip(to_json(reduced), [](const Json& j) { return subspace_system_from_json(j); });
}

TEST(RoundTrip, SearchConfig) {
    SearchConfig c;
    c.ground_size = 4;
    c.t = 1;
    c.mode = Mode::skew;
    c.ordering = Ordering::monotone;
    c.uniform_rs = std::pair{2, 1};
    c.max_pairs = 5;
    c.seed = 12345;
    expect_stable_round_trip(to_json(c), [](const Json& j) { return search_config_from_json(j); });
}

TEST(RoundTrip, Checkpoint) {
    const auto path = scratch("setpair_io_checkpoint.json");
    std::filesystem::remove(path);
    SearchConfig c;
    c.ground_size = 3;
    RunOptions options;
    options.checkpoint_path = path.string();
    options.stop_after_tasks = 4;
    verify_corpus(c, options);
    const std::string text = read_text_file(path.string());
    EXPECT_EQ(dump(read_json_file(path.string())), text);
    EXPECT_EQ(read_json_file(path.string()).at("completed").size(), 4U);
    std::filesystem::remove(path);
}

TEST(Rationals, IntegersAndFractionsAccepted) {
    EXPECT_EQ(rational_from_json(Json(4)), 4);
    EXPECT_EQ(rational_from_json(Json("-6/4")), Rational(-3, 2));
    EXPECT_EQ(to_json(Rational(2, 1)), Json("2"));
    EXPECT_THROW(rational_from_json(Json(0.5)), ParseError);
    EXPECT_THROW(rational_from_json(Json("1/0")), ParseError);
}

TEST(Malformed, SetSystems) {
    const char* bad[] = {
        R"({"pairs": []})",
        R"({"ground_size": 0, "pairs": []})",
        R"({"ground_size": 3, "pairs": [{"A": [1]}]})",
        R"({"ground_size": 3, "pairs": [{"A": [2, 1], "B": []}]})",
        R"({"ground_size": 3, "pairs": [{"A": [1, 1], "B": []}]})",
        R"({"ground_size": 3, "pairs": [{"A": [4], "B": []}]})",
        R"({"ground_size": 3, "pairs": [{"A": [0], "B": []}]})",
        R"({"ground_size": 3, "pairs": [{"A": ["1"], "B": []}]})",
        R"({"ground_size": 3, "pairs": {}})",
        R"([1, 2, 3])",
    };
    for (const char* text : bad) {
        EXPECT_THROW(set_system_from_json(parse_json_text(text)), ParseError) << text;
    }
    EXPECT_THROW(parse_json_text("{\"ground_size\": 3,"), ParseError);
    EXPECT_THROW(set_system_from_json(parse_json_text(R"({"ground_size": 65, "pairs": []})")), CapacityError);
}

TEST(Malformed, Subspaces) {
    const char* bad[] = {
        R"({"basis": []})",
        R"({"ambient_dim": 2, "basis": [[1, 0, 0]]})",
        R"({"ambient_dim": 2, "basis": [[1, 2], [2, 4]]})",
        R"({"ambient_dim": 2, "basis": [[1, 0.5]]})",
        R"({"ambient_dim": 2, "basis": [1, 0]})",
    };
    for (const char* text : bad) {
        EXPECT_THROW(subspace_from_json(parse_json_text(text)), ParseError) << text;
    }
    EXPECT_THROW(subspace_system_from_json(parse_json_text(
                     R"({"ambient_dim": 3, "pairs": [{"U": {"ambient_dim": 2, "basis": []},
                                                       "V": {"ambient_dim": 2, "basis": []}}]})")),
                 ParseError);
}

TEST(Malformed, Checkpoint) {
    const auto path = scratch("setpair_io_bad_checkpoint.json");
    SearchConfig c;
    c.ground_size = 2;
    RunOptions options;
    options.checkpoint_path = path.string();
    write_text_file(path.string(), "{\"format\": \"something-else\"}\n");
    EXPECT_THROW(max_furedi_sum(c, options), ParseError);
    write_text_file(path.string(), "not json");
    EXPECT_THROW(max_furedi_sum(c, options), ParseError);
    std::filesystem::remove(path);
}

TEST(Malformed, MissingFile) {
    EXPECT_THROW(read_json_file("/nonexistent/setpair.json"), ParseError);
}

}  // namespace
}  // namespace setpair
