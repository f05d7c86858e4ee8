#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinbeam/config.hpp"
#include "spinbeam/errors.hpp"
#include "spinbeam/runner.hpp"
#include "spinbeam/scenarios.hpp"
#include "spinbeam/serialize.hpp"
#include "spinbeam/tables.hpp"

using namespace spinbeam;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string scratch_dir(const std::string& tag) {
    const auto d = std::filesystem::temp_directory_path() / ("spinbeam_test_" + tag);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d.string();
}

const char* kMinimal = R"({"name": "c", "beams": [{"name": "b", "rho": 2700, "S": 3.14e-4, "l": 50, "E": 7e10,
  "nu": 0.33, "Jy": 7.85e-7, "Jz": 7.85e-7, "Jpx": 1.57e-6}], "analyses": [{"type": "modal"}]})";

}  // namespace

TEST(Serialize, FloatFormatting) {
    EXPECT_EQ(format_double(0.1, 17), "0.10000000000000001");
    EXPECT_EQ(format_double(INFINITY, 17), "inf");
    EXPECT_EQ(format_double(-INFINITY, 17), "-inf");
    EXPECT_EQ(format_double(NAN, 17), "nan");
    EXPECT_EQ(CsvTable::number(3.5160206796), "3.51602068");
}

TEST(Serialize, JsonRoundTripKeepsFullPrecision) {
    nlohmann::ordered_json j;
    j["a"] = 1.0 / 3.0;
    j["b"] = {std::sqrt(2.0), -1e-300, 12345.678901234567};
    j["n"] = 7;
    const auto back = nlohmann::ordered_json::parse(to_json_text(j));
    EXPECT_EQ(back["a"].get<double>(), 1.0 / 3.0);
    EXPECT_EQ(back["b"][0].get<double>(), std::sqrt(2.0));
    EXPECT_EQ(back["b"][1].get<double>(), -1e-300);
    EXPECT_EQ(back["n"].get<int>(), 7);
}

TEST(Serialize, CsvQuotingAndWidth) {
    CsvTable t;
    t.header = {"a", "b,c"};
    t.add_row({"1", "say \"x\""});
    EXPECT_EQ(to_csv(t), "a,\"b,c\"\n1,\"say \"\"x\"\"\"\n");
    EXPECT_THROW(t.add_row({"1"}), std::invalid_argument);
}

TEST(Config, MinimalDocumentParses) {
    const ScenarioConfig c = parse_scenario(kMinimal);
    EXPECT_EQ(c.name, "c");
    EXPECT_EQ(c.output_prefix, "c");
    ASSERT_EQ(c.beams.size(), 1u);
    EXPECT_EQ(c.beams[0].elements, 1);
}

TEST(Config, UnknownKeysAreRejectedWithPointer) {
    std::string doc = kMinimal;
    doc.insert(doc.find("\"l\""), "\"length\": 3, ");
    try {
        parse_scenario(doc);
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("/beams/0"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_scenario("{"), SchemaError);
    EXPECT_THROW(parse_scenario(R"({"name": "x", "analyses": []})"), SchemaError);
    EXPECT_THROW(parse_scenario(R"({"name": "x", "analyses": [{"type": "table", "kind": "T9"}]})"), SchemaError);
}

TEST(Config, BuiltinsParse) {
    for (const auto& n : builtin_scenario_names()) {
        const ScenarioConfig c = resolve_scenario(n);
        EXPECT_FALSE(c.analyses.empty()) << n;
        EXPECT_NO_THROW(build_graph(c).validate()) << n;
    }
    EXPECT_THROW(resolve_scenario("no-such-scenario"), SchemaError);
}

TEST(Runner, ChannelAndGridParsing) {
    const ChannelSelection s = parse_channel("Tin2:wdot2", "hub");
    EXPECT_EQ(s.input_port, "hub.B");
    EXPECT_EQ(s.input_component, 4);
    EXPECT_EQ(s.output_component, 4);
    EXPECT_EQ(parse_channel("Fin1:th3", "hub").output_component, 17);
    EXPECT_THROW(parse_channel("Tin4:wdot2", "hub"), SchemaError);
    const auto g = parse_grid("log:1e-3:1e3:7");
    ASSERT_EQ(g.size(), 7u);
    EXPECT_DOUBLE_EQ(g.front(), 1e-3);
    EXPECT_NEAR(g[3], 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(g.back(), 1e3);
    EXPECT_THROW(parse_grid("log:0:1:3"), SchemaError);
    EXPECT_THROW(parse_grid("lin:2:1:3"), SchemaError);
}

TEST(Runner, TableOneFirstRow) {
    const CsvTable t = generate_table(TableKind::T1);
    EXPECT_EQ(t.header[1], "In-plane bending 1st");
    ASSERT_EQ(t.rows.size(), 6u);
    const std::vector<double> ref{3.5160, 22.1578, 63.3466, 281.5963};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::stod(t.rows[0][1 + i]), ref[i], 5e-4 * ref[i]);
}

TEST(Runner, TablesAreDeterministic) {
    EXPECT_EQ(to_csv(generate_table(TableKind::T1)), to_csv(generate_table(TableKind::T1)));
}

TEST(Runner, ThorLikeEquilibriumReports) {
    const std::string dir = scratch_dir("thor");
    ScenarioConfig c = resolve_scenario("thor-like");
    c.analyses.erase(std::remove_if(c.analyses.begin(), c.analyses.end(),
                                    [](const AnalysisSpec& a) { return a.type != AnalysisType::EquilibriumReport; }),
                     c.analyses.end());
    run_scenario(c, dir);
    auto j = nlohmann::json::parse(slurp(dir + "/thor-like_equilibrium.json"));
    for (const auto& n : j["nodes"])
        for (const auto& v : n["W_C"]) EXPECT_EQ(v.get<double>(), 0.0);

    apply_overrides(c, {0.5, 5.0});
    run_scenario(c, dir);
    j = nlohmann::json::parse(slurp(dir + "/thor-like_equilibrium.json"));
    bool seen = false;
    for (const auto& n : j["nodes"])
        if (n["name"] == "tip2") {
            EXPECT_NEAR(n["W_P"][0].get<double>(), 65.0, 1e-9);
            seen = true;
        }
    EXPECT_TRUE(seen);
}

TEST(Runner, ModalJsonRoundTrip) {
    const std::string dir = scratch_dir("modal");
    ScenarioConfig c = parse_scenario(kMinimal);
    const auto files = run_scenario(c, dir);
    ASSERT_EQ(files.size(), 1u);
    const auto j = nlohmann::json::parse(slurp(files[0]));
    const ModalResult m = modal_frequencies(scenario_model(c, 0.0));
    ASSERT_EQ(j["modes"].size(), m.modes.size());
    for (std::size_t i = 0; i < m.modes.size(); ++i) {
        EXPECT_EQ(j["modes"][i]["frequency"].get<double>(), m.modes[i].frequency);
        EXPECT_EQ(j["modes"][i]["lambda"][1].get<double>(), m.modes[i].lambda.imag());
    }
    const std::string first = slurp(files[0]);
    run_scenario(c, dir);
    EXPECT_EQ(first, slurp(files[0]));
}

TEST(Runner, OverspinRaisesEquilibriumInvalid) {
    ScenarioConfig c = resolve_scenario("thor-like");
    apply_overrides(c, {200.0, std::nullopt});
    try {
        run_scenario(c, scratch_dir("bad"));
        FAIL();
    } catch (const EquilibriumInvalid& e) {
        const auto j = equilibrium_error_json(e);
        EXPECT_EQ(j["q_f"].size(), 10u);
    }
}
