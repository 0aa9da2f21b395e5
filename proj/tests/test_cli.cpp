#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "bsshift/cli.hpp"

using bsshift::Json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "bsshift");
  std::ostringstream out, err;
  const int code = bsshift::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliShift, ExtrapolatedTableValue) {
  const CliRun r = run({"shift", "--omega0", "1", "--amplitude", "8.5", "--method", "extrap", "--order", "8",
                     "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "method,omega0,amplitude,shift,resonance\nEXTRAP8,1.000000,8.500000,2.639640,3.639640\n");
}

TEST(CliShift, ZeroAmplitude) {
  const CliRun r = run({"--format", "csv", "shift", "--omega0", "1", "--amplitude", "0", "--method", "extrap",
                     "--order", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("EXTRAP6,1.000000,0.000000,0.000000,1.000000"), std::string::npos);
}

TEST(CliShift, Homogeneity) {
  const CliRun r = run({"shift", "--omega0", "2", "--amplitude", "17", "--method", "extrap8", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(",5.279280,"), std::string::npos) << r.out;
}

TEST(CliShift, JsonSchemaAndRoundTrip) {
  const CliRun r = run({"shift", "--omega0", "1", "--amplitude", "1", "--method", "floquet,extrap8,pt,rwa,asymptotic",
                     "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("version"), bsshift::cli::kVersion);
  ASSERT_TRUE(j.at("config").is_object());
  const auto& rows = j.at("rows");
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& row : rows) {
    for (const char* key : {"method", "omega0", "amplitude", "shift", "resonance", "diagnostics"}) {
      EXPECT_TRUE(row.contains(key)) << key;
    }
    EXPECT_DOUBLE_EQ(row.at("resonance").get<double>(), 1.0 + row.at("shift").get<double>());
  }
  const auto& floquet = rows[0];
  EXPECT_EQ(floquet.at("method"), "FLOQUET");
  EXPECT_NEAR(floquet.at("shift").get<double>(), 0.063224, 1e-4);
  const auto& d = floquet.at("diagnostics");
  EXPECT_TRUE(d.at("n_photon_final").is_number_integer());
  EXPECT_TRUE(d.at("peak_prob").is_number_float());
  EXPECT_EQ(d.at("bracket").size(), 2u);
  EXPECT_TRUE(d.at("evals").is_number_integer());
  // Printed doubles parse back to the same value.
  EXPECT_EQ(Json::parse(j.dump()), j);
}

TEST(CliShift, FloquetFailureExitsThree) {
  const CliRun r = run({"shift", "--omega0", "1", "--amplitude", "6", "--method", "floquet", "--bracket-width", "1e-6"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("peak_prob"), std::string::npos) << r.err;
}

TEST(CliUsage, BadInputsExitTwo) {
  EXPECT_EQ(run({"shift", "--omega0", "1"}).code, 2);
  EXPECT_EQ(run({"shift", "--omega0", "-1", "--amplitude", "1"}).code, 2);
  EXPECT_EQ(run({"shift", "--omega0", "1", "--amplitude", "1", "--method", "pade"}).code, 2);
  EXPECT_EQ(run({"shift", "--omega0", "1", "--amplitude", "1", "--method", "extrap", "--order", "5"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "coeffs"}).code, 2);
  EXPECT_EQ(run({"coeffs", "--order", "10"}).code, 2);
  EXPECT_EQ(run({"table", "--ratios", "0"}).code, 2);
  EXPECT_EQ(run({"scan", "--a-min", "2", "--a-max", "1"}).code, 2);
  EXPECT_EQ(run({"scan", "--points", "1"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliUsage, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const CliRun v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(bsshift::cli::kVersion), std::string::npos);
}

TEST(CliCoeffs, Listings) {
  const CliRun r6 = run({"coeffs", "--order", "6"});
  ASSERT_EQ(r6.code, 0);
  EXPECT_NE(r6.out.find("1 3/8 33/512 335/65536"), std::string::npos) << r6.out;
  EXPECT_NE(r6.out.find("2.40938"), std::string::npos);
  EXPECT_NE(run({"coeffs", "--order", "2"}).out.find("2.82843"), std::string::npos);
  const CliRun r8 = run({"coeffs", "--order", "8", "--format", "csv"});
  EXPECT_EQ(r8.out, "power,coefficient\n0,1\n2,1/2\n4,15/128\n6,245/16384\n8,943/1048576\ndivisor,2.40304\n");
  const Json j = Json::parse(run({"coeffs", "--order", "8", "--format", "json"}).out);
  const auto& row = j.at("rows").at(0);
  EXPECT_EQ(row.at("order"), 8);
  EXPECT_EQ(row.at("radicand"), Json::parse(R"(["1","1/2","15/128","245/16384","943/1048576"])"));
  EXPECT_NEAR(row.at("divisor").get<double>(), 2.4030, 5e-5);
}

TEST(CliTable, FastModeMatchesGoldenClosedForms) {
  const CliRun r = run({"table", "--format", "csv", "--fast"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  const auto golden = parse_csv(read_file(std::string(BSSHIFT_GOLDEN_DIR) + "/table1.csv"));
  ASSERT_EQ(rows.size(), golden.size());
  EXPECT_EQ(rows[0], (std::vector<std::string>{"ratio", "extrap6", "extrap8"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], golden[i][0]);
    EXPECT_EQ(rows[i][1], golden[i][2]);
    EXPECT_EQ(rows[i][2], golden[i][3]);
  }
}

TEST(CliTable, ParallelismDoesNotChangeOutput) {
  const CliRun serial = run({"--parallel", "1", "table", "--format", "json", "--methods", "numerical,extrap8,pt8",
                          "--ratios", "1,3.5,6"});
  const CliRun parallel = run({"--parallel", "4", "table", "--format", "json", "--methods", "numerical,extrap8,pt8",
                            "--ratios", "1,3.5,6"});
  ASSERT_EQ(serial.code, 0);
  EXPECT_EQ(serial.out, parallel.out);
  const Json j = Json::parse(serial.out);
  EXPECT_EQ(j.at("rows").size(), 3u);
  EXPECT_EQ(j.at("config").at("methods"), Json::parse(R"(["numerical","extrap8","pt8"])"));
}

TEST(CliTable, FailedCellsMarkedErr) {
  const CliRun r = run({"table", "--format", "csv", "--ratios", "1,6", "--bracket-width", "1e-6"});
  EXPECT_EQ(r.code, 3);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2][1], "ERR");
  EXPECT_EQ(rows[2][3], "1.642716");  // remaining cells still computed
}

TEST(CliScan, EndpointsAndOrdering) {
  const CliRun r = run({"scan", "--omega0", "1", "--a-min", "0", "--a-max", "21", "--points", "10", "--methods",
                     "extrap8", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"amplitude", "method", "shift"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"0.000000", "extrap8", "0.000000"}));
  EXPECT_EQ(rows[10], (std::vector<std::string>{"21.000000", "extrap8", "7.780169"}));

  const CliRun two = run({"scan", "--a-min", "0.5", "--a-max", "3", "--points", "2", "--format", "csv"});
  const auto two_rows = parse_csv(two.out);
  ASSERT_EQ(two_rows.size(), 3u);
  EXPECT_EQ(two_rows[1][0], "0.500000");
  EXPECT_EQ(two_rows[2][0], "3.000000");

  const Json j = Json::parse(run({"scan", "--a-min", "1", "--a-max", "30", "--points", "59", "--methods",
                                  "extrap6,extrap8", "--format", "json"})
                                 .out);
  const auto& jr = j.at("rows");
  ASSERT_EQ(jr.size(), 118u);
  for (std::size_t i = 0; i < jr.size(); i += 2) {
    EXPECT_EQ(jr[i].at("method"), "extrap6");
    EXPECT_GE(jr[i + 1].at("shift").get<double>(), jr[i].at("shift").get<double>()) << jr[i].at("amplitude");
  }
}

TEST(CliDeterminism, IdenticalInvocationsIdenticalBytes) {
  const std::vector<std::string> args{"--format", "csv", "table", "--methods", "numerical,extrap6", "--ratios", "1,11"};
  EXPECT_EQ(run(args).out, run(args).out);
}
