#include <gtest/gtest.h>

#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

#include "compton/io.hpp"

using namespace compton;

TEST(FormatDouble, RoundTrips)
{
  for (double x : {0.0, 1.0, -2.5, std::numbers::pi, 1e-300, 6.02214076e23, 0.1}) {
    EXPECT_EQ(std::strtod(io::format_double(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(io::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(Checksum, KnownVectors)
{
  EXPECT_EQ(io::fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(io::fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(io::fnv1a64("foobar"), 0x85944171f73967e8ull);
  EXPECT_EQ(io::hex64(0xabcull), "0000000000000abc");
}

TEST(ScanCsv, Layout)
{
  auto s = ScanSpec::fig4();
  s.rows = s.cols = 5;
  const auto r = run_scan(s);
  const auto csv = io::scan_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line + "\n", io::kCsvHeader);
  std::size_t rows = 0, holes = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10);
    if (line.find(",nan,") != std::string::npos) {
      ++holes;
      EXPECT_EQ(line.find(",none"), std::string::npos);
    }
  }
  EXPECT_EQ(rows, 25u);
  EXPECT_EQ(holes, r.hole_count());
  EXPECT_NE(csv.find("degenerate_forward"), std::string::npos);
}

TEST(ScanMetadata, Contents)
{
  const auto r = run_scan(ScanSpec::fig4());
  const auto csv = io::scan_csv(r);
  const auto meta = io::scan_metadata(r, "fig4.csv", io::fnv1a64(csv));
  EXPECT_EQ(meta["points"], 181u * 181u);
  EXPECT_EQ(meta["holes"], r.hole_count());
  EXPECT_EQ(meta["data_file"], "fig4.csv");
  EXPECT_EQ(meta["data_checksum_fnv1a64"], io::hex64(io::fnv1a64(csv)));
  EXPECT_EQ(meta["spec"]["figure"], "4");
  EXPECT_EQ(meta["spec"]["conventions"]["levi_civita_0123"], 1);
  ASSERT_TRUE(meta.contains("jump_points"));
  EXPECT_EQ(meta["jump_points"].size(), r.jumps.size());
  EXPECT_EQ(meta["holes_by_code"]["degenerate_forward"], 1);
}

TEST(StructuredRecords, HolesHaveNoValues)
{
  auto s = ScanSpec::fig4();
  s.rows = s.cols = 3;
  const auto r = run_scan(s);
  const auto rec = io::scan_records(r);
  ASSERT_EQ(rec.size(), 9u);
  EXPECT_EQ(rec[0]["error"], "degenerate_forward");
  EXPECT_FALSE(rec[0].contains("values"));
  EXPECT_TRUE(rec[4].contains("values"));
  EXPECT_EQ(rec[4]["values"]["up_R"].get<double>(), r.points[4].value[0]);
  EXPECT_EQ(rec[4]["raw"]["up_R"].get<double>(), r.points[4].raw[0]);
}

TEST(PointJson, AnchorRecord)
{
  const auto j = io::to_json(point_report(anchor_config()));
  EXPECT_EQ(j["error"], "none");
  EXPECT_NEAR(j["quad"]["up_R"].get<double>(), 4.0, 1e-12);
  EXPECT_NEAR(j["concurrence"]["c_max"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["concurrence"]["is_bell"], true);
  EXPECT_NEAR(j["klein_nishina"].get<double>(), 5.0, 1e-12);
  EXPECT_NEAR(j["momenta"]["pbar"][3].get<double>(), 1.0, 1e-15);
}

TEST(PointJson, DegenerateRecord)
{
  const auto j = io::to_json(point_report({1.0, 1.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(j["error"], "degenerate_forward");
  EXPECT_FALSE(j.contains("quad"));
}

TEST(CalibrationJson, Table)
{
  const auto j = io::to_json(calibrate());
  EXPECT_EQ(j["cases"].size(), 8u);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["passing_assignments"], 4u);
}
