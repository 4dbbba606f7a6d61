#include <gtest/gtest.h>

#include <sstream>

#include "fll/compare.hpp"
#include "fll/laws.hpp"
#include "fll/plot.hpp"
#include "fll/report.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace fll;

namespace {

RankedDistribution from_percent(const std::array<double, 26>& column) {
  RankedDistribution d;
  for (double v : column) d.ratios.push_back(v / 100.0);
  return d;
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
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST(Compare, IdenticalInputsHaveZeroMse) {
  const auto law = fll_prediction(26);
  const auto r = compare(law, law);
  EXPECT_EQ(r.mse, 0.0);
  EXPECT_EQ(r.rank_count(), 26u);
}

TEST(Compare, ReferenceColumnsGiveExpectedMse) {
  const auto r = compare(from_percent(oracle::table_md), from_percent(oracle::table_fll));
  EXPECT_NEAR(r.mse, oracle::mse_percent(oracle::table_md, oracle::table_fll), 1e-18);
  EXPECT_NEAR(r.mse, 1.6e-5, 0.1e-5);
}

TEST(Compare, MseIsMeanOfSquaredResidualsAndSymmetric) {
  const RankedDistribution a{{0.6, 0.3, 0.1}, {}, Ordering::by_rank};
  const RankedDistribution b{{0.5, 0.4, 0.1}, {}, Ordering::by_rank};
  const auto ab = compare(a, b);
  const auto ba = compare(b, a);
  double s = 0;
  for (double r : ab.residuals) s += r * r;
  EXPECT_NEAR(ab.mse, s / 3.0, 1e-15);
  EXPECT_EQ(ab.mse, ba.mse);
  EXPECT_NEAR(ab.residuals[0], 0.1, 1e-15);
}

TEST(Compare, RankMismatchThrows) {
  EXPECT_THROW(compare(fll_prediction(26), fll_prediction(30)), domain_error);
}

TEST(Compare, DigitsAlignByLabel) {
  const auto benford = benford_prediction(10);
  auto other = benford;
  other.labels[0] = "x";
  EXPECT_THROW(compare(other, benford), domain_error);
  EXPECT_EQ(compare(benford, benford).mse, 0.0);
}

TEST(Report, NumbersUseTwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.1662627896213), "0.166262789621");
  EXPECT_EQ(format_number(1e-9), "1e-09");
  EXPECT_EQ(round_significant(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(percent(0.16626), 16.6);
}

TEST(Report, CsvAndJsonCarryIdenticalNumbers) {
  const auto report = compare(from_percent(oracle::table_md), fll_prediction(26));
  const auto rows = parse_csv(rank_table_csv(report));
  const auto json = rank_table_json(report);
  ASSERT_EQ(rows.size(), 27u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"rank", "label", "observed", "predicted", "residual"}));
  for (std::size_t i = 0; i < 26; ++i) {
    const auto& row = rows[i + 1];
    const auto& j = json["rows"][i];
    EXPECT_EQ(std::stod(row[2]), j["observed"].get<double>());
    EXPECT_EQ(std::stod(row[3]), j["predicted"].get<double>());
    EXPECT_EQ(std::stod(row[4]), j["residual"].get<double>());
    EXPECT_EQ(format_number(j["predicted"].get<double>()), row[3]);
  }
}

TEST(Report, FitRecordRoundTrips) {
  RgfFit fit;
  fit.params = rgf_params(0.0123456789012345, 1.8);
  fit.residuals = {1e-12, 2e-9, 3.5e-8};
  fit.iterations = 42;
  const auto kv = parse_key_values(fit_record_text(fit));
  EXPECT_EQ(std::stod(kv.at("b")), round_significant(fit.params.b));
  EXPECT_EQ(std::stod(kv.at("gamma")), 1.8);
  EXPECT_EQ(std::stod(kv.at("A")), round_significant(fit.params.A));
  EXPECT_EQ(kv.at("iterations"), "42");
  const auto json = fit_record_json(fit);
  EXPECT_EQ(json["b"].get<double>(), std::stod(kv.at("b")));
  EXPECT_EQ(json["residual_top"].get<double>(), std::stod(kv.at("residual_top")));
  const auto rows = parse_csv(fit_record_csv(fit));
  EXPECT_EQ(rows[0][0], "A");
  EXPECT_EQ(rows[1][1], kv.at("b"));
}

TEST(Report, FrequencyTable) {
  const std::vector<std::uint64_t> sizes{1, 1, 2, 5};
  const auto dist = FrequencyDistribution::from_sizes(sizes);
  const auto params = rgf_params(0.3, 1.0);
  const auto rows = parse_csv(frequency_table_csv(dist, &params));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"k", "count", "predicted"}));
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_EQ(rows[1][1], "2");
  EXPECT_EQ(std::stod(rows[1][2]), round_significant(4 * rgf_pmf(params, 1)));
  EXPECT_EQ(parse_csv(frequency_table_csv(dist))[1][2], "");
}

TEST(Report, CsvFieldQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(OutputSet, RollsBackUnlessCommitted) {
  TempDir dir;
  {
    OutputSet out(dir.path());
    out.write("a.csv", "x\n");
    out.write("b.json", "{}\n");
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "a.csv"));
  }
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "a.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "b.json"));
  {
    OutputSet out(dir.path());
    out.write("c.csv", "y\n");
    out.commit();
  }
  EXPECT_EQ(TempDir::read(dir.path() / "c.csv"), "y\n");
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "c.csv.tmp"));
}

TEST(Plot, DeterministicSvg) {
  const auto report = compare(from_percent(oracle::table_md), fll_prediction(26));
  const std::string a = rank_chart_svg(report, "chart");
  EXPECT_EQ(a, rank_chart_svg(report, "chart"));
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("<circle"), std::string::npos);
  EXPECT_NE(a.find("fill=\"none\""), std::string::npos);
}

TEST(Plot, ZeroResidualChartStillHasBothSeries) {
  const auto law = fll_prediction(26);
  const std::string svg = rank_chart_svg(compare(law, law), "same");
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_NE(svg.find("<rect x="), std::string::npos);
}

TEST(Plot, LogLogFrequencyPlot) {
  const std::vector<std::uint64_t> sizes{1, 1, 1, 2, 3, 10, 40, 200};
  const auto dist = FrequencyDistribution::from_sizes(sizes);
  const auto params = rgf_params(0.01, 1.5);
  const std::string svg = frequency_plot_svg(dist, &params, "freq & fit");
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("freq &amp; fit"), std::string::npos);
  EXPECT_EQ(svg, frequency_plot_svg(dist, &params, "freq & fit"));
}
