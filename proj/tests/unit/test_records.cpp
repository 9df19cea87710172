#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "diamlaw/records.hpp"

namespace diamlaw {
namespace {

TEST(Records, FormatNumber) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Records, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_row({"x", "1,2", ""}), "x,\"1,2\",\n");
}

TEST(Records, Basename) {
  EXPECT_EQ(record_basename("limit", 0.5, 200000, 7), "limit_a0.5_n200000_seed7");
  EXPECT_EQ(record_basename("tail", 0.25, 100000000, 2026), "tail_a0.25_n100000000_seed2026");
}

TEST(Records, CsvBodyDropsComments) {
  EXPECT_EQ(csv_body("# run at noon\n# seed 1\nx,y\n1,2\n"), "x,y\n1,2\n");
  EXPECT_EQ(csv_body("x,y\n#1,2\n"), "x,y\n#1,2\n");
}

TEST(Records, ConstantsRoundTrip) {
  ConstantEstimate e;
  e.value = 8.844;
  e.std_error = 0.01;
  e.method = IntegralMethod::mc5d;
  e.a = 0.5;
  e.budget = 100000000;
  e.hits = 12345;
  e.master_seed = 9;
  const std::string text = constants_json(e);
  EXPECT_NE(text.find("\"Lambda_a\""), std::string::npos);
  EXPECT_NE(text.find("\"K_a\""), std::string::npos);
  const ConstantEstimate back = constants_from_json(text);
  EXPECT_EQ(back.value, e.value);
  EXPECT_EQ(back.std_error, e.std_error);
  EXPECT_EQ(back.method, e.method);
  EXPECT_EQ(back.budget, e.budget);
  EXPECT_EQ(back.hits, e.hits);
  EXPECT_EQ(back.master_seed, e.master_seed);

  e.method = IntegralMethod::reduced3d;
  e.coarse_value = 8.8;
  e.converged = false;
  const ConstantEstimate q = constants_from_json(constants_json(e));
  EXPECT_EQ(q.method, IntegralMethod::reduced3d);
  EXPECT_EQ(q.coarse_value, 8.8);
  EXPECT_FALSE(q.converged);
  EXPECT_THROW(constants_from_json("{\"a\": 1}"), std::runtime_error);
  EXPECT_THROW(constants_from_json("not json"), std::runtime_error);
}

TEST(Records, TailCsvColumns) {
  TailCurve c;
  c.a = 0.5;
  TailPoint p;
  p.eps = 0.1;
  p.pairs = 10;
  p.hits = 3;
  p.prob = 0.3;
  p.in_fit = true;
  c.points.push_back(p);
  const std::string csv = csv_body(to_csv(c));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "eps,pairs,hits,window_mass,prob,std_error,smoothed,marginal_prob,"
            "marginal_std_error,clipped,in_fit,flagged");
  EXPECT_NE(csv.find("\n0.10000000000000001,10,3,"), std::string::npos);
}

TEST(Records, JsonEmbedsConfig) {
  ChenSteinReport r;
  r.a = 0.5;
  r.t = 1.0;
  const std::string j = to_json(r, "{\"seed\": 3}");
  EXPECT_NE(j.find("\"config\""), std::string::npos);
  EXPECT_NE(j.find("\"seed\""), std::string::npos);
}

}  // namespace
}  // namespace diamlaw
