// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <limits>

#include <json.hpp>

#include "lipderiv/error.hpp"
#include "lipderiv/io.hpp"
#include "lipderiv/zoo.hpp"

using namespace lipderiv;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("numbers round-trip at 17 digits with infinities") {
  CHECK(io::parse_number("1.5") == 1.5);
  CHECK(io::parse_number(" -2e-3 ") == -2e-3);
  CHECK(io::parse_number("+4") == 4.0);
  CHECK(io::parse_number("inf") == kInf);
  CHECK(io::parse_number("-Infinity") == -kInf);
  CHECK_THROWS_AS(io::parse_number("nan"), InputError);
  CHECK_THROWS_AS(io::parse_number("1.2.3"), InputError);
  CHECK_THROWS_AS(io::parse_number(""), InputError);
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -7.25, kInf, -kInf})
    CHECK(io::parse_number(io::format_number(v)) == v);
  CHECK(io::format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("point cloud parsing") {
  auto pc = io::parse_point_cloud("id,x1,x2,val\n# comment\na,0,0,1\n\nb,1,0,inf\n", "t.csv");
  CHECK(pc.ids == std::vector<std::string>{"a", "b"});
  CHECK(pc.dim == 2);
  CHECK(pc.value_dim == 1);
  CHECK(pc.values[1] == kInf);
  auto bare = io::parse_point_cloud("id,v\na,1\n", "t.csv");
  CHECK(bare.dim == 0);
  CHECK(bare.value_dim == 1);
}

TEST_CASE("malformed point cloud rows are named") {
  CHECK(error_of([] { io::parse_point_cloud("id,x1,v\na,0,1\nb,zz,2\n", "pts.csv"); }).find("pts.csv: row 3") == 0);
  CHECK(error_of([] { io::parse_point_cloud("id,x1,v\na,0\n", "pts.csv"); }).find("row 2") != std::string::npos);
  CHECK(error_of([] { io::parse_point_cloud("id,x1,v\na,0,1\na,1,1\n", "p"); }).find("duplicate") != std::string::npos);
  CHECK_THROWS_AS(io::parse_point_cloud("x1,v\n0,1\n", "p"), InputError);
  CHECK_THROWS_AS(io::parse_point_cloud("", "p"), InputError);
  CHECK_THROWS_AS(io::parse_point_cloud("id,x1,v\na,inf,1\n", "p"), InputError);
}

TEST_CASE("distance matrix parsing") {
  auto s = io::parse_distance_matrix(",a,b,c\na,0,1,2\nb,1,0,1\nc,2,1,0\n", "d.csv");
  CHECK(s.size() == 3);
  CHECK(s.distance(0, 2) == 2.0);
  CHECK(s.id(1) == "b");
  CHECK(error_of([] { io::parse_distance_matrix(",a,b\na,0,1\nc,1,0\n", "d.csv"); }).find("row 3") != std::string::npos);
  CHECK_THROWS_AS(io::parse_distance_matrix(",a,b\na,0,1\n", "d.csv"), InputError);
}

TEST_CASE("scalar field round trip") {
  auto s = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::discrete({"p", "q", "r"}));
  auto g = io::parse_scalar_field("id,value\nq,inf\np,0.25\nr,-inf\n", "f.csv", s);
  CHECK(g[0] == 0.25);
  CHECK(g[1] == kInf);
  CHECK(io::format_scalar_field(g) == "id,value\np,0.25\nq,inf\nr,-inf\n");
  CHECK_THROWS_AS(io::parse_scalar_field("id,value\np,1\n", "f.csv", s), InputError);
  CHECK(error_of([&] { io::parse_scalar_field("id,value\np,1\nzz,2\n", "f.csv", s); }).find("unknown id") !=
        std::string::npos);
}

TEST_CASE("set family text format") {
  auto f = io::parse_set_family("ground: a,b,c\n{}\na\nb,c\n", "s.txt");
  CHECK(f.ground_size() == 3);
  CHECK(f.size() == 3);
  CHECK(f.contains(0));
  CHECK(f.contains(0b110));
  const std::string text = io::format_set_family(f);
  CHECK(io::parse_set_family(text, "again") == f);
  CHECK(text == "ground: a,b,c\n{}\na\nb,c\n");
  CHECK(error_of([] { io::parse_set_family("ground: a\nz\n", "s.txt"); }).find("row 2") != std::string::npos);
  CHECK_THROWS_AS(io::parse_set_family("a,b\n", "s.txt"), InputError);
}

TEST_CASE("profile csv shape") {
  auto f = sample_on_line([](double u) { return std::abs(u); }, -1.0, 1.0, 0.1);
  auto p = scale_profile(f, RadiusGrid{.r_max = 0.5, .q = 0.5, .steps = 10, .tail_window = 4});
  auto csv = io::format_profile(f, p);
  CHECK(csv.rfind("id,radius,lip_upper,lip_upper_closed,big_below,little_below,little_closed_below,loc\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 21 * 10);
  auto summary = io::format_profile_summary(f, p);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 21);
}

TEST_CASE("point cloud export round trip") {
  auto e = make_entry("square", 0.25);
  auto text = io::format_point_cloud(e.map);
  auto pc = io::parse_point_cloud(text, "zoo");
  CHECK(pc.dim == 1);
  CHECK(pc.value_dim == 1);
  auto dom = std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_embedding(pc.ids, pc.coords, 1, PNorm::L2));
  auto f = io::map_from_cloud(pc, dom, PNorm::L2);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.value(i)[0] == e.map.value(i)[0]);
}

TEST_CASE("json report encodes infinities as strings") {
  SuiteReport rep;
  rep.results.push_back(CheckResult{.name = "a", .status = CheckStatus::Pass, .discrepancy = 0.0, .tolerance = kInf});
  rep.results.push_back(CheckResult{.name = "b", .status = CheckStatus::Skipped, .note = "why"});
  auto doc = nlohmann::json::parse(io::report_json(rep));
  CHECK(doc["passed"] == true);
  CHECK(doc["checks"][0]["tolerance"] == "inf");
  CHECK(doc["checks"][1]["status"] == "skipped");
  CHECK(doc["counts"]["skipped"] == 1);
  CHECK(io::report_table(rep).find("1 passed, 0 failed, 1 skipped") != std::string::npos);
}

TEST_CASE("atomic writes replace the target and leave no temporary") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "lipderiv_io_test";
  fs::create_directories(dir);
  auto path = (dir / "out.csv").string();
  io::write_file_atomic(path, "first\n");
  io::write_file_atomic(path, "second\n");
  CHECK(io::read_file(path) == "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  fs::remove_all(dir);
  CHECK_THROWS_AS(io::read_file((dir / "missing").string()), InputError);
  CHECK_THROWS_AS(io::write_file_atomic((dir / "no" / "such" / "dir.csv").string(), "x"), InputError);
}
