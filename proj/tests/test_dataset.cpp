#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "raa/dataset.hpp"
#include "raa/errors.hpp"

using namespace raa;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("raa_dataset_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSegments =
    "segment_id,point_index,lat,lon,is_intersection,spot_type,shape_class\n"
    "s1,0,39.9,116.4,0,parallel,straight\n"
    "s1,1,39.9,116.401,1,parallel,straight\n";

}  // namespace

TEST_CASE("minimal dataset loads") {
  const fs::path dir = scratch("minimal");
  write(dir / "segments.csv", kSegments);
  write(dir / "collected.csv", "segment_id,spot_index,lat,lon\ns1,0,39.90001,116.4002\n");
  const Dataset d = load_dataset({dir / "segments.csv", dir / "collected.csv", std::nullopt});
  REQUIRE(d.segments.size() == 1);
  const RoadSegment& s = d.segments.at("s1");
  CHECK(s.intersection == std::vector<bool>{false, true});
  CHECK(sample_candidates(s).size() >= 1);
  CHECK(d.collected.at("s1").points.size() == 1);
  CHECK_FALSE(d.collected.at("s1").ground_truth.has_value());
}

TEST_CASE("collected rows must name a known segment") {
  const fs::path dir = scratch("dangling");
  write(dir / "segments.csv", kSegments);
  write(dir / "collected.csv", "segment_id,spot_index,lat,lon\nghost,0,39.9,116.4\n");
  try {
    load_dataset({dir / "segments.csv", dir / "collected.csv", std::nullopt});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("malformed rows report file and line") {
  const fs::path dir = scratch("malformed");
  write(dir / "segments.csv", std::string(kSegments) + "s1,2,39.9,not-a-number,0,parallel,straight\n");
  write(dir / "collected.csv", "segment_id,spot_index,lat,lon\n");
  try {
    load_segments(dir / "segments.csv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("segments.csv:4") != std::string::npos);
  }
  write(dir / "bad_kind.csv", "segment_id,point_index,lat,lon,is_intersection,spot_type,shape_class\n"
                              "s1,0,39.9,116.4,0,diagonal,straight\n");
  CHECK_THROWS_AS(load_segments(dir / "bad_kind.csv"), DataError);
  write(dir / "gap.csv", "segment_id,point_index,lat,lon,is_intersection,spot_type,shape_class\n"
                         "s1,0,39.9,116.4,0,parallel,straight\ns1,2,39.9,116.41,0,parallel,straight\n");
  CHECK_THROWS_AS(load_segments(dir / "gap.csv"), DataError);
}

TEST_CASE("save then load then save is byte identical") {
  const fs::path dir = scratch("roundtrip");
  const auto corpus = synth_corpus(3, 2, 9);
  Dataset d;
  d.metadata = {"synthetic", "generated corpus"};
  for (const auto& s : corpus) {
    d.segments[s.segment.id] = s.segment;
    d.collected[s.segment.id] = s.collected;
  }
  const DatasetPaths a{dir / "a" / "segments.csv", dir / "a" / "collected.csv", dir / "a" / "truth.csv"};
  const DatasetPaths b{dir / "b" / "segments.csv", dir / "b" / "collected.csv", dir / "b" / "truth.csv"};
  save_dataset(d, a);
  const Dataset loaded = load_dataset(a);
  CHECK(loaded.metadata.source == "synthetic");
  CHECK(loaded.metadata.attribution == "generated corpus");
  save_dataset(loaded, b);
  CHECK(slurp(a.segments) == slurp(b.segments));
  CHECK(slurp(a.collected) == slurp(b.collected));
  CHECK(slurp(*a.truth) == slurp(*b.truth));
  for (const auto& [id, seg] : d.segments) CHECK(loaded.segments.at(id).polyline == seg.polyline);
  for (const auto& [id, col] : d.collected) CHECK(loaded.collected.at(id).points == col.points);
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.0, -0.0, 1.0, 0.1, 39.90001234567891, 116.40000000000001, -1e-300, 1e300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("fnv digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("atomic writes create directories and replace content") {
  const fs::path dir = scratch("atomic");
  const fs::path target = dir / "nested" / "out.txt";
  write_file_atomic(target, "first");
  write_file_atomic(target, "second");
  CHECK(slurp(target) == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(target.parent_path())) ++entries;
  CHECK(entries == 1);
}
