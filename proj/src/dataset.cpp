#include "raa/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "raa/errors.hpp"

namespace raa {

namespace {

constexpr std::string_view kSegmentHeader =
    "segment_id,point_index,lat,lon,is_intersection,spot_type,shape_class";
constexpr std::string_view kPointHeader = "segment_id,spot_index,lat,lon";

struct Row {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

struct CsvFile {
  std::string path;
  std::string text;
  std::vector<std::string> comments;
  std::vector<Row> rows;
};

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& msg) {
  throw DataError(path + ":" + std::to_string(line) + ": " + msg);
}

std::unique_ptr<CsvFile> read_csv(const std::filesystem::path& path, std::string_view header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  auto file = std::make_unique<CsvFile>();
  file->path = path.string();
  std::ostringstream buf;
  buf << in.rdbuf();
  file->text = buf.str();

  const std::size_t columns = split(header).size();
  bool saw_header = false;
  std::size_t line_no = 0;
  std::string_view rest(file->text);
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    const std::string_view line = trim_cr(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      file->comments.emplace_back(line.substr(1));
      continue;
    }
    if (!saw_header) {
      if (line != header) {
        fail(file->path, line_no, "expected header '" + std::string(header) + "'");
      }
      saw_header = true;
      continue;
    }
    Row row{line_no, split(line)};
    if (row.fields.size() != columns) {
      fail(file->path, line_no,
           "expected " + std::to_string(columns) + " fields, found " +
               std::to_string(row.fields.size()));
    }
    file->rows.push_back(std::move(row));
  }
  if (!saw_header) fail(file->path, line_no, "missing header row");
  return file;
}

double parse_double(const CsvFile& f, const Row& r, std::size_t col, const char* name) {
  const std::string_view s = r.fields[col];
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    fail(f.path, r.line, std::string("malformed ") + name + " '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_index(const CsvFile& f, const Row& r, std::size_t col, const char* name) {
  const std::string_view s = r.fields[col];
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    fail(f.path, r.line, std::string("malformed ") + name + " '" + std::string(s) + "'");
  }
  return v;
}

GeoPoint parse_geo(const CsvFile& f, const Row& r, std::size_t lat_col) {
  const GeoPoint p{parse_double(f, r, lat_col, "lat"), parse_double(f, r, lat_col + 1, "lon")};
  try {
    validate(p);
  } catch (const InvalidArgument& e) {
    fail(f.path, r.line, e.what());
  }
  return p;
}

std::string checked_id(const CsvFile& f, const Row& r) {
  if (r.fields[0].empty()) fail(f.path, r.line, "empty segment_id");
  return std::string(r.fields[0]);
}

// Sorts indexed rows and checks the indices run 0..n-1.
template <class T>
std::vector<T> ordered(std::vector<std::pair<std::size_t, T>> items, const CsvFile& f,
                       const std::string& id, const std::vector<std::size_t>& lines) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a].first < items[b].first; });
  std::vector<T> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (items[order[i]].first != i) {
      fail(f.path, lines[order[i]],
           "segment '" + id + "' has a missing or repeated index near " +
               std::to_string(items[order[i]].first));
    }
    out.push_back(std::move(items[order[i]].second));
  }
  return out;
}

std::map<std::string, std::vector<GeoPoint>> points_by_segment(const CsvFile& f) {
  std::map<std::string, std::vector<std::pair<std::size_t, GeoPoint>>> raw;
  std::map<std::string, std::vector<std::size_t>> lines;
  for (const Row& r : f.rows) {
    const std::string id = checked_id(f, r);
    raw[id].emplace_back(parse_index(f, r, 1, "spot_index"), parse_geo(f, r, 2));
    lines[id].push_back(r.line);
  }
  std::map<std::string, std::vector<GeoPoint>> out;
  for (auto& [id, items] : raw) out[id] = ordered(std::move(items), f, id, lines[id]);
  return out;
}

DatasetMetadata parse_metadata(const std::vector<std::string>& comments) {
  DatasetMetadata meta;
  if (comments.empty()) return meta;
  std::string_view c(comments.front());
  while (!c.empty() && c.front() == ' ') c.remove_prefix(1);
  while (!c.empty()) {
    const std::size_t sep = c.find("; ");
    const std::string_view item = c.substr(0, sep);
    c = sep == std::string_view::npos ? std::string_view{} : c.substr(sep + 2);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string_view key = item.substr(0, eq);
    const std::string value(item.substr(eq + 1));
    if (key == "source") meta.source = value;
    if (key == "attribution") meta.attribution = value;
  }
  return meta;
}

void check_field(const std::string& s, const char* what) {
  if (s.find_first_of(",\n\r") != std::string::npos) {
    throw DataError(std::string(what) + " '" + s + "' contains a comma or line break");
  }
}

std::string with_metadata(const DatasetMetadata& meta, const std::string& body) {
  check_field(meta.source, "source tag");
  check_field(meta.attribution, "attribution");
  if (meta.source.find("; ") != std::string::npos ||
      meta.attribution.find("; ") != std::string::npos) {
    throw DataError("metadata must not contain '; '");
  }
  return "# source=" + meta.source + "; attribution=" + meta.attribution +
         "; hash=" + fnv1a_hex(body) + "\n" + body;
}

std::string point_body(const std::map<std::string, std::vector<GeoPoint>>& sets) {
  std::string body(kPointHeader);
  body += '\n';
  for (const auto& [id, pts] : sets) {
    check_field(id, "segment id");
    for (std::size_t j = 0; j < pts.size(); ++j) {
      body += id + "," + std::to_string(j) + "," + format_double(pts[j].lat) + "," +
              format_double(pts[j].lon) + "\n";
    }
  }
  return body;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw DataError("cannot create '" + path.parent_path().string() + "': " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw DataError("cannot write '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw DataError("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

std::map<std::string, std::vector<GeoPoint>> load_point_file(const std::filesystem::path& path) {
  return points_by_segment(*read_csv(path, kPointHeader));
}

void Dataset::validate() const {
  for (const auto& [id, seg] : segments) {
    try {
      raa::validate(seg);
    } catch (const InvalidArgument& e) {
      throw DataError("segment '" + id + "': " + e.what());
    }
  }
  for (const auto& [id, set] : collected) {
    if (!segments.contains(id)) {
      throw DataError("collected points reference unknown segment '" + id + "'");
    }
    if (set.points.empty()) throw DataError("segment '" + id + "' has no collected points");
    if (set.ground_truth && set.ground_truth->size() != set.points.size()) {
      throw DataError("segment '" + id + "': " + std::to_string(set.ground_truth->size()) +
                      " ground-truth points vs " + std::to_string(set.points.size()) +
                      " collected points");
    }
  }
}

std::map<std::string, RoadSegment> load_segments(const std::filesystem::path& path,
                                                 DatasetMetadata* metadata) {
  std::map<std::string, RoadSegment> segments;
  const auto seg_file = read_csv(path, kSegmentHeader);
  if (metadata != nullptr) *metadata = parse_metadata(seg_file->comments);

  struct Vertex {
    GeoPoint p;
    bool intersection = false;
  };
  std::map<std::string, std::vector<std::pair<std::size_t, Vertex>>> raw;
  std::map<std::string, std::vector<std::size_t>> lines;
  for (const Row& r : seg_file->rows) {
    const std::string id = checked_id(*seg_file, r);
    const std::size_t index = parse_index(*seg_file, r, 1, "point_index");
    const GeoPoint p = parse_geo(*seg_file, r, 2);
    const std::string_view flag = r.fields[4];
    if (flag != "0" && flag != "1") fail(seg_file->path, r.line, "is_intersection must be 0 or 1");
    const auto kind = parse_spot_kind(r.fields[5]);
    if (!kind) fail(seg_file->path, r.line, "unknown spot_type '" + std::string(r.fields[5]) + "'");
    const auto shape = parse_shape_class(r.fields[6]);
    if (!shape) {
      fail(seg_file->path, r.line, "unknown shape_class '" + std::string(r.fields[6]) + "'");
    }

    auto [it, inserted] = segments.try_emplace(id);
    RoadSegment& seg = it->second;
    if (inserted) {
      seg.id = id;
      seg.spot_kind = *kind;
      seg.shape = *shape;
    } else if (seg.spot_kind != *kind || seg.shape != *shape) {
      fail(seg_file->path, r.line, "segment '" + id + "' changes spot_type or shape_class");
    }
    raw[id].emplace_back(index, Vertex{p, flag == "1"});
    lines[id].push_back(r.line);
  }
  for (auto& [id, items] : raw) {
    const std::vector<Vertex> verts = ordered(std::move(items), *seg_file, id, lines[id]);
    RoadSegment& seg = segments[id];
    for (const Vertex& v : verts) {
      seg.polyline.push_back(v.p);
      seg.intersection.push_back(v.intersection);
    }
  }

  for (const auto& [id, seg] : segments) {
    try {
      raa::validate(seg);
    } catch (const InvalidArgument& e) {
      throw DataError(path.string() + ": segment '" + id + "': " + e.what());
    }
  }
  return segments;
}

Dataset load_dataset(const DatasetPaths& paths) {
  Dataset ds;
  ds.segments = load_segments(paths.segments, &ds.metadata);
  for (auto& [id, pts] : points_by_segment(*read_csv(paths.collected, kPointHeader))) {
    ds.collected[id] = CollectedSet{id, std::move(pts), std::nullopt};
  }
  if (paths.truth) {
    for (auto& [id, pts] : points_by_segment(*read_csv(*paths.truth, kPointHeader))) {
      auto it = ds.collected.find(id);
      if (it == ds.collected.end()) {
        throw DataError("ground truth references segment '" + id + "' with no collected points");
      }
      it->second.ground_truth = std::move(pts);
    }
  }
  ds.validate();
  return ds;
}

void save_dataset(const Dataset& dataset, const DatasetPaths& paths) {
  dataset.validate();
  std::string seg_body(kSegmentHeader);
  seg_body += '\n';
  for (const auto& [id, seg] : dataset.segments) {
    check_field(id, "segment id");
    for (std::size_t i = 0; i < seg.polyline.size(); ++i) {
      seg_body += id + "," + std::to_string(i) + "," + format_double(seg.polyline[i].lat) + "," +
                  format_double(seg.polyline[i].lon) + "," + (seg.intersection[i] ? "1" : "0") +
                  "," + std::string(to_string(seg.spot_kind)) + "," +
                  std::string(to_string(seg.shape)) + "\n";
    }
  }
  std::map<std::string, std::vector<GeoPoint>> collected;
  std::map<std::string, std::vector<GeoPoint>> truth;
  for (const auto& [id, set] : dataset.collected) {
    collected[id] = set.points;
    if (set.ground_truth) truth[id] = *set.ground_truth;
  }

  const std::string seg_text = with_metadata(dataset.metadata, seg_body);
  const std::string col_text = with_metadata(dataset.metadata, point_body(collected));
  const std::string truth_text =
      paths.truth ? with_metadata(dataset.metadata, point_body(truth)) : std::string{};
  write_file_atomic(paths.segments, seg_text);
  write_file_atomic(paths.collected, col_text);
  if (paths.truth) write_file_atomic(*paths.truth, truth_text);
}

}  // namespace raa
