#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "raa/pipeline.hpp"
#include "raa/road.hpp"

namespace raa {

struct DatasetMetadata {
  std::string source = "unknown";
  std::string attribution;
};

struct Dataset {
  std::map<std::string, RoadSegment> segments;
  std::map<std::string, CollectedSet> collected;
  DatasetMetadata metadata;

  /// Every collected set names a known segment, ground truth matches the
  /// collected size, and every polyline is valid. Throws DataError.
  void validate() const;
};

struct DatasetPaths {
  std::filesystem::path segments;
  std::filesystem::path collected;
  std::optional<std::filesystem::path> truth;
};

/// Reads the segment, collected and optional ground-truth CSV files.
///
/// segments:  segment_id,point_index,lat,lon,is_intersection,spot_type,shape_class
/// collected: segment_id,spot_index,lat,lon
/// truth:     segment_id,spot_index,lat,lon
///
/// Lines starting with '#' are comments; a leading comment of the form
/// `# source=<tag>; attribution=<text>; ...` fills the metadata. Fields are
/// plain comma-separated values without quoting. Throws DataError with the
/// file name and line number on malformed input.
Dataset load_dataset(const DatasetPaths& paths);

/// Reads only the segment file; fills `metadata` from its leading comment
/// when given.
std::map<std::string, RoadSegment> load_segments(const std::filesystem::path& path,
                                                 DatasetMetadata* metadata = nullptr);

/// Writes the dataset in canonical form (sorted ids, shortest round-trip
/// number formatting). The truth file is written only when a path is given.
void save_dataset(const Dataset& dataset, const DatasetPaths& paths);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Parent directories are created. Throws DataError on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Collected points keyed by segment from a file in the collected schema.
std::map<std::string, std::vector<GeoPoint>> load_point_file(const std::filesystem::path& path);

}  // namespace raa
