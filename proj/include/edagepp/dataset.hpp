#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "edagepp/raster.hpp"
#include "edagepp/scene.hpp"

namespace edagepp {

inline constexpr std::string_view kFormatVersion = "edagepp-v1";
inline constexpr const char* kManifestName = "manifest.jsonl";

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// 8-bit PNG via libpng. Readers throw IoFailure when the file cannot be
// opened and CorruptRecord when it does not decode or has the wrong format.
void write_png(const std::filesystem::path& file, const RgbImage& img);
void write_png(const std::filesystem::path& file, const GrayImage& img);
void write_png(const std::filesystem::path& file, const RasterMask& mask);
RgbImage read_png_rgb(const std::filesystem::path& file);
GrayImage read_png_gray(const std::filesystem::path& file);

// First manifest line.
struct DatasetHeader {
  std::string format{kFormatVersion};
  RasterConfig raster;
  nlohmann::json config = nlohmann::json::object();  // generator snapshot
};

nlohmann::json generator_config_json(const GeneratorConfig& cfg);

// One manifest line per record.
struct ManifestEntry {
  std::uint64_t id = 0;
  std::uint64_t seed = 0;
  double clearance = 0.0;
  double solution_cost = 0.0;
  Vec2 bounds{};
  Point2 start{};
  Point2 goal{};
  Pose2 pose;
  double spacing = 0.0;
  std::string problem_file, space_file, waypoints_file;
  std::vector<Point2> waypoints;
  std::vector<Vec2> tangents;
  std::vector<Obstacle> obstacles;
};

nlohmann::json to_json(const ManifestEntry& e);
// Throws CorruptRecord naming the missing or malformed field.
ManifestEntry entry_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DatasetHeader& h);
// Throws CorruptRecord, including for an unknown format version.
DatasetHeader header_from_json(const nlohmann::json& j);

std::string record_stem(std::uint64_t id);  // zero-padded, 6 digits

// Writes the three rasters of `record` into dir and returns its entry.
// Throws IoFailure.
ManifestEntry write_record(const ProblemRecord& record, const std::filesystem::path& dir);

// Loads the rasters and metadata of one entry. Checks dimensions, binary
// masks, positive cost and cost == polyline length (1e-6); throws
// CorruptRecord naming the violated check, IoFailure for missing files.
ProblemRecord read_record(const ManifestEntry& entry, const std::filesystem::path& dir,
                          const RasterConfig& raster);

// Creates dir, writes the header line and appends one line per record.
// Not thread safe: a single writer owns the manifest.
class DatasetWriter {
public:
  DatasetWriter(const std::filesystem::path& dir, const DatasetHeader& header);
  ManifestEntry write(const ProblemRecord& record);
  std::size_t count() const { return count_; }

private:
  std::filesystem::path dir_;
  std::ofstream manifest_;
  std::size_t count_ = 0;
};

struct Dataset {
  DatasetHeader header;
  std::vector<ManifestEntry> entries;
};

// Parses manifest.jsonl. Throws IoFailure / CorruptRecord.
Dataset read_manifest(const std::filesystem::path& dir);

struct RecordCheck {
  std::uint64_t id = 0;
  bool pass = true;
  std::vector<std::string> failed;  // names of failed checks
  std::string detail;               // read error, if any
};

struct ValidationReport {
  std::vector<RecordCheck> records;
  std::size_t passed = 0;
  double pass_rate() const { return records.empty() ? 0.0 : double(passed) / records.size(); }
};

// Check names used in RecordCheck::failed.
inline constexpr const char* kCheckRead = "read";
inline constexpr const char* kCheckMaskChain = "mask_chain";
inline constexpr const char* kCheckClearance = "clearance";
inline constexpr const char* kCheckStartGoal = "start_goal_free";
inline constexpr const char* kCheckSolutionFree = "solution_free";
inline constexpr const char* kCheckObstacleCount = "obstacle_count";

// Validity suite of one loaded record.
RecordCheck check_record(const ProblemRecord& record, int max_obstacles = 50);

// Runs check_record over every manifest entry; unreadable records fail
// "read". Throws only when the manifest itself cannot be read.
ValidationReport validate_dataset(const std::filesystem::path& dir, int max_obstacles = 50);

}  // namespace edagepp
