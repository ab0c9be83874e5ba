#include "edagepp/dataset.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "edagepp/corridor.hpp"
#include "edagepp/error.hpp"
#include "edagepp/extract.hpp"

namespace edagepp {

namespace fs = std::filesystem;
using nlohmann::json;

// ---- PNG ----

namespace {

void write_png_raw(const fs::path& file, int w, int h, std::uint32_t format, const std::uint8_t* data) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(w);
  img.height = static_cast<png_uint_32>(h);
  img.format = format;
  if (!png_image_write_to_file(&img, file.c_str(), 0, data, 0, nullptr))
    throw IoFailure(file.string() + ": " + img.message);
}

// Decodes into `format`; `want_color` rejects files whose stored channel
// layout differs, so a mask cannot be read as a problem image or vice versa.
std::vector<std::uint8_t> read_png_raw(const fs::path& file, std::uint32_t format, bool want_color, int& w,
                                       int& h) {
  if (!fs::exists(file)) throw IoFailure(file.string() + ": no such file");
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, file.c_str()))
    throw CorruptRecord(file.string() + ": " + img.message);
  const bool color = (img.format & PNG_FORMAT_FLAG_COLOR) != 0;
  if (color != want_color || (img.format & PNG_FORMAT_FLAG_ALPHA)) {
    png_image_free(&img);
    throw CorruptRecord(file.string() + ": unexpected channel layout");
  }
  img.format = format;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw CorruptRecord(file.string() + ": " + msg);
  }
  w = static_cast<int>(img.width);
  h = static_cast<int>(img.height);
  return buf;
}

}  // namespace

void write_png(const fs::path& file, const RgbImage& img) {
  write_png_raw(file, img.width, img.height, PNG_FORMAT_RGB, img.data.data());
}

void write_png(const fs::path& file, const GrayImage& img) {
  write_png_raw(file, img.width, img.height, PNG_FORMAT_GRAY, img.data.data());
}

void write_png(const fs::path& file, const RasterMask& mask) {
  write_png_raw(file, mask.width, mask.height, PNG_FORMAT_GRAY, mask.bits.data());
}

RgbImage read_png_rgb(const fs::path& file) {
  RgbImage out;
  out.data = read_png_raw(file, PNG_FORMAT_RGB, true, out.width, out.height);
  return out;
}

GrayImage read_png_gray(const fs::path& file) {
  GrayImage out;
  out.data = read_png_raw(file, PNG_FORMAT_GRAY, false, out.width, out.height);
  return out;
}

// ---- JSON ----

namespace {

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw CorruptRecord(std::string("malformed point in ") + what);
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw CorruptRecord(std::string("missing field '") + name + "'");
  return *it;
}

template <typename T>
T get(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const json::exception&) {
    throw CorruptRecord(std::string("bad field '") + name + "'");
  }
}

}  // namespace

json generator_config_json(const GeneratorConfig& cfg) {
  return {
      {"paths", cfg.paths},
      {"per_path", cfg.per_path},
      {"seed", cfg.seed},
      {"clearance", cfg.scene.clearance},
      {"max_obstacles", cfg.scene.max_obstacles},
      {"min_optimality", cfg.min_optimality},
      {"path", {{"order", cfg.path.order},
                {"curves", cfg.path.curves},
                {"points_per_curve", cfg.path.points_per_curve},
                {"cap_samples", cfg.path.cap_samples},
                {"fit_width", cfg.path.fit_width},
                {"fit_height", cfg.path.fit_height}}},
      {"constraints", {{"gap_factor", cfg.constraints.gap_factor},
                       {"mode", cfg.constraints.mode == ChainMode::Wall ? "wall" : "paper"}}},
  };
}

json to_json(const ManifestEntry& e) {
  json wp = json::array(), tg = json::array(), obs = json::array();
  for (Point2 p : e.waypoints) wp.push_back(point_json(p));
  for (Vec2 v : e.tangents) tg.push_back(point_json(v));
  for (const Obstacle& o : e.obstacles)
    obs.push_back({{"center", point_json(o.center)}, {"radius", o.radius}, {"role", to_string(o.role)}});
  return {
      {"type", "record"},
      {"id", e.id},
      {"seed", e.seed},
      {"clearance", e.clearance},
      {"solution_cost", e.solution_cost},
      {"obstacle_count", e.obstacles.size()},
      {"bounds", point_json(e.bounds)},
      {"start", point_json(e.start)},
      {"goal", point_json(e.goal)},
      {"pose", {{"angle", e.pose.angle}, {"translation", point_json(e.pose.translation)}}},
      {"spacing", e.spacing},
      {"images", {{"problem", e.problem_file}, {"space", e.space_file}, {"waypoints", e.waypoints_file}}},
      {"waypoints", std::move(wp)},
      {"tangents", std::move(tg)},
      {"obstacles", std::move(obs)},
  };
}

ManifestEntry entry_from_json(const json& j) {
  if (!j.is_object()) throw CorruptRecord("manifest line is not an object");
  if (get<std::string>(j, "type") != "record") throw CorruptRecord("expected a record line");
  ManifestEntry e;
  e.id = get<std::uint64_t>(j, "id");
  e.seed = get<std::uint64_t>(j, "seed");
  e.clearance = get<double>(j, "clearance");
  e.solution_cost = get<double>(j, "solution_cost");
  e.bounds = point_from(field(j, "bounds"), "bounds");
  e.start = point_from(field(j, "start"), "start");
  e.goal = point_from(field(j, "goal"), "goal");
  const json& pose = field(j, "pose");
  e.pose = Pose2(get<double>(pose, "angle"), point_from(field(pose, "translation"), "pose"));
  e.spacing = get<double>(j, "spacing");
  const json& images = field(j, "images");
  e.problem_file = get<std::string>(images, "problem");
  e.space_file = get<std::string>(images, "space");
  e.waypoints_file = get<std::string>(images, "waypoints");
  for (const json& p : field(j, "waypoints")) e.waypoints.push_back(point_from(p, "waypoints"));
  for (const json& p : field(j, "tangents")) e.tangents.push_back(point_from(p, "tangents"));
  for (const json& o : field(j, "obstacles")) {
    Obstacle ob;
    ob.center = point_from(field(o, "center"), "obstacles");
    ob.radius = get<double>(o, "radius");
    try {
      ob.role = obstacle_role_from_string(get<std::string>(o, "role"));
    } catch (const ConfigError& err) {
      throw CorruptRecord(err.what());
    }
    e.obstacles.push_back(ob);
  }
  if (get<std::size_t>(j, "obstacle_count") != e.obstacles.size())
    throw CorruptRecord("obstacle_count does not match the obstacle list");
  return e;
}

json to_json(const DatasetHeader& h) {
  return {{"type", "header"},
          {"format", h.format},
          {"raster",
           {{"width", h.raster.width},
            {"height", h.raster.height},
            {"world_width", h.raster.world_width},
            {"world_height", h.raster.world_height}}},
          {"config", h.config}};
}

DatasetHeader header_from_json(const json& j) {
  if (!j.is_object() || get<std::string>(j, "type") != "header")
    throw CorruptRecord("first manifest line is not a header");
  DatasetHeader h;
  h.format = get<std::string>(j, "format");
  if (h.format != kFormatVersion)
    throw CorruptRecord("unsupported format version '" + h.format + "', expected '" + std::string(kFormatVersion) +
                        "'");
  const json& r = field(j, "raster");
  h.raster.width = get<int>(r, "width");
  h.raster.height = get<int>(r, "height");
  h.raster.world_width = get<double>(r, "world_width");
  h.raster.world_height = get<double>(r, "world_height");
  try {
    h.raster.validate();
  } catch (const ConfigError& err) {
    throw CorruptRecord(err.what());
  }
  if (auto it = j.find("config"); it != j.end()) h.config = *it;
  return h;
}

// ---- records ----

std::string record_stem(std::uint64_t id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06llu", static_cast<unsigned long long>(id));
  return buf;
}

ManifestEntry write_record(const ProblemRecord& record, const fs::path& dir) {
  ManifestEntry e;
  e.id = record.id;
  e.seed = record.seed;
  e.clearance = record.scene.clearance;
  e.solution_cost = record.solution_cost;
  e.bounds = record.scene.bounds;
  e.start = record.scene.start;
  e.goal = record.scene.goal;
  e.pose = record.scene.pose;
  e.spacing = record.solution.spacing;
  const std::string stem = record_stem(record.id);
  e.problem_file = stem + "_problem.png";
  e.space_file = stem + "_space.png";
  e.waypoints_file = stem + "_waypoints.png";
  e.waypoints = record.solution.points;
  e.tangents = record.solution.tangents;
  e.obstacles = record.scene.obstacles;
  write_png(dir / e.problem_file, record.problem_image);
  write_png(dir / e.space_file, record.space_mask);
  write_png(dir / e.waypoints_file, record.waypoint_mask);
  return e;
}

namespace {

RasterMask mask_from(const GrayImage& g, const RasterConfig& raster, const char* what) {
  if (g.width != raster.width || g.height != raster.height)
    throw CorruptRecord(std::string(what) + " has the wrong dimensions");
  RasterMask m(g.width, g.height, raster.transform());
  m.bits = g.data;
  if (!m.is_binary()) throw CorruptRecord(std::string(what) + " is not binary");
  return m;
}

}  // namespace

ProblemRecord read_record(const ManifestEntry& e, const fs::path& dir, const RasterConfig& raster) {
  ProblemRecord rec;
  rec.id = e.id;
  rec.seed = e.seed;
  rec.scene.bounds = e.bounds;
  rec.scene.start = e.start;
  rec.scene.goal = e.goal;
  rec.scene.pose = e.pose;
  rec.scene.clearance = e.clearance;
  rec.scene.obstacles = e.obstacles;
  rec.solution.points = e.waypoints;
  rec.solution.tangents = e.tangents;
  rec.solution.spacing = e.spacing;
  rec.solution_cost = e.solution_cost;

  if (e.waypoints.size() < 2) throw CorruptRecord("solution has fewer than 2 waypoints");
  if (!e.tangents.empty() && e.tangents.size() != e.waypoints.size())
    throw CorruptRecord("tangent count does not match waypoint count");
  if (!(e.solution_cost > 0.0)) throw CorruptRecord("solution_cost must be positive");
  if (std::abs(polyline_length(e.waypoints) - e.solution_cost) > 1e-6)
    throw CorruptRecord("solution_cost differs from the waypoint polyline length");
  if (e.waypoints.front() != e.start || e.waypoints.back() != e.goal)
    throw CorruptRecord("start/goal differ from the solution endpoints");

  rec.problem_image = read_png_rgb(dir / e.problem_file);
  if (rec.problem_image.width != raster.width || rec.problem_image.height != raster.height)
    throw CorruptRecord("problem image has the wrong dimensions");
  rec.space_mask = mask_from(read_png_gray(dir / e.space_file), raster, "space mask");
  rec.waypoint_mask = mask_from(read_png_gray(dir / e.waypoints_file), raster, "waypoint mask");
  return rec;
}

DatasetWriter::DatasetWriter(const fs::path& dir, const DatasetHeader& header) : dir_(dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure(dir.string() + ": " + ec.message());
  manifest_.open(dir / kManifestName, std::ios::binary | std::ios::trunc);
  if (!manifest_) throw IoFailure((dir / kManifestName).string() + ": cannot open for writing");
  manifest_ << to_json(header).dump() << '\n';
}

ManifestEntry DatasetWriter::write(const ProblemRecord& record) {
  ManifestEntry e = write_record(record, dir_);
  manifest_ << to_json(e).dump() << '\n';
  manifest_.flush();
  if (!manifest_) throw IoFailure("manifest write failed");
  ++count_;
  return e;
}

Dataset read_manifest(const fs::path& dir) {
  std::ifstream in(dir / kManifestName, std::ios::binary);
  if (!in) throw IoFailure((dir / kManifestName).string() + ": cannot open");
  Dataset ds;
  std::string line;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw CorruptRecord("manifest line " + std::to_string(lineno) + " is not valid JSON");
    if (!have_header) {
      ds.header = header_from_json(j);
      have_header = true;
    } else {
      ds.entries.push_back(entry_from_json(j));
    }
  }
  if (!have_header) throw CorruptRecord("manifest has no header");
  return ds;
}

// ---- validation ----

RecordCheck check_record(const ProblemRecord& rec, int max_obstacles) {
  RecordCheck out;
  out.id = rec.id;
  auto fail = [&](const char* name) {
    out.pass = false;
    out.failed.emplace_back(name);
  };
  const RgbImage& img = rec.problem_image;
  const PixelTransform t = rec.space_mask.world_to_pixel;

  // waypoint mask within the space mask, space mask within the free pixels.
  bool chain = rec.waypoint_mask.width == rec.space_mask.width && rec.waypoint_mask.height == rec.space_mask.height &&
               img.width == rec.space_mask.width && img.height == rec.space_mask.height &&
               rec.waypoint_mask.count() > 0 && rec.waypoint_mask.subset_of(rec.space_mask);
  for (int row = 0; chain && row < img.height; ++row)
    for (int col = 0; col < img.width; ++col)
      if (rec.space_mask.test(col, row) && img.at(col, row) == kObstacle) {
        chain = false;
        break;
      }
  if (!chain) fail(kCheckMaskChain);

  const double c = rec.scene.clearance;
  if (verify_clearance(rec.solution.points, rec.scene, c).violations > 0) fail(kCheckClearance);

  auto point_free = [&](Point2 p) {
    if (!rec.scene.inside_bounds(p)) return false;
    for (const Obstacle& o : rec.scene.obstacles)
      if (distance(p, o.center) <= o.radius) return false;
    const PixelCoord px = pixel_of(t, p);
    return img.in_bounds(px.col, px.row) && img.at(px.col, px.row) == kMarker;
  };
  if (!point_free(rec.scene.start) || !point_free(rec.scene.goal)) fail(kCheckStartGoal);

  bool inside = true;
  for (Point2 p : rec.solution.points) {
    const PixelCoord px = pixel_of(t, p);
    if (!rec.scene.inside_bounds(p) || !img.in_bounds(px.col, px.row) || img.at(px.col, px.row) == kObstacle ||
        !rec.space_mask.test(px.col, px.row)) {
      inside = false;
      break;
    }
  }
  if (!inside) fail(kCheckSolutionFree);

  if (static_cast<int>(rec.scene.obstacles.size()) > max_obstacles) fail(kCheckObstacleCount);
  return out;
}

ValidationReport validate_dataset(const fs::path& dir, int max_obstacles) {
  const Dataset ds = read_manifest(dir);
  ValidationReport rep;
  for (const ManifestEntry& e : ds.entries) {
    RecordCheck chk;
    try {
      chk = check_record(read_record(e, dir, ds.header.raster), max_obstacles);
    } catch (const Error& err) {
      chk.id = e.id;
      chk.pass = false;
      chk.failed.emplace_back(kCheckRead);
      chk.detail = err.what();
    }
    if (chk.pass) ++rep.passed;
    rep.records.push_back(std::move(chk));
  }
  return rep;
}

}  // namespace edagepp
