#include "ledloc/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "ledloc/aoa.hpp"
#include "ledloc/errors.hpp"

namespace ledloc {

namespace {

constexpr double kAreaScale = 1e-6;          // mm^2 -> m^2
constexpr double kResponsivityScale = 1e-9;  // nA/lux -> A/lux

struct RawEntry {
  std::string value;
  int line;
};

using RawMap = std::map<std::string, RawEntry>;

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

RawMap tokenize(const std::string& text) {
  RawMap entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty key");
    }
    if (value.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": key '" + key +
                       "' has no value");
    }
    if (!entries.emplace(key, RawEntry{value, line_no}).second) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": duplicate key '" + key + "'");
    }
  }
  return entries;
}

double parse_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError(key + ": '" + value + "' is not a number");
  }
  if (!std::isfinite(v)) {
    throw ParseError(key + ": must be finite");
  }
  return v;
}

Vec3 parse_vec3(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  std::string a, b, c, extra;
  if (!(in >> a >> b >> c) || (in >> extra)) {
    throw ParseError(key + ": expected three numbers");
  }
  return {parse_double(key, a), parse_double(key, b), parse_double(key, c)};
}

int parse_int(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw ParseError(key + ": '" + value + "' is not an integer");
  }
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  if (value.empty() || value[0] == '-' || value[0] == '+') {
    throw ParseError(key + ": '" + value + "' is not an unsigned integer");
  }
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ParseError(key + ": '" + value + "' is not an unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  throw ParseError(key + ": '" + value + "' is not a boolean (true/false)");
}

// Pops `key` if present and applies `set` to its parsed value.
template <typename Parse, typename Set>
void take(RawMap& entries, const std::string& key, Parse parse, Set set) {
  const auto it = entries.find(key);
  if (it == entries.end()) return;
  set(parse(key, it->second.value));
  entries.erase(it);
}

bool has_key(const RawMap& entries, const std::string& key) {
  return entries.find(key) != entries.end();
}

// Picks the decimal-unit value whose product with `scale` recovers `base`
// exactly, so writing and re-loading is lossless. Some base values have no
// exact preimage under the rounded multiplication; those are flagged so the
// writer can add the base-unit override key.
struct UnitRender {
  double value;
  bool exact;
};

UnitRender inverse_scale(double base, double scale) {
  double v = base / scale;
  if (v * scale == base) return {v, true};
  double up = v, down = v;
  for (int i = 0; i < 3; ++i) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    down = std::nextafter(down, -std::numeric_limits<double>::infinity());
    if (up * scale == base) return {up, true};
    if (down * scale == base) return {down, true};
  }
  return {v, false};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// If `key` is present it replaces the value already loaded from the
// decimal-unit key, after checking the two agree to rounding error.
void take_exact_override(RawMap& entries, const std::string& key,
                         const std::string& decimal_key, bool decimal_given,
                         double& slot) {
  const auto it = entries.find(key);
  if (it == entries.end()) return;
  const double v = parse_double(key, it->second.value);
  if (decimal_given) {
    const double scale = std::max(std::abs(slot), std::abs(v));
    if (scale > 0.0 && std::abs(slot - v) > 1e-12 * scale) {
      throw ParseError(key + ": inconsistent with " + decimal_key);
    }
  }
  slot = v;
  entries.erase(it);
}

std::string fmt(const Vec3& v) {
  return fmt(v.x()) + " " + fmt(v.y()) + " " + fmt(v.z());
}

}  // namespace

ExperimentSpec parse_config(const std::string& text) {
  RawMap entries = tokenize(text);
  ExperimentSpec spec;
  SceneConfig& scene = spec.scene;

  const auto dbl = [](const std::string& k, const std::string& v) {
    return parse_double(k, v);
  };
  const auto set_d = [](double& slot) { return [&slot](double v) { slot = v; }; };

  take(entries, "room.x_min", dbl, set_d(scene.room.x_min));
  take(entries, "room.x_max", dbl, set_d(scene.room.x_max));
  take(entries, "room.y_min", dbl, set_d(scene.room.y_min));
  take(entries, "room.y_max", dbl, set_d(scene.room.y_max));
  take(entries, "room.z_min", dbl, set_d(scene.room.z_min));
  take(entries, "room.z_max", dbl, set_d(scene.room.z_max));

  take(entries, "led.height", dbl, set_d(scene.led_height));
  take(entries, "led.normal", parse_vec3,
       [&](const Vec3& v) { scene.led_normal = v; });

  take(entries, "estimator1.position", parse_vec3,
       [&](const Vec3& v) { scene.estimator1_pos = v; });
  take(entries, "estimator2.position", parse_vec3,
       [&](const Vec3& v) { scene.estimator2_pos = v; });

  take(entries, "optics.transmit_power_lm", dbl,
       set_d(scene.optics.transmit_power_lm));
  take(entries, "optics.lambertian_order", dbl,
       set_d(scene.optics.lambertian_order));
  bool area_given = false;
  bool resp_given = false;
  take(entries, "optics.pd_area_mm2", dbl, [&](double v) {
    scene.optics.pd_area_m2 = v * kAreaScale;
    area_given = true;
  });
  take(entries, "optics.responsivity_na_per_lux", dbl, [&](double v) {
    scene.optics.responsivity_A_per_lux = v * kResponsivityScale;
    resp_given = true;
  });
  // Optional exact base-unit overrides. Scaling by a decimal factor rounds,
  // so a handful of base-unit values have no decimal-unit spelling at all;
  // the writer falls back to these keys to keep save/load lossless.
  take_exact_override(entries, "optics.pd_area_m2", "optics.pd_area_mm2",
                      area_given, scene.optics.pd_area_m2);
  take_exact_override(entries, "optics.responsivity_a_per_lux",
                      "optics.responsivity_na_per_lux", resp_given,
                      scene.optics.responsivity_A_per_lux);

  take(entries, "noise.const_coeff_a2", dbl, set_d(scene.noise.const_coeff_A2));
  take(entries, "noise.linear_coeff_a", dbl, set_d(scene.noise.linear_coeff_A));

  bool explicit_rows = false;
  take(entries, "pd.normals",
       [](const std::string& k, const std::string& v) {
         if (v != "optimal" && v != "explicit") {
           throw ParseError(k + ": expected 'optimal' or 'explicit'");
         }
         return v;
       },
       [&](const std::string& v) { explicit_rows = (v == "explicit"); });
  scene.use_optimal_normals = !explicit_rows;
  if (explicit_rows) {
    for (int q = 0; q < 4; ++q) {
      const std::string key = "pd.row" + std::to_string(q + 1);
      if (!has_key(entries, key)) {
        throw ParseError(key + ": required when pd.normals = explicit");
      }
      take(entries, key, parse_vec3, [&](const Vec3& v) {
        scene.pd_normals.row(q) = v.transpose();
      });
    }
  } else {
    scene.pd_normals = optimal_normals();
    for (int q = 0; q < 4; ++q) {
      const std::string key = "pd.row" + std::to_string(q + 1);
      if (has_key(entries, key)) {
        throw ParseError(key + ": only valid when pd.normals = explicit");
      }
    }
  }

  take(entries, "channel.clip_negative", parse_bool,
       [&](bool v) { scene.clip_negative_currents = v; });

  take(entries, "thresholds.degeneracy", dbl,
       set_d(scene.degeneracy_threshold));
  take(entries, "thresholds.min_separation", dbl, set_d(scene.min_separation));

  take(entries, "grid.x_min", dbl, set_d(spec.grid.x_min));
  take(entries, "grid.x_max", dbl, set_d(spec.grid.x_max));
  take(entries, "grid.y_min", dbl, set_d(spec.grid.y_min));
  take(entries, "grid.y_max", dbl, set_d(spec.grid.y_max));
  take(entries, "grid.step", dbl, set_d(spec.grid.step));

  take(entries, "mc.trials_per_point", parse_int,
       [&](int v) { spec.trials_per_point = v; });
  take(entries, "mc.seed", parse_u64,
       [&](std::uint64_t v) { spec.seed = v; });

  if (!entries.empty()) {
    const RawEntry& first = entries.begin()->second;
    throw ParseError("line " + std::to_string(first.line) +
                     ": unknown key '" + entries.begin()->first + "'");
  }

  spec.validate();
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string write_config(const ExperimentSpec& spec) {
  const SceneConfig& scene = spec.scene;
  const UnitRender area = inverse_scale(scene.optics.pd_area_m2, kAreaScale);
  const UnitRender resp =
      inverse_scale(scene.optics.responsivity_A_per_lux, kResponsivityScale);
  std::ostringstream out;
  out << "# room bounds (m)\n"
      << "room.x_min = " << fmt(scene.room.x_min) << "\n"
      << "room.x_max = " << fmt(scene.room.x_max) << "\n"
      << "room.y_min = " << fmt(scene.room.y_min) << "\n"
      << "room.y_max = " << fmt(scene.room.y_max) << "\n"
      << "room.z_min = " << fmt(scene.room.z_min) << "\n"
      << "room.z_max = " << fmt(scene.room.z_max) << "\n"
      << "\n# LED mount\n"
      << "led.height = " << fmt(scene.led_height) << "\n"
      << "led.normal = " << fmt(scene.led_normal) << "\n"
      << "\n# angle-of-arrival heads (m)\n"
      << "estimator1.position = " << fmt(scene.estimator1_pos) << "\n"
      << "estimator2.position = " << fmt(scene.estimator2_pos) << "\n"
      << "\n# optics\n"
      << "optics.transmit_power_lm = " << fmt(scene.optics.transmit_power_lm)
      << "\n"
      << "optics.lambertian_order = " << fmt(scene.optics.lambertian_order)
      << "\n"
      << "optics.pd_area_mm2 = " << fmt(area.value) << "\n"
      << "optics.responsivity_na_per_lux = " << fmt(resp.value) << "\n";
  if (!area.exact) {
    out << "optics.pd_area_m2 = " << fmt(scene.optics.pd_area_m2) << "\n";
  }
  if (!resp.exact) {
    out << "optics.responsivity_a_per_lux = "
        << fmt(scene.optics.responsivity_A_per_lux) << "\n";
  }
  out << "\n# additive current noise: variance = const + linear * mean\n"
      << "noise.const_coeff_a2 = " << fmt(scene.noise.const_coeff_A2) << "\n"
      << "noise.linear_coeff_a = " << fmt(scene.noise.linear_coeff_A) << "\n"
      << "\n# photodiode orientations: optimal, or explicit with pd.row1..4\n"
      << "pd.normals = "
      << (scene.use_optimal_normals ? "optimal" : "explicit") << "\n";
  if (!scene.use_optimal_normals) {
    for (int q = 0; q < 4; ++q) {
      out << "pd.row" << (q + 1) << " = "
          << fmt(Vec3(scene.pd_normals.row(q).transpose())) << "\n";
    }
  }
  out << "channel.clip_negative = "
      << (scene.clip_negative_currents ? "true" : "false") << "\n"
      << "thresholds.degeneracy = " << fmt(scene.degeneracy_threshold) << "\n"
      << "thresholds.min_separation = " << fmt(scene.min_separation) << "\n"
      << "\n# sweep grid (m, endpoints inclusive)\n"
      << "grid.x_min = " << fmt(spec.grid.x_min) << "\n"
      << "grid.x_max = " << fmt(spec.grid.x_max) << "\n"
      << "grid.y_min = " << fmt(spec.grid.y_min) << "\n"
      << "grid.y_max = " << fmt(spec.grid.y_max) << "\n"
      << "grid.step = " << fmt(spec.grid.step) << "\n"
      << "\n# Monte Carlo\n"
      << "mc.trials_per_point = " << spec.trials_per_point << "\n"
      << "mc.seed = " << spec.seed << "\n";
  return out.str();
}

void save_config(const ExperimentSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open config file for writing: " + path);
  }
  out << write_config(spec);
  if (!out) {
    throw ParseError("failed writing config file: " + path);
  }
}

}  // namespace ledloc
