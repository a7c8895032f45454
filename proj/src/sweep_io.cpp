#include "ledloc/sweep_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "ledloc/errors.hpp"

namespace ledloc {

const char kSweepCsvHeader[] =
    "x_m,y_m,eps_theory_m,eps_mc_m,mc_stderr_m,degenerate_trials";

namespace {

std::string csv_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

double parse_field(const std::string& field, int line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError("CSV line " + std::to_string(line_no) + ": '" + field +
                     "' is not a number");
  }
  return v;
}

int parse_count(const std::string& field, int line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || v < 0) {
    throw ParseError("CSV line " + std::to_string(line_no) + ": '" + field +
                     "' is not a trial count");
  }
  return static_cast<int>(v);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string sweep_csv(const GridSweepResult& result) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const PointRecord& rec : result.records) {
    out += csv_double(rec.x);
    out += ',';
    out += csv_double(rec.y);
    out += ',';
    out += csv_double(rec.eps_theory);
    out += ',';
    out += csv_double(rec.eps_mc);
    out += ',';
    out += csv_double(rec.mc_std_err);
    out += ',';
    out += std::to_string(rec.degenerate_trials);
    out += '\n';
  }
  return out;
}

void write_sweep_csv(const GridSweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open CSV for writing: " + path);
  }
  out << sweep_csv(result);
  if (!out) {
    throw ParseError("failed writing CSV: " + path);
  }
}

GridSweepResult parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("CSV is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepCsvHeader) {
    throw ParseError("unexpected CSV header: " + line);
  }

  GridSweepResult result;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 6) {
      throw ParseError("CSV line " + std::to_string(line_no) +
                       ": expected 6 fields, found " +
                       std::to_string(fields.size()));
    }
    PointRecord rec{};
    rec.x = parse_field(fields[0], line_no);
    rec.y = parse_field(fields[1], line_no);
    rec.eps_theory = parse_field(fields[2], line_no);
    rec.eps_mc = parse_field(fields[3], line_no);
    rec.mc_std_err = parse_field(fields[4], line_no);
    rec.degenerate_trials = parse_count(fields[5], line_no);
    if (std::isnan(rec.x) || std::isnan(rec.y)) {
      throw ParseError("CSV line " + std::to_string(line_no) +
                       ": grid coordinates must be numbers");
    }
    result.records.push_back(rec);
  }
  if (result.records.empty()) {
    throw ParseError("CSV has no data rows");
  }

  // Reconstruct the raster: the first block of rows shares y and scans x
  // ascending; consecutive blocks repeat the same x values at ascending y.
  const std::size_t total = result.records.size();
  std::size_t nx = 1;
  while (nx < total && result.records[nx].y == result.records[0].y) ++nx;
  if (total % nx != 0) {
    throw ParseError("CSV rows do not form a full y-then-x raster");
  }
  const std::size_t ny = total / nx;
  for (std::size_t p = 0; p < total; ++p) {
    const std::size_t ix = p % nx;
    const std::size_t iy = p / nx;
    const PointRecord& rec = result.records[p];
    if (rec.x != result.records[ix].x || rec.y != result.records[iy * nx].y) {
      throw ParseError("CSV rows do not form a full y-then-x raster");
    }
    if (ix > 0 && !(result.records[ix - 1].x < rec.x)) {
      throw ParseError("CSV x coordinates are not ascending");
    }
    if (iy > 0 && ix == 0 &&
        !(result.records[(iy - 1) * nx].y < rec.y)) {
      throw ParseError("CSV y coordinates are not ascending");
    }
  }

  GridSpec grid;
  grid.x_min = result.records[0].x;
  grid.x_max = result.records[nx - 1].x;
  grid.y_min = result.records[0].y;
  grid.y_max = result.records[(ny - 1) * nx].y;
  if (nx > 1) {
    grid.step = (grid.x_max - grid.x_min) / static_cast<double>(nx - 1);
  } else if (ny > 1) {
    grid.step = (grid.y_max - grid.y_min) / static_cast<double>(ny - 1);
  } else {
    grid.step = 1.0;
  }
  result.grid = grid;
  return result;
}

GridSweepResult read_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open CSV: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_csv(buf.str());
}

}  // namespace ledloc
