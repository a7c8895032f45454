#pragma once

#include <string>

#include "ledloc/mc.hpp"

// Sweep results as CSV. The schema is pinned: header
// x_m,y_m,eps_theory_m,eps_mc_m,mc_stderr_m,degenerate_trials, one row per
// grid point ordered by y then x ascending, doubles in full-precision
// scientific notation, missing values as `nan`.

namespace ledloc {

extern const char kSweepCsvHeader[];

std::string sweep_csv(const GridSweepResult& result);
void write_sweep_csv(const GridSweepResult& result, const std::string& path);

// Parses a cmd_sweep-format CSV back into a result, reconstructing the grid
// from the row coordinates. Throws ParseError on any malformed content.
GridSweepResult read_sweep_csv(const std::string& path);
GridSweepResult parse_sweep_csv(const std::string& text);

}  // namespace ledloc
