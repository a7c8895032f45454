#pragma once

#include <string>

#include "ledloc/mc.hpp"
#include "ledloc/scene.hpp"

// Flat key=value configuration files (dotted section names, '#' comments).
// The schema is documented in the README and in the bundled configs/*.cfg.
// Areas are given in mm^2 and responsivities in nA/lux in the file and are
// converted to base units (m^2, A/lux) at load time; writing uses a
// nearest-neighbour nudge so that load(write(spec)) reproduces spec exactly.

namespace ledloc {

// Parses and fully validates. Errors carry the offending key path.
ExperimentSpec parse_config(const std::string& text);
ExperimentSpec load_config(const std::string& path);

std::string write_config(const ExperimentSpec& spec);
void save_config(const ExperimentSpec& spec, const std::string& path);

}  // namespace ledloc
