#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "dsm/analytics.hpp"
#include "dsm/orbit.hpp"
#include "dsm/theory.hpp"

namespace dsm {

// Canonical file formats. All numeric text uses '.' as the decimal
// separator and '\n' line endings regardless of locale; decimals carry 17
// significant digits so doubles round-trip exactly.

/// %.17g rendering of a double.
std::string to_decimal17(double value);

// sweep CSV: header "q,ell,ratio"
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
SweepResult read_sweep_csv(std::istream& is);

// Young diagram CSV: header "q,part_index,scaled_part_num,scaled_part_den"
// (exact rationals, no rounding; part_index is 0-based)
void write_young_csv(std::ostream& os, const YoungDiagram& diagram);
YoungDiagram read_young_csv(std::istream& is);

// decomposition summary CSV: header "r,j,orbit_id,period,winding", one
// row per orbit, representative coordinates first
void write_decomposition_csv(std::ostream& os, std::span<const Orbit> orbits);
void write_decomposition_csv(std::ostream& os, const Decomposition& d);
std::vector<Orbit> read_decomposition_csv(std::istream& is);

// verdict JSON: {suite, params, passed, cases:[{id, expected, observed, pass}]}
nlohmann::json verdict_to_json(const VerdictReport& verdict);
VerdictReport verdict_from_json(const nlohmann::json& j);

/// Binary PGM, "P5", maxval 65535, big-endian 16-bit samples. The stream
/// must be opened in binary mode.
void write_pgm(std::ostream& os, const PortraitRaster& raster);

}  // namespace dsm
