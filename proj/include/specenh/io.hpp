#pragma once

#include <string>

#include "json.hpp"

#include "specenh/bounds.hpp"
#include "specenh/enhance.hpp"
#include "specenh/grid.hpp"
#include "specenh/kernels.hpp"

namespace specenh {

using json = nlohmann::json;

// JSON spellings are snake_case ("lorentz_width", "eddington_gaussian",
// "tikhonov"); the type names themselves are accepted on input as well.
void to_json(json& j, const KernelSpec& spec);
void from_json(const json& j, KernelSpec& spec);
void to_json(json& j, const Grid& grid);
void from_json(const json& j, Grid& grid);
void to_json(json& j, const SourceCondition& cond);
void from_json(const json& j, SourceCondition& cond);
void to_json(json& j, const RegularizationConfig& reg);
void from_json(const json& j, RegularizationConfig& reg);
void to_json(json& j, const Line& line);
void from_json(const json& j, Line& line);
void to_json(json& j, const LineSpectrum& lines);
void from_json(const json& j, LineSpectrum& lines);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& value);

// Two-column CSV with header "x,value"; values print with full precision so
// a write/read cycle is exact. The grid is reconstructed from the x column.
void write_spectrum_csv(const std::string& path, const SampledSpectrum& g);
SampledSpectrum read_spectrum_csv(const std::string& path);

// Two-column CSV with header "location,intensity".
void write_lines_csv(const std::string& path, const LineSpectrum& lines);
LineSpectrum read_lines_csv(const std::string& path);

} // namespace specenh
