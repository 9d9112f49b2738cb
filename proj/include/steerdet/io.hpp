#pragma once

// State files, report JSON and CSV tables.
//
// State file: {"dims": [dA, dB], "matrix": [[re, im], ...]} with dA*dB squared
// entries in row-major order. Writers emit 17 significant digits.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "steerdet/entdetect.hpp"
#include "steerdet/states.hpp"
#include "steerdet/steer.hpp"
#include "steerdet/sweep.hpp"

namespace steerdet {

/// Throws InputError naming the offending field, or the validation errors of
/// DensityMatrix::validate.
DensityMatrix parse_state_json(const std::string& text);
DensityMatrix read_state_file(const std::string& path);

void write_state_json(const DensityMatrix& rho, std::ostream& out);
std::string state_to_json_string(const DensityMatrix& rho);

void to_json(nlohmann::json& j, const EntanglementReport& r);
void from_json(const nlohmann::json& j, EntanglementReport& r);
void to_json(nlohmann::json& j, const SteeringReport& r);
void from_json(const nlohmann::json& j, SteeringReport& r);
void to_json(nlohmann::json& j, const ThresholdResult& r);
void from_json(const nlohmann::json& j, ThresholdResult& r);

inline constexpr const char* kRegionCsvHeader = "alpha,theta,thm1_ba,thm1_ab,ls2,ls3";
inline constexpr const char* kPrescanCsvHeader = "param,thm1_ba,thm1_ab,ls2,ls3";

/// One row per cell, 6-decimal floats, 0/1 booleans, theta fastest.
void write_region_csv(const RegionGrid& grid, std::ostream& out);
void write_prescan_csv(const std::vector<ScanRow>& rows, std::ostream& out);

}  // namespace steerdet
