#pragma once

#include <string>

#include "hecke/curve.hpp"

namespace hecke {

// JSON cache of period data, complex values as [re, im].
void store_periods(const PeriodData& pd, const std::string& path);
// Throws NotFound for a missing file and HashMismatch when the stored hash
// does not match spec and settings.
PeriodData load_periods(const std::string& path, const CurveSpec& spec, const PeriodSettings& s = {});

} // namespace hecke
