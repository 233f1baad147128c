#pragma once

// Raw time-series dump: little-endian header (magic "SDTS", u32 version,
// f64 dt, u64 sample count) followed by interleaved x,y,z float64 samples.

#include <string>

#include "spindec/mc_field.hpp"

namespace spindec {

void write_time_series(const std::string& path, const TimeSeries& ts);
TimeSeries read_time_series(const std::string& path);

}  // namespace spindec
