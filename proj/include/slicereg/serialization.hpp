#pragma once

#include <string>

#include "slicereg/calculus.hpp"
#include "slicereg/differential.hpp"
#include "slicereg/scanners.hpp"
#include "slicereg/slice_function.hpp"

namespace slicereg {

// JSON function spec:
//   {"type": "polynomial", "coeffs": [[w,x,y,z], ...],
//    "domain": {"alpha": [a0,a1], "beta": [b0,b1]}}
//   {"type": "twoslice", "J": [w,x,y,z], "K": [w,x,y,z],
//    "gJ": {"coeffs": [...]}, "gK": {"coeffs": [...]}, "domain": {...}}
// Quaternions serialize as [w, x, y, z] arrays of doubles everywhere.
// Malformed input raises std::runtime_error naming the offending field.
SliceFunction parse_function_spec(const std::string& json_text);
SliceFunction load_function_spec(const std::string& path);
std::string function_spec_to_json(const SliceFunction& f);

std::string quaternion_to_json(const Quaternion& q);

// {"center": [..], "coeffs": [[..], ...]}
std::string expansion_to_json(const SphericalExpansion& e);

// {"point": [..], "basis": [[..] x4], "matrix": [[..] x4], "rank": n}
std::string differential_to_json(const RealDifferential& d);

enum class ExportFormat { csv, json };

// Canonically ordered, fixed 17-significant-digit decimal output; identical
// configurations produce byte-identical files. CSV header:
//   alpha,beta,ux,uy,uz,kind
std::string cloud_to_string(const SurfaceCloud& cloud, ExportFormat format);
void export_cloud(const SurfaceCloud& cloud, const std::string& path,
                  ExportFormat format);

std::string zero_records_to_string(const std::vector<ZeroRecord>& records,
                                   const GridSpec& grid, ExportFormat format);
void export_zero_records(const std::vector<ZeroRecord>& records, const GridSpec& grid,
                         const std::string& path, ExportFormat format);

std::string injectivity_report_to_json(const InjectivityReport& report);

}  // namespace slicereg
