#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sphan/pairs.hpp"
#include "sphan/report.hpp"
#include "sphan/transform.hpp"

namespace sphan::io {

using nlohmann::json;

// SampledFunction <-> JSON with fields pair, symmetry, ktype (optional),
// grid (per-axis {role, kind, min, max, n}), values_re, values_im,
// truncation.  Parse errors carry the offending field path.
json to_json(const pairs::SampledFunction& f);
pairs::SampledFunction sampled_function_from_json(const json& j);

// Spectrum points as CSV: xi_1..xi_ell then the parametrization columns.
std::string spectrum_csv(pairs::PairId id, const std::vector<pairs::SpectrumPoint>& pts,
                         std::uint64_t seed);

// SpectrumFunction as CSV: xi columns, parametrization, value_re,
// value_im, weight.
std::string spectrum_function_csv(const transform::SpectrumFunction& gf, std::uint64_t seed);
transform::SpectrumFunction spectrum_function_from_csv(pairs::PairId id, const std::string& text);

json report_json(const Report& rep);

// temp file + rename
void write_atomic(const std::filesystem::path& path, const std::string& contents);

std::string format_double(double v);

}  // namespace sphan::io
