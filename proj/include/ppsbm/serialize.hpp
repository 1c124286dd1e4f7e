#ifndef PPSBM_SERIALIZE_HPP
#define PPSBM_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ppsbm/intensity.hpp"
#include "ppsbm/metrics.hpp"
#include "ppsbm/selection.hpp"
#include "ppsbm/vem.hpp"

namespace ppsbm {

using json = nlohmann::json;

/// Intensity descriptors round-trip through tagged JSON objects
/// ({"type": "constant" | "sinusoid" | "triangle" | "piecewise" | "kernel", ...}).
json intensity_to_json(const IntensityFn& fn);
IntensityFn intensity_from_json(const json& j);

json model_to_json(const IntensityModel& model);
IntensityModel model_from_json(const json& j);

/// Fit artifact. Node and group indices are 1-based in files, matching the
/// event CSV convention; kernel estimates carry both the raw descriptor and
/// a grid evaluation for plotting.
json fit_to_json(const FitResult& fit, int kernel_grid_points = 512);
FitResult fit_from_json(const json& j);

json selection_to_json(const SelectionReport& report);

json bands_to_json(const BootstrapBands& bands, const PairSet& pairs);

/// Per-pair band CSV: `t,lower,median,upper` rows, full precision.
std::string bands_to_csv(const BootstrapBands& bands, std::size_t pair_index);

/// Ground-truth sidecar emitted by the simulator (labels are 1-based).
json truth_to_json(const std::vector<int>& labels, const IntensityModel& model,
                   std::uint64_t seed);

void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

} // namespace ppsbm

#endif
