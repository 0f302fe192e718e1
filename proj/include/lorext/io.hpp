#pragma once

#include <string>

#include "lorext/rearrange.hpp"

#include "json.hpp"

namespace lorext {

using json = nlohmann::ordered_json;

/// {"points": [...], "dist": row-major, "mass": [...], "kappa": k}
/// or {"interval_grid": n}. Unknown keys are rejected.
SpacePtr space_from_json(const json& j);
json space_to_json(const Space& space);

/// Samples and weights are JSON arrays aligned with the point order.
Sample sample_from_json(const json& j, SpacePtr space);
Weight weight_from_json(const json& j, SpacePtr space);
json values_to_json(const std::vector<double>& values);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// 17-significant-digit float formatting used by every CSV emitter.
std::string format_float(double v);

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where);

}  // namespace lorext
