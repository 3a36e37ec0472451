#pragma once

#include <string>
#include <vector>

namespace wlab {

/// Names of the shipped experiment presets (also available as files under
/// presets/ in the source tree; the binary carries identical copies so
/// `--preset` works from any directory).
std::vector<std::string> preset_names();

/// Full config text for a preset; throws std::invalid_argument for unknown
/// names.
std::string preset_text(const std::string& name);

}  // namespace wlab
