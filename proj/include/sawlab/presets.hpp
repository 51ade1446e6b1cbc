#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sawlab/periodic.hpp"
#include "sawlab/presentation.hpp"

namespace sawlab {

/// Names of the shipped presentation documents. Parameterised families are
/// listed with a placeholder: zd<n>, cylinder<m>, ladder<m>.
std::vector<std::string> presentation_preset_names();

/// JSON presentation document for a preset. Throws InputError if unknown.
std::string presentation_document(std::string_view name);
Presentation presentation_preset(std::string_view name);

std::vector<std::string> periodic_preset_names();
std::string periodic_document(std::string_view name);
PeriodicGraph periodic_preset(std::string_view name);

}  // namespace sawlab
