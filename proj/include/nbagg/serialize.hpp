// serialize.hpp
#pragma once

#include <filesystem>
#include <string>

#include "nbagg/bounds.hpp"
#include "nbagg/core.hpp"

namespace nbagg {

/// Parses a panel object {"psi": [...], "eta": [...], "p_y": number?}.
/// Syntax errors and wrongly typed fields raise ValidationError (Malformed);
/// range checks are left to validate_panel.
PanelInput parse_panel_json(const std::string& text);

PanelInput load_panel_file(const std::filesystem::path& path);

/// Normalized panel with p_y always present.
std::string panel_to_json(const ExpertPanel& panel, int indent = -1);

/// Flat object; absent optional bounds are null.
std::string report_to_json(const BoundsReport& report, int indent = -1);

/// Rounds to `digits` significant decimal digits ("%.*g" and back).
double round_significant(double value, int digits);

/// "%.*g" rendering.
std::string format_number(double value, int digits);

}  // namespace nbagg
