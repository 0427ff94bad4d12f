#pragma once

#include <string>
#include <vector>

#include "volcast/dates.hpp"

namespace volcast::svg {

/// Self-contained SVG overlay of actual vs predicted values; fixed canvas,
/// axis ranges derived from the data, no external resources.
std::string line_chart(const std::string& title, const std::vector<Date>& dates,
                       const std::vector<double>& actual, const std::vector<double>& predicted);

}  // namespace volcast::svg
