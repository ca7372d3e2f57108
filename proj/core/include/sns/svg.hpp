#pragma once

#include <string>

#include "sns/harness.hpp"

namespace sns {

/// Log-log plot of mse vs dt with +-2 stderr error bars and a reference
/// guide of slope 1 in mse coordinates (i.e. strong order 1/2, since
/// mse ~ dt^{2 alpha}). Self-contained SVG, no plotting dependency.
std::string convergence_svg(const ErrorReport& report);

void write_convergence_svg(const std::string& path, const ErrorReport& report);

}  // namespace sns
