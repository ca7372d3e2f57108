#pragma once

#include <string>
#include <vector>

#include "sns/harness.hpp"
#include "sns/pressure.hpp"
#include "sns/scheme.hpp"

namespace sns {

/// Round-trip-exact decimal rendering of a double (17 significant digits).
std::string fmt17(double v);

/// Field snapshot, binary little-endian: magic "SNS2", format version (u32),
/// N (u32), then per component the full coefficient array in row-major FFT
/// layout as (re, im) float64 pairs.
void save_snapshot(const std::string& path, const SpectralVelocity& u);
SpectralVelocity load_snapshot(const std::string& path);

/// Per-step ledger CSV: m, t, energy, grad_energy, dissipation,
/// energy_defect, fp_iters, fp_residual. Row 0 holds the initial energies.
std::string ledger_csv(const StepLedger& ledger, double dt);
void write_ledger_csv(const std::string& path, const StepLedger& ledger, double dt);

/// Convergence CSV: M, dt, mse_mean, mse_stderr, samples.
std::string convergence_csv(const ErrorReport& report);
void write_convergence_csv(const std::string& path, const ErrorReport& report);

/// Summary: structured JSON text with the fitted order and level table.
std::string summary_json(const ErrorReport& report);
void write_summary(const std::string& path, const ErrorReport& report);

/// Pressure statistics CSV: M, S_det, S_ito.
struct PressureStatsRow {
    int level = 0;
    PressureStats stats;
};
std::string pressure_stats_csv(const std::vector<PressureStatsRow>& rows);

/// Wiener path debug dump: k, m, increment.
std::string path_csv(const WienerPath& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace sns
