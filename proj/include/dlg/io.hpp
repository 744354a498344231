#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dlg/simulate.hpp"
#include "dlg/stability.hpp"

// CSV/JSON emission.  All floats are printed with 12 significant digits,
// rows end with LF, and a header row is always present, so identical inputs
// produce byte-identical files.

namespace dlg::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double v);

std::string crossing_label(CrossingDirection c);

void write_text(const std::filesystem::path& path, const std::string& content);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Columns: omega,r,tau_m,crossing.  Re-validates |Delta(i omega)| <= 1e-9
/// for every row before writing.
void write_hopf_csv(const std::filesystem::path& path, const HopfCurve& curve);

/// Columns: omega,r,tau_m,crossing (crossings at fixed parameters).
void write_crossings_csv(const std::filesystem::path& path,
                         const std::vector<HopfPoint>& points);

/// Columns: tau_m,n_min,n_max,oscillating.
void write_bifurcation_csv(const std::filesystem::path& path,
                           const std::vector<BifurcationRow>& rows);

/// Columns: t,n,delayed.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Columns: n,delayed.
void write_phase_csv(const std::filesystem::path& path, const PhasePortrait& pp);

}  // namespace dlg::io
