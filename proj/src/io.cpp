#include "dlg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dlg::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string crossing_label(CrossingDirection c) {
    return c == CrossingDirection::LeftToRight ? "left_to_right" : "right_to_left";
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

namespace {

std::string points_csv(const std::vector<HopfPoint>& points) {
    std::ostringstream out;
    out << "omega,r,tau_m,crossing\n";
    for (const auto& pt : points) {
        out << format_double(pt.omega) << ',' << format_double(pt.r) << ','
            << format_double(pt.tau_m) << ',' << crossing_label(pt.crossing) << '\n';
    }
    return out.str();
}

}  // namespace

void write_hopf_csv(const std::filesystem::path& path, const HopfCurve& curve) {
    for (const auto& pt : curve.points) {
        const ModelParams params(pt.r, curve.K, curve.D);
        const auto cp =
            characteristic(params, curve.kernel, pt.tau_m, std::complex<double>(0.0, pt.omega));
        if (std::abs(cp.delta) > 1e-9) {
            std::ostringstream msg;
            msg << "hopf curve row fails |Delta(i omega)| <= 1e-9 at omega=" << pt.omega
                << " (|Delta|=" << std::abs(cp.delta) << ")";
            throw std::runtime_error(msg.str());
        }
    }
    write_text(path, points_csv(curve.points));
}

void write_crossings_csv(const std::filesystem::path& path,
                         const std::vector<HopfPoint>& points) {
    write_text(path, points_csv(points));
}

void write_bifurcation_csv(const std::filesystem::path& path,
                           const std::vector<BifurcationRow>& rows) {
    std::ostringstream out;
    out << "tau_m,n_min,n_max,oscillating\n";
    for (const auto& row : rows) {
        if (row.failed) continue;
        out << format_double(row.tau_m) << ',' << format_double(row.n_min) << ','
            << format_double(row.n_max) << ',' << (row.oscillating ? 1 : 0) << '\n';
    }
    write_text(path, out.str());
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ostringstream out;
    out << "t,n,delayed\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]) << ',' << format_double(traj.values[i]) << ','
            << format_double(traj.delayed[i]) << '\n';
    }
    write_text(path, out.str());
}

void write_phase_csv(const std::filesystem::path& path, const PhasePortrait& pp) {
    std::ostringstream out;
    out << "n,delayed\n";
    for (std::size_t i = 0; i < pp.n.size(); ++i)
        out << format_double(pp.n[i]) << ',' << format_double(pp.delayed[i]) << '\n';
    write_text(path, out.str());
}

}  // namespace dlg::io
