#pragma once

#include <string>

#include "msq/cluster.hpp"
#include "msq/gaussian.hpp"
#include "msq/modes.hpp"
#include "msq/pdc.hpp"
#include "msq/schmidt.hpp"
#include "msq/sorter.hpp"
#include "msq/tomography.hpp"

namespace msq::io {

// Plain-text mode files: one header line "n_points extent wavelength",
// then rows of "re im" pairs (1D: one pair per row; 2D: row i holds the
// pairs over the second index).

void write_mode(const std::string& path, const ModeFunction1D& mode);
void write_mode(const std::string& path, const ModeFunction2D& mode);
ModeFunction1D read_mode_1d(const std::string& path);
ModeFunction2D read_mode_2d(const std::string& path);

/// CSV of |u|^2: "theta,intensity" (1D) or "theta_x,theta_y,intensity" (2D).
void write_intensity_csv(const std::string& path, const ModeFunction1D& mode);
void write_intensity_csv(const std::string& path, const ModeFunction2D& mode);

/// Kernel dump: mode-file header extended with the collinear gain, then the
/// sections "ETA" and "BETA", each n rows of n "re im" pairs.
void write_kernel(const std::string& path, const BogoliubovKernel& kernel);
BogoliubovKernel read_kernel(const std::string& path);

/// CSV "n,lambda,g" of a 1D Schmidt spectrum.
void write_spectrum_csv(const std::string& path, const SchmidtDecomposition& d);
/// CSV "m,n,gain,weight" of a 2D gain table.
void write_spectrum_2d_csv(const std::string& path, const Mode2DSpectrum& s);

/// CSV "phase_rad,mode_m,mode_n,db" of phase-scan traces.
void write_trace_csv(const std::string& path, const PhaseTrace& trace);

/// Binary frame container: magic "MSQF", u32 version, u32 n_frames,
/// u32 n_points, f64 extent (little-endian), then row-major float32 frames.
void write_frames(const std::string& path, const FrameEnsemble& ensemble);
FrameEnsemble read_frames(const std::string& path, double wavelength = 710e-9);

/// CSV matrix of a covariance slice.
void write_covariance_csv(const std::string& path, const CovarianceSlice& slice);

/// CSV crosstalk matrix: header "input\\detected,..." then one row per input.
void write_crosstalk_csv(const std::string& path, const std::vector<std::string>& labels,
                         const Eigen::MatrixXd& crosstalk);

/// 8-bit binary PGM of a hologram phase, [-pi, pi] mapped to [0, 255].
void write_hologram_pgm(const std::string& path, const Hologram& hologram);

/// Sorting result as JSON: spots, weights, efficiency.
void write_sort_report_json(const std::string& path, const SortReport& report);

void write_text(const std::string& path, const std::string& text);

/// Deterministic formatting used by every text writer.
std::string format_double(double v);

} // namespace msq::io
