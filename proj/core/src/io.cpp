#include "msq/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace msq::io {

namespace {

std::ofstream open_out(const std::string& path, std::ios_base::openmode mode = std::ios_base::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path, std::ios_base::openmode mode = std::ios_base::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

TransverseGrid read_grid_header(std::istream& in, const std::string& path, double* extra = nullptr) {
  int n = 0;
  double extent = 0.0, wavelength = 0.0;
  if (!(in >> n >> extent >> wavelength)) throw IoError("bad mode-file header in " + path);
  if (extra && !(in >> *extra)) throw IoError("bad kernel header in " + path);
  return TransverseGrid::make(n, extent, wavelength);
}

void write_matrix_rows(std::ostream& out, const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j).real()) << ' ' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

Eigen::MatrixXcd read_matrix_rows(std::istream& in, Eigen::Index rows, Eigen::Index cols,
                                  const std::string& path) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) throw IoError("truncated matrix data in " + path);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
         std::uint32_t(b[3]) << 24;
}

} // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_mode(const std::string& path, const ModeFunction1D& mode) {
  auto out = open_out(path);
  out << mode.grid.n_points << ' ' << format_double(mode.grid.extent) << ' '
      << format_double(mode.grid.wavelength) << '\n';
  write_matrix_rows(out, mode.samples);
}

void write_mode(const std::string& path, const ModeFunction2D& mode) {
  auto out = open_out(path);
  out << mode.grid.n_points << ' ' << format_double(mode.grid.extent) << ' '
      << format_double(mode.grid.wavelength) << '\n';
  write_matrix_rows(out, mode.samples);
}

ModeFunction1D read_mode_1d(const std::string& path) {
  auto in = open_in(path);
  const TransverseGrid grid = read_grid_header(in, path);
  return ModeFunction1D{grid, read_matrix_rows(in, grid.n_points, 1, path)};
}

ModeFunction2D read_mode_2d(const std::string& path) {
  auto in = open_in(path);
  const TransverseGrid grid = read_grid_header(in, path);
  return ModeFunction2D{grid, read_matrix_rows(in, grid.n_points, grid.n_points, path), -1, -1};
}

void write_intensity_csv(const std::string& path, const ModeFunction1D& mode) {
  auto out = open_out(path);
  out << "theta,intensity\n";
  for (int i = 0; i < mode.grid.n_points; ++i)
    out << format_double(mode.grid.theta(i)) << ',' << format_double(std::norm(mode.samples(i))) << '\n';
}

void write_intensity_csv(const std::string& path, const ModeFunction2D& mode) {
  auto out = open_out(path);
  out << "theta_x,theta_y,intensity\n";
  for (int i = 0; i < mode.grid.n_points; ++i)
    for (int j = 0; j < mode.grid.n_points; ++j)
      out << format_double(mode.grid.theta(i)) << ',' << format_double(mode.grid.theta(j)) << ','
          << format_double(std::norm(mode.samples(i, j))) << '\n';
}

void write_kernel(const std::string& path, const BogoliubovKernel& kernel) {
  auto out = open_out(path);
  out << kernel.grid.n_points << ' ' << format_double(kernel.grid.extent) << ' '
      << format_double(kernel.grid.wavelength) << ' ' << format_double(kernel.gain) << '\n';
  out << "ETA\n";
  write_matrix_rows(out, kernel.eta);
  out << "BETA\n";
  write_matrix_rows(out, kernel.beta);
}

BogoliubovKernel read_kernel(const std::string& path) {
  auto in = open_in(path);
  double gain = 0.0;
  const TransverseGrid grid = read_grid_header(in, path, &gain);
  std::string section;
  if (!(in >> section) || section != "ETA") throw IoError("missing ETA section in " + path);
  Eigen::MatrixXcd eta = read_matrix_rows(in, grid.n_points, grid.n_points, path);
  if (!(in >> section) || section != "BETA") throw IoError("missing BETA section in " + path);
  Eigen::MatrixXcd beta = read_matrix_rows(in, grid.n_points, grid.n_points, path);
  BogoliubovKernel k;
  k.grid = grid;
  k.gain = gain;
  k.eta = std::move(eta);
  k.beta = std::move(beta);
  return k;
}

void write_spectrum_csv(const std::string& path, const SchmidtDecomposition& d) {
  auto out = open_out(path);
  out << "n,lambda,g\n";
  for (int i = 0; i < d.size(); ++i)
    out << i << ',' << format_double(d.weights(i)) << ',' << format_double(d.gains(i)) << '\n';
}

void write_spectrum_2d_csv(const std::string& path, const Mode2DSpectrum& s) {
  auto out = open_out(path);
  out << "m,n,gain,weight\n";
  for (int m = 0; m <= s.max_order; ++m)
    for (int n = 0; n <= s.max_order; ++n)
      out << m << ',' << n << ',' << format_double(s.gains(m, n)) << ','
          << format_double(s.weights(m, n)) << '\n';
}

void write_trace_csv(const std::string& path, const PhaseTrace& trace) {
  auto out = open_out(path);
  out << "phase_rad,mode_m,mode_n,db\n";
  for (int j = 0; j < trace.phases.size(); ++j)
    for (size_t i = 0; i < trace.states.size(); ++i)
      out << format_double(trace.phases(j)) << ',' << trace.states[i].m << ',' << trace.states[i].n
          << ',' << format_double(trace.db(static_cast<int>(i), j)) << '\n';
}

void write_frames(const std::string& path, const FrameEnsemble& ensemble) {
  auto out = open_out(path, std::ios_base::out | std::ios_base::binary);
  out.write("MSQF", 4);
  put_u32(out, 1u);
  put_u32(out, static_cast<std::uint32_t>(ensemble.n_frames));
  put_u32(out, static_cast<std::uint32_t>(ensemble.grid.n_points));
  const double extent = ensemble.grid.extent;
  static_assert(sizeof(double) == 8);
  out.write(reinterpret_cast<const char*>(&extent), 8);
  const int npts = ensemble.grid.n_points;
  std::vector<float> row(npts);
  for (const Eigen::MatrixXf& frame : ensemble.frames) {
    for (int iy = 0; iy < npts; ++iy) {
      for (int ix = 0; ix < npts; ++ix) row[ix] = frame(iy, ix);
      out.write(reinterpret_cast<const char*>(row.data()), npts * sizeof(float));
    }
  }
}

FrameEnsemble read_frames(const std::string& path, double wavelength) {
  auto in = open_in(path, std::ios_base::in | std::ios_base::binary);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MSQF", 4) != 0) throw IoError("not a frame container: " + path);
  const std::uint32_t version = get_u32(in);
  if (version != 1u) throw IoError("unsupported frame container version in " + path);
  const std::uint32_t n_frames = get_u32(in);
  const std::uint32_t n_points = get_u32(in);
  double extent = 0.0;
  in.read(reinterpret_cast<char*>(&extent), 8);
  if (!in) throw IoError("truncated frame container header in " + path);

  FrameEnsemble ensemble;
  ensemble.grid = TransverseGrid::make(static_cast<int>(n_points), extent, wavelength);
  ensemble.n_frames = static_cast<int>(n_frames);
  ensemble.frames.resize(n_frames);
  std::vector<float> row(n_points);
  for (std::uint32_t f = 0; f < n_frames; ++f) {
    Eigen::MatrixXf frame(n_points, n_points);
    for (std::uint32_t iy = 0; iy < n_points; ++iy) {
      in.read(reinterpret_cast<char*>(row.data()), n_points * sizeof(float));
      if (!in) throw IoError("truncated frame data in " + path);
      for (std::uint32_t ix = 0; ix < n_points; ++ix) frame(iy, ix) = row[ix];
    }
    ensemble.frames[f] = std::move(frame);
  }
  return ensemble;
}

void write_covariance_csv(const std::string& path, const CovarianceSlice& slice) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < slice.covariance.rows(); ++i) {
    for (Eigen::Index j = 0; j < slice.covariance.cols(); ++j) {
      if (j) out << ',';
      out << format_double(slice.covariance(i, j));
    }
    out << '\n';
  }
}

void write_crosstalk_csv(const std::string& path, const std::vector<std::string>& labels,
                         const Eigen::MatrixXd& crosstalk) {
  if (static_cast<Eigen::Index>(labels.size()) != crosstalk.rows())
    throw ConfigError("write_crosstalk_csv: label count does not match matrix");
  auto out = open_out(path);
  out << "input";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (Eigen::Index i = 0; i < crosstalk.rows(); ++i) {
    out << labels[i];
    for (Eigen::Index j = 0; j < crosstalk.cols(); ++j) out << ',' << format_double(crosstalk(i, j));
    out << '\n';
  }
}

void write_hologram_pgm(const std::string& path, const Hologram& hologram) {
  auto out = open_out(path, std::ios_base::out | std::ios_base::binary);
  out << "P5\n" << hologram.slm.nx << ' ' << hologram.slm.ny << "\n255\n";
  std::vector<unsigned char> row(hologram.slm.nx);
  for (int iy = 0; iy < hologram.slm.ny; ++iy) {
    for (int ix = 0; ix < hologram.slm.nx; ++ix) {
      const double g = (hologram.phase(iy, ix) + kPi) / (2.0 * kPi) * 255.0;
      row[ix] = static_cast<unsigned char>(std::lround(std::min(255.0, std::max(0.0, g))));
    }
    out.write(reinterpret_cast<const char*>(row.data()), hologram.slm.nx);
  }
}

void write_sort_report_json(const std::string& path, const SortReport& report) {
  nlohmann::ordered_json j;
  j["efficiency"] = report.efficiency;
  j["input_power"] = report.input_power;
  j["total_fourier_power"] = report.total_power;
  auto& spots = j["spots"];
  for (size_t i = 0; i < report.spots.size(); ++i) {
    nlohmann::ordered_json s;
    s["mode_m"] = report.spots[i].mode_m;
    s["mode_n"] = report.spots[i].mode_n;
    s["fx"] = report.spots[i].fx;
    s["fy"] = report.spots[i].fy;
    s["window_power"] = report.window_power(static_cast<int>(i));
    s["zeta"] = report.zeta(static_cast<int>(i));
    spots.push_back(s);
  }
  write_text(path, j.dump(2) + "\n");
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path, std::ios_base::out | std::ios_base::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

} // namespace msq::io
