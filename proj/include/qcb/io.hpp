#ifndef QCB_IO_HPP
#define QCB_IO_HPP

// File formats: the matrix exchange JSON {dim, re, im} with row-major entry
// arrays, eigen-spectrum CSV export, Hamiltonian spectrum files and sample
// specifications inside campaign configs.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcb/errors.hpp"
#include "qcb/matrix.hpp"
#include "qcb/qcstate.hpp"
#include "qcb/sampling.hpp"
#include "qcb/spectrum.hpp"

namespace qcb {

using Json = nlohmann::json;

// fixed shortest-roundtrip formatting for doubles keeps reports reproducible
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Matrix exchange: {"dim": d, "re": [...], "im": [...]} row-major
// ---------------------------------------------------------------------------

inline Json matrix_to_json(const Matrix& m) {
  Json j;
  j["dim"] = m.rows();
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("re"))
    throw ValidationError("matrix json: missing dim/re fields");
  const Eigen::Index d = j.at("dim").get<Eigen::Index>();
  const std::vector<double> re = j.at("re").get<std::vector<double>>();
  std::vector<double> im;
  if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
  if (re.size() != static_cast<std::size_t>(d * d) ||
      (!im.empty() && im.size() != re.size()))
    throw ValidationError("matrix json: entry arrays do not match dim^2");
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k) {
      const std::size_t idx = static_cast<std::size_t>(i * d + k);
      m(i, k) = Complex(re[idx], im.empty() ? 0.0 : im[idx]);
    }
  return m;
}

inline void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("json parse failed for " + path + ": " + e.what());
  }
  return j;
}

inline DensityMatrix load_density(const std::string& path) {
  return DensityMatrix::from(matrix_from_json(load_json(path)));
}

// q-c state file: {"blocks": [{"weight": p_k, "state": {matrix}}, ...]}
inline QCState load_qc_state(const std::string& path) {
  const Json j = load_json(path);
  if (!j.contains("blocks")) throw ValidationError("qc state json: missing blocks");
  std::vector<double> weights;
  std::vector<DensityMatrix> blocks;
  for (const Json& b : j.at("blocks")) {
    weights.push_back(b.at("weight").get<double>());
    blocks.push_back(DensityMatrix::from(matrix_from_json(b.at("state"))));
  }
  return QCState(std::move(weights), std::move(blocks));
}

// eigen-spectrum CSV: index,eigenvalue (nonincreasing)
inline void write_spectrum_csv(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "index,eigenvalue\n";
  const std::vector<double> ev = sorted_spectrum(rho);
  for (std::size_t i = 0; i < ev.size(); ++i)
    out << i + 1 << ',' << format_double(ev[i]) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Spectrum files: {"family": "oscillator"|"linear"|"explicit", ...}
// ---------------------------------------------------------------------------

struct SpectrumDesc {
  std::string family = "oscillator";
  double slope = 1.0;               // linear family
  std::vector<double> levels;       // explicit family
  std::size_t length = HamiltonianSpectrum::kDefaultLength;

  HamiltonianSpectrum build(std::size_t min_length = 2) const {
    const std::size_t L = std::max(length, min_length);
    if (family == "oscillator") return HamiltonianSpectrum::oscillator(L);
    if (family == "linear") return HamiltonianSpectrum::linear(slope, L);
    if (family == "explicit") {
      HamiltonianSpectrum s = HamiltonianSpectrum::explicit_list(levels);
      if (s.length() < min_length)
        throw ValidationError("spectrum: explicit list shorter than required length " +
                              std::to_string(min_length));
      return s;
    }
    throw ValidationError("spectrum: unknown family '" + family + "'");
  }
};

inline SpectrumDesc spectrum_desc_from_json(const Json& j) {
  SpectrumDesc d;
  d.family = j.value("family", std::string("oscillator"));
  if (j.contains("c")) d.slope = j.at("c").get<double>();
  if (j.contains("slope")) d.slope = j.at("slope").get<double>();
  if (j.contains("eigenvalues")) d.levels = j.at("eigenvalues").get<std::vector<double>>();
  if (j.contains("length")) d.length = j.at("length").get<std::size_t>();
  return d;
}

inline Json spectrum_desc_to_json(const SpectrumDesc& d) {
  Json j;
  j["family"] = d.family;
  if (d.family == "linear") j["c"] = d.slope;
  if (d.family == "explicit") j["eigenvalues"] = d.levels;
  j["length"] = d.length;
  return j;
}

inline HamiltonianSpectrum load_spectrum(const std::string& path,
                                         std::size_t min_length = 2) {
  return spectrum_desc_from_json(load_json(path)).build(min_length);
}

// ---------------------------------------------------------------------------
// Sample specifications (inside campaign configs)
// ---------------------------------------------------------------------------

struct SampleSpec {
  SampleKind kind = SampleKind::CommutingPair;
  int dim = 8;
  int dA = 2;
  int dB = 2;
  int blocks = 3;
  int m = 1;
  int k = 2;
  int rank = 0;  // 0 = full rank
  double target_epsilon = 0.1;
  double a = 2.0;
  double c = 0.5;
  double E = -1.0;   // negative: measure from the sampled states
  double beta = kLn2;
  SpectrumDesc spectrum;
  std::uint64_t seed = 0;
};

inline SampleSpec sample_spec_from_json(const Json& j) {
  SampleSpec s;
  if (j.contains("kind")) s.kind = sample_kind_from_string(j.at("kind").get<std::string>());
  s.dim = j.value("dim", s.dim);
  s.dA = j.value("dA", s.dA);
  s.dB = j.value("dB", s.dB);
  s.blocks = j.value("blocks", s.blocks);
  s.m = j.value("m", s.m);
  s.k = j.value("k", s.k);
  s.rank = j.value("rank", s.rank);
  s.target_epsilon = j.value("target_epsilon", s.target_epsilon);
  s.a = j.value("a", s.a);
  s.c = j.value("c", s.c);
  s.E = j.value("E", s.E);
  s.beta = j.value("beta", s.beta);
  if (j.contains("spectrum")) s.spectrum = spectrum_desc_from_json(j.at("spectrum"));
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

inline Json sample_spec_to_json(const SampleSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["dim"] = s.dim;
  j["dA"] = s.dA;
  j["dB"] = s.dB;
  j["blocks"] = s.blocks;
  j["m"] = s.m;
  j["k"] = s.k;
  j["rank"] = s.rank;
  j["target_epsilon"] = s.target_epsilon;
  j["a"] = s.a;
  j["c"] = s.c;
  j["E"] = s.E;
  j["beta"] = s.beta;
  j["spectrum"] = spectrum_desc_to_json(s.spectrum);
  j["seed"] = s.seed;
  return j;
}

}  // namespace qcb

#endif  // QCB_IO_HPP
