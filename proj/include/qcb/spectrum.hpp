#ifndef QCB_SPECTRUM_HPP
#define QCB_SPECTRUM_HPP

// Hamiltonian spectra represented in the operator's own eigenbasis: a
// nondecreasing level sequence h_1 <= h_2 <= ... with h_1 >= 0. Closed-form
// families (oscillator, linear) stand for infinite operators; their partition
// sums carry exact geometric remainders beyond the materialized prefix, so
// thermal quantities do not degrade at any energy. Explicit lists are finite
// operators with zero tail by definition.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qcb/errors.hpp"

namespace qcb {

class HamiltonianSpectrum {
public:
  enum class Family {
    Affine,          // h_k = offset + slope*(k-1), infinite
    ZeroPlusAffine,  // h_1 = 0, then offset + slope*(k-2), infinite
    Explicit         // finite list
  };

  static HamiltonianSpectrum oscillator(std::size_t length = kDefaultLength) {
    return HamiltonianSpectrum(Family::Affine, 0.0, 1.0, length);
  }

  static HamiltonianSpectrum linear(double slope, std::size_t length = kDefaultLength) {
    if (slope <= 0.0)
      throw ValidationError("HamiltonianSpectrum::linear: slope must be positive");
    return HamiltonianSpectrum(Family::Affine, 0.0, slope, length);
  }

  static HamiltonianSpectrum affine(double offset, double slope,
                                    std::size_t length = kDefaultLength) {
    if (offset < 0.0 || slope <= 0.0)
      throw ValidationError("HamiltonianSpectrum::affine: need offset >= 0, slope > 0");
    return HamiltonianSpectrum(Family::Affine, offset, slope, length);
  }

  static HamiltonianSpectrum explicit_list(std::vector<double> levels) {
    if (levels.empty()) throw ValidationError("HamiltonianSpectrum: empty level list");
    if (levels.front() < 0.0)
      throw ValidationError("HamiltonianSpectrum: negative ground level " +
                            std::to_string(levels.front()));
    for (std::size_t i = 1; i < levels.size(); ++i)
      if (levels[i] < levels[i - 1])
        throw ValidationError("HamiltonianSpectrum: levels must be nondecreasing (index " +
                              std::to_string(i) + ")");
    HamiltonianSpectrum s(Family::Explicit, 0.0, 0.0, levels.size());
    s.levels_ = std::move(levels);
    return s;
  }

  Family family() const { return family_; }
  std::size_t length() const { return length_; }
  double offset() const { return offset_; }
  double slope() const { return slope_; }

  // 0-based level access: level(0) = h_1
  double level(std::size_t k) const {
    if (k >= length_)
      throw ValidationError("HamiltonianSpectrum: level index " + std::to_string(k) +
                            " beyond truncation " + std::to_string(length_));
    switch (family_) {
      case Family::Affine:
        return offset_ + slope_ * static_cast<double>(k);
      case Family::ZeroPlusAffine:
        return k == 0 ? 0.0 : offset_ + slope_ * static_cast<double>(k - 1);
      case Family::Explicit:
        return levels_[k];
    }
    return 0.0;
  }

  double min_level() const { return level(0); }
  bool grounded() const { return min_level() == 0.0; }
  bool infinite() const { return family_ != Family::Explicit; }

  std::size_t ground_multiplicity(double tol = 1e-12) const {
    std::size_t m = 1;
    while (m < length_ && level(m) <= min_level() + tol) ++m;
    return m;
  }

  HamiltonianSpectrum resized(std::size_t length) const {
    if (length == 0) throw ValidationError("HamiltonianSpectrum: zero length");
    if (family_ == Family::Explicit) {
      if (length > levels_.size())
        throw ValidationError("HamiltonianSpectrum: explicit list cannot be extended");
      std::vector<double> v(levels_.begin(),
                            levels_.begin() + static_cast<std::ptrdiff_t>(length));
      return explicit_list(std::move(v));
    }
    HamiltonianSpectrum s(family_, offset_, slope_, length);
    return s;
  }

  // spectrum with the lowest m levels removed (h_{m+1}, h_{m+2}, ...)
  HamiltonianSpectrum dropped(std::size_t m) const {
    if (m == 0) throw ValidationError("HamiltonianSpectrum::dropped: m must be >= 1");
    if (m >= length_)
      throw ValidationError("HamiltonianSpectrum::dropped: m = " + std::to_string(m) +
                            " not below truncation length " + std::to_string(length_));
    switch (family_) {
      case Family::Affine:
        return HamiltonianSpectrum(Family::Affine, offset_ + slope_ * static_cast<double>(m),
                                   slope_, length_ - m);
      case Family::ZeroPlusAffine:
        return HamiltonianSpectrum(Family::Affine,
                                   offset_ + slope_ * static_cast<double>(m - 1), slope_,
                                   length_ - m);
      case Family::Explicit: {
        std::vector<double> v(levels_.begin() + static_cast<std::ptrdiff_t>(m),
                              levels_.end());
        return explicit_list(std::move(v));
      }
    }
    throw ValidationError("HamiltonianSpectrum::dropped: unreachable");
  }

  // zero ground level plus the dropped spectrum (0, h_{m+1}, h_{m+2}, ...)
  HamiltonianSpectrum zero_plus_dropped(std::size_t m) const {
    HamiltonianSpectrum tail = dropped(m);
    switch (tail.family_) {
      case Family::Affine:
        return HamiltonianSpectrum(Family::ZeroPlusAffine, tail.offset_, tail.slope_,
                                   tail.length_ + 1);
      case Family::Explicit: {
        std::vector<double> v;
        v.reserve(tail.levels_.size() + 1);
        v.push_back(0.0);
        v.insert(v.end(), tail.levels_.begin(), tail.levels_.end());
        return explicit_list(std::move(v));
      }
      case Family::ZeroPlusAffine:
        break;  // dropped() never returns this family
    }
    throw ValidationError("HamiltonianSpectrum::zero_plus_dropped: unreachable");
  }

  bool same_operator(const HamiltonianSpectrum& other, double tol = 1e-12) const {
    if (family_ != other.family_ || length_ != other.length_) return false;
    if (family_ == Family::Explicit) {
      for (std::size_t i = 0; i < length_; ++i)
        if (std::abs(levels_[i] - other.levels_[i]) > tol) return false;
      return true;
    }
    return std::abs(offset_ - other.offset_) <= tol && std::abs(slope_ - other.slope_) <= tol;
  }

  // Exact partition sums at inverse temperature beta > 0, computed relative
  // to the ground level: weight0 = sum_k e^{-beta(h_k - h_1)} and
  // weight1 = sum_k (h_k - h_1) e^{-beta(h_k - h_1)}. Materialized prefix
  // plus geometric remainder for the infinite families.
  struct PartitionSums {
    double weight0;    // shifted partition sum, >= 1
    double weight1;    // shifted first moment
    double tail_mass;  // fraction of weight0 beyond the materialized prefix
  };

  PartitionSums partition_sums(double beta) const {
    if (beta <= 0.0)
      throw ValidationError("partition_sums: beta must be positive, got " +
                            std::to_string(beta));
    const double h0 = min_level();
    double w0 = 0.0, w1 = 0.0;
    for (std::size_t k = 0; k < length_; ++k) {
      const double d = level(k) - h0;
      const double w = std::exp(-beta * d);
      w0 += w;
      w1 += d * w;
    }
    double tail0 = 0.0, tail1 = 0.0;
    if (family_ != Family::Explicit) {
      // remainder of sum_{k >= L} e^{-beta(h_k - h_1)} for affine levels:
      // with x = e^{-beta*slope} and dL the shifted level at index L,
      // sum x^j e^{-beta dL} over j >= 0 = e^{-beta dL}/(1-x) and the first
      // moment adds slope * x/(1-x) per geometric step
      const double x = std::exp(-beta * slope_);
      const double dL = next_shifted_level(h0);
      const double head = std::exp(-beta * dL);
      if (head > 0.0 && x < 1.0) {
        tail0 = head / (1.0 - x);
        tail1 = head * (dL / (1.0 - x) + slope_ * x / ((1.0 - x) * (1.0 - x)));
      }
    }
    return {w0 + tail0, w1 + tail1, tail0 / (w0 + tail0)};
  }

  static constexpr std::size_t kDefaultLength = 256;

private:
  HamiltonianSpectrum(Family f, double offset, double slope, std::size_t length)
      : family_(f), offset_(offset), slope_(slope), length_(length) {
    if (length == 0) throw ValidationError("HamiltonianSpectrum: zero length");
  }

  // shifted value of the first level beyond the prefix (infinite families)
  double next_shifted_level(double h0) const {
    if (family_ == Family::Affine)
      return offset_ + slope_ * static_cast<double>(length_) - h0;
    return offset_ + slope_ * static_cast<double>(length_ - 1) - h0;
  }

  Family family_;
  double offset_ = 0.0;
  double slope_ = 0.0;
  std::size_t length_ = 0;
  std::vector<double> levels_;  // Explicit only
};

}  // namespace qcb

#endif  // QCB_SPECTRUM_HPP
