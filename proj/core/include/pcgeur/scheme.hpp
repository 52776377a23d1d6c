#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcg {

/// Periodic binning of one quadrature axis: period T split into d bins of
/// width s = T/d. Bin k covers [offset + k*s, offset + (k+1)*s) modulo T.
struct BinSpec {
  double period = 0.0;
  int outcomes = 0;
  double offset = 0.0;

  BinSpec() = default;
  BinSpec(double T, int d, double origin = 0.0);

  double bin_width() const { return period / outcomes; }
};

/// Index of the bin containing z (always in 0..d-1).
int bin_index(double z, const BinSpec& spec);

/// Square-wave mask: 1 iff z falls in bin k, else 0.
int mask_value(double z, const BinSpec& spec, int k);

/// Fourier coefficient f_{k,N} of the mask for harmonic N != 0.
/// Exactly zero whenever N is a multiple of d.
std::complex<double> fourier_coefficient(int k, int harmonic, int d);

/// Truncated Fourier series of the mask: 1/d plus harmonics up to |N| = n_max.
/// Conjugate pairs are summed together so the result is real.
double reconstruct_mask(const BinSpec& spec, int k, double z, int n_max);

enum class MubFailure { None, DegenerateAngle, NonIntegerM, CoprimalityFailure };

/// Outcome of the period-matching test T1*T2/(2pi) = d*|sin dtheta|/M with
/// integer M satisfying M*n/d not integer for n = 1..d-1.
struct MubCheck {
  bool valid = false;
  double m_raw = 0.0;  ///< 2*pi*d*|sin dtheta| / (T1*T2)
  int m = 0;           ///< nearest integer to m_raw
  MubFailure failure = MubFailure::None;

  std::string reason() const;
};

MubCheck check_mub(double period_theta, double period_theta_prime,
                   double dtheta, int d);

/// A pair of periodically coarse-grained quadrature measurements that are
/// mutually unbiased. Construct through make_scheme; fields are plain data.
struct PcgScheme {
  double theta = 0.0;
  double theta_prime = 0.0;
  BinSpec bins_theta;
  BinSpec bins_theta_prime;
  int m = 0;  ///< integer M of the period-matching condition

  int outcomes() const { return bins_theta.outcomes; }
  double delta() const { return theta - theta_prime; }
};

/// Builds a valid scheme: the second period is fixed by
/// T' = 2*pi*d*|sin(theta - theta')| / (M*T). Throws SchemeInvalidError when
/// the angle is degenerate or M shares a factor with d.
PcgScheme make_scheme(int d, double theta, double theta_prime, int m,
                      double period_theta, double offset_theta = 0.0,
                      double offset_theta_prime = 0.0);

/// Thrown when a scheme fails the mutual-unbiasedness condition.
class SchemeInvalidError : public std::runtime_error {
 public:
  SchemeInvalidError(const MubCheck& check, const std::string& what);
  const MubCheck& check() const { return check_; }

 private:
  MubCheck check_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;  // half-open [lo, hi)
};
using IntervalSet = std::vector<Interval>;

/// Explicit sub-intervals of bin k intersected with [-half_width, half_width).
IntervalSet bin_intervals(const BinSpec& spec, int k, double half_width);

}  // namespace pcg
