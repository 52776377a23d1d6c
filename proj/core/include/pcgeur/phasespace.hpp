#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "pcgeur/scheme.hpp"

namespace pcg {

/// Uniform quadrature grid with points q_j = (j - N/2) * dq, j = 0..N-1.
struct Grid {
  int n = 0;
  double dq = 0.0;

  Grid() = default;
  Grid(int points, double spacing);

  double point(int j) const { return (j - n / 2) * dq; }
  double half_width() const { return 0.5 * n * dq; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n == b.n && a.dq == b.dq;
  }
};

/// Pure state sampled on a grid, tagged with the quadrature direction the
/// samples represent. Factories normalize so sum |psi_j|^2 * dq = 1.
struct WaveFunction {
  Grid grid;
  double theta = 0.0;
  std::vector<std::complex<double>> amp;

  double norm() const;
};

/// Convex mixture of pure states on a shared grid and direction.
struct Ensemble {
  std::vector<std::pair<double, WaveFunction>> members;
};

void validate_ensemble(const Ensemble& rho);

enum class Direction { Theta, ThetaPrime };

const BinSpec& bins_for(const PcgScheme& scheme, Direction dir);
double angle_for(const PcgScheme& scheme, Direction dir);

/// n-th harmonic oscillator eigenfunction (hbar = 1, unit mass/frequency).
WaveFunction hermite_gauss(int n, const Grid& grid);

/// Normalized Gaussian packet exp(-(q-center)^2/(4 sigma^2) + i*momentum*q);
/// |psi|^2 is a normal density with mean `center` and standard deviation
/// `sigma`. gaussian(0, 1/sqrt(2), 0) coincides with hermite_gauss(0).
WaveFunction gaussian(double center, double sigma, double momentum,
                      const Grid& grid);

/// Smooth state supported strictly inside the sub-interval of bin k closest
/// to the origin (cosine-squared bump over the central 80%).
WaveFunction bin_localized_state(const PcgScheme& scheme, Direction dir, int k,
                                 const Grid& grid);

/// Seeded random superposition of the first n_max Hermite-Gauss modes.
WaveFunction random_superposition(int n_max, std::uint64_t seed,
                                  const Grid& grid);

/// Fractional Fourier transform by angle difference dtheta. The output lives
/// on the same grid and is tagged with angle theta - dtheta. Throws on
/// degenerate angles (sin dtheta == 0) and when the post-hoc unitarity check
/// fails (norm drift > norm_tol), which signals inadequate sampling.
WaveFunction frft(const WaveFunction& psi, double dtheta,
                  double norm_tol = 1e-6);

/// Cached FrFT kernel matrix (row-major, out x in, includes the dq factor).
/// Safe for concurrent readers; inserts are serialized.
const std::vector<std::complex<double>>& frft_kernel(const Grid& grid,
                                                     double dtheta);

/// Quadrature inner product <psi|phi>. Requires matching grid and direction.
std::complex<double> overlap(const WaveFunction& psi, const WaveFunction& phi);

}  // namespace pcg
