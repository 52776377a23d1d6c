#pragma once

#include <vector>

#include "pcgeur/phasespace.hpp"
#include "pcgeur/scheme.hpp"

namespace pcg {

/// Outcome probabilities of one PCG measurement. Entries are clamped at zero
/// and renormalized to machine-exact sum 1 on construction.
struct ProbabilityVector {
  std::vector<double> p;

  int size() const { return static_cast<int>(p.size()); }
  double operator[](int k) const { return p[k]; }
};

/// Validates, clamps tiny negatives (>= -1e-12) and renormalizes.
ProbabilityVector make_probability_vector(std::vector<double> raw);

/// PCG outcome probabilities of a pure state. The state's direction tag must
/// match the requested measurement direction; rotate with frft first.
ProbabilityVector pcg_probabilities(const WaveFunction& psi,
                                    const PcgScheme& scheme, Direction dir);

/// Convex combination of member probabilities.
ProbabilityVector ensemble_probabilities(const Ensemble& rho,
                                         const PcgScheme& scheme,
                                         Direction dir);

/// Renyi entropy in nats. alpha = 1 gives Shannon, alpha = infinity the
/// min-entropy. Valid for alpha in [1/2, infinity].
double renyi_entropy(const ProbabilityVector& p, double alpha);

/// Conjugate order beta = alpha / (2 alpha - 1); 1/2 <-> infinity.
double conjugate_order(double alpha);

/// Joint outcome distribution p(k, l) over two PCG measurements.
struct JointDistribution {
  int rows = 0;
  int cols = 0;
  std::vector<double> p;  // row-major, p[k * cols + l]

  double at(int k, int l) const { return p[static_cast<size_t>(k) * cols + l]; }
  ProbabilityVector marginal_rows() const;  // distribution of k
  ProbabilityVector marginal_cols() const;  // distribution of l
};

JointDistribution make_joint_distribution(int rows, int cols,
                                          std::vector<double> raw);

/// Conditional Shannon entropy H[K|L] = H(K,L) - H(L), in nats.
double conditional_shannon(const JointDistribution& joint);

/// Projects onto bin k and renormalizes: mask(q_j) psi_j / sqrt(p_k).
/// Throws when the bin carries probability below 1e-12.
WaveFunction project_and_normalize(const WaveFunction& psi,
                                   const PcgScheme& scheme, Direction dir,
                                   int k);

/// Per-sample quadrature weights toward each bin. Sample j contributes
/// weight w to bin b for every (b, w) pair; boundary samples can feed two
/// bins. Weights follow a composite Simpson rule inside each run of cells
/// belonging to one bin, so bin-edge-aligned grids integrate smooth densities
/// at high order.
std::vector<std::vector<std::pair<int, double>>> sample_bin_weights(
    const Grid& grid, const BinSpec& spec);

/// Aligned grid for a scheme: spacing dq = s_theta / points_per_bin (refined
/// if needed so the conjugate bin width is also an integer number of cells),
/// extended to cover at least +/- min_half_width.
Grid aligned_grid(const PcgScheme& scheme, int points_per_bin,
                  double min_half_width);

}  // namespace pcg
