#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pcgeur/measurement.hpp"
#include "pcgeur/phasespace.hpp"
#include "pcgeur/scheme.hpp"

namespace pcg {

/// One uncertainty-relation evaluation: entropies of the two conjugate PCG
/// measurements, their sum, and the distance to the ln d bound.
struct EurReport {
  std::string scheme_id;
  std::string state_id;
  double alpha = 0.0;
  double beta = 0.0;
  double h_alpha = 0.0;       // H_alpha of the theta measurement (nats)
  double h_beta = 0.0;        // H_beta of the theta' measurement (nats)
  double sum = 0.0;           // h_alpha + h_beta
  double bound = 0.0;         // ln d
  double deficit = 0.0;       // sum - bound
};

/// Evaluates the uncertainty relation for a pure state prepared in the
/// scheme's theta direction. Refuses invalid schemes.
EurReport eur_report(const WaveFunction& psi, const PcgScheme& scheme,
                     double alpha);

/// Mixed-state variant: members are rotated individually and the outcome
/// statistics combined by convexity.
EurReport eur_report(const Ensemble& rho, const PcgScheme& scheme,
                     double alpha);

enum class StateFamily { TwoGaussian, HermiteGauss };

struct MinimizeOptions {
  StateFamily family = StateFamily::TwoGaussian;
  int hg_modes = 10;       // complex coefficients for the Hermite-Gauss family
  int budget = 500;        // objective evaluations per restart
  int restarts = 8;
  std::uint64_t seed = 1;
};

struct MinimizeResult {
  std::vector<double> best_params;
  double best_sum = 0.0;
  double deficit = 0.0;
  long evaluations = 0;
};

/// Derivative-free probe of the entropy-sum landscape: multi-restart
/// Nelder-Mead over the chosen state family. The first restart starts from a
/// bin-localized-like configuration, which saturates the bound.
MinimizeResult minimize_entropy_sum(const PcgScheme& scheme, double alpha,
                                    const MinimizeOptions& options);

/// Max over bins k of max_l |p_l[conjugate] - 1/d| for bin-localized states,
/// probing both measurement orders.
struct UniformityProbe {
  double max_deviation = 0.0;
  std::vector<double> per_bin;  // deviation for each k, theta-direction bumps
};

UniformityProbe uniformity_probe(const PcgScheme& scheme, const Grid& grid,
                                 double norm_tol = 1e-6);

/// Same probe on a scheme whose M violates the coprimality condition
/// (periods chosen symmetric). Demonstrates that unbiasedness fails.
UniformityProbe invalid_scheme_probe(int d, double dtheta, int m);

/// Grid sized so a bin-localized bump keeps its rotated tail mass below
/// tail_eps outside the domain.
Grid localized_probe_grid(const PcgScheme& scheme, double tail_eps = 1e-6);

/// Differential Renyi entropy of |psi|^2 by grid quadrature (nats).
double continuous_renyi(const WaveFunction& psi, double alpha);

/// One row of the continuous-limit study.
struct LimitRecord {
  int d = 0;
  double period_theta = 0.0;
  double bin_width_theta = 0.0;
  double bin_width_theta_prime = 0.0;
  double h_alpha = 0.0;          // discrete H_alpha[theta]
  double h_beta = 0.0;           // discrete H_beta[theta']
  double rescaled_sum = 0.0;     // H_alpha + H_beta + ln(s s')
  double discrete_bound = 0.0;   // ln(2 pi |sin dtheta|)
  double continuous_sum = 0.0;   // h_alpha[theta] + h_beta[theta']
  double gap_theta = 0.0;        // |(H_alpha + ln s) - h_alpha[theta]|
};

/// Builds M=1 schemes with T_theta = scale_c * sqrt(d) for each d and tracks
/// the rescaled entropy sum against the 2 pi |sin| bound.
std::vector<LimitRecord> limit_study(
    const std::function<WaveFunction(const Grid&)>& make_state, double theta,
    double theta_prime, double alpha, double scale_c,
    const std::vector<int>& d_list, int points_per_bin);

/// Two-party pure state on a tensor-product grid, row-major over (a, b).
struct TwoModeState {
  Grid grid_a;
  Grid grid_b;
  double theta_a = 0.0;
  double theta_b = 0.0;
  std::vector<std::complex<double>> amp;  // amp[ia * grid_b.n + ib]
};

TwoModeState product_state(const WaveFunction& a, const WaveFunction& b);

/// Two-mode squeezed vacuum with squeezing parameter r on a shared grid.
TwoModeState two_mode_squeezed(double r, const Grid& grid);

/// Classical mixture of two-party pure states.
struct TwoModeEnsemble {
  std::vector<std::pair<double, TwoModeState>> members;
};

/// Fractional Fourier transform applied along one party's axis
/// (party 0 = a, party 1 = b).
TwoModeState frft_party(const TwoModeState& state, int party, double dtheta);

struct WitnessReport {
  double theta = 0.0;
  double theta_prime = 0.0;
  double phi = 0.0;
  double phi_prime = 0.0;
  double h_cond_1 = 0.0;  // H1[q_theta | q_phi]
  double h_cond_2 = 0.0;  // H1[q_theta' | q_phi']
  double sum = 0.0;
  double bound = 0.0;     // ln d
  bool violated = false;  // sum < ln d - 1e-3
};

/// Entropic steering witness: Alice measures the scheme's (theta, theta')
/// PCG observables; Bob measures at angles (phi, phi') with the same bin
/// layouts. Values below ln d certify EPR steering.
WitnessReport steering_witness(const TwoModeEnsemble& rho,
                               const PcgScheme& scheme, double phi,
                               double phi_prime);

}  // namespace pcg
