#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace pcg::detail {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
};

// Nelder-Mead direct search with the standard reflection/expansion/
// contraction/shrink coefficients. Stops after max_evals objective calls or
// when the simplex diameter drops below diam_tol.
inline SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const std::vector<double>& step,
    long max_evals, double diam_tol = 1e-6) {
  const size_t dim = start.size();
  std::vector<std::vector<double>> pts(dim + 1, start);
  for (size_t i = 0; i < dim; ++i) pts[i + 1][i] += step[i];

  long evals = 0;
  std::vector<double> values(dim + 1);
  for (size_t i = 0; i <= dim; ++i) {
    values[i] = objective(pts[i]);
    ++evals;
  }

  auto order = [&] {
    std::vector<size_t> idx(dim + 1);
    for (size_t i = 0; i <= dim; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> new_pts(dim + 1);
    std::vector<double> new_values(dim + 1);
    for (size_t i = 0; i <= dim; ++i) {
      new_pts[i] = pts[idx[i]];
      new_values[i] = values[idx[i]];
    }
    pts = std::move(new_pts);
    values = std::move(new_values);
  };

  auto diameter = [&] {
    double d = 0.0;
    for (size_t i = 1; i <= dim; ++i) {
      for (size_t j = 0; j < dim; ++j) {
        d = std::max(d, std::abs(pts[i][j] - pts[0][j]));
      }
    }
    return d;
  };

  while (evals < max_evals) {
    order();
    if (diameter() < diam_tol) break;

    std::vector<double> centroid(dim, 0.0);
    for (size_t i = 0; i < dim; ++i) {
      for (size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double t) {
      std::vector<double> x(dim);
      for (size_t j = 0; j < dim; ++j) {
        x[j] = centroid[j] + t * (pts[dim][j] - centroid[j]);
      }
      return x;
    };

    const std::vector<double> reflected = blend(-1.0);
    const double f_reflected = objective(reflected);
    ++evals;

    if (f_reflected < values[0]) {
      const std::vector<double> expanded = blend(-2.0);
      const double f_expanded = objective(expanded);
      ++evals;
      if (f_expanded < f_reflected) {
        pts[dim] = expanded;
        values[dim] = f_expanded;
      } else {
        pts[dim] = reflected;
        values[dim] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[dim - 1]) {
      pts[dim] = reflected;
      values[dim] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[dim];
    const std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
    const double f_contracted = objective(contracted);
    ++evals;
    if (f_contracted < std::min(f_reflected, values[dim])) {
      pts[dim] = contracted;
      values[dim] = f_contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (size_t i = 1; i <= dim && evals < max_evals; ++i) {
      for (size_t j = 0; j < dim; ++j) {
        pts[i][j] = 0.5 * (pts[i][j] + pts[0][j]);
      }
      values[i] = objective(pts[i]);
      ++evals;
    }
  }
  order();
  return SimplexResult{pts[0], values[0], evals};
}

}  // namespace pcg::detail
