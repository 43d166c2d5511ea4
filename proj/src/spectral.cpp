#include "pathrank/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pathrank {

namespace {

// Power iteration on M + I.  apply(x, y) must write y = M x; the +I
// shift and the stopping logic live here.  Non-negative M only.
//
// With x positive, the ratios y_i / x_i enclose the Perron root of
// M + I (Collatz-Wielandt), and the Rayleigh quotient is their
// x_i^2-weighted average, so it always lies inside the enclosure.
// The primary stop is the certified one: the enclosure is tight.
// For reducible matrices the enclosure can stay wide forever (a
// block-diagonal matrix keeps one ratio per block), so a Rayleigh
// quotient that stagnates for several consecutive iterations is
// accepted as the fallback; a single agreement is NOT trusted, it can
// happen by coincidence far from the limit.
template <class Apply>
double shifted_power_iteration(int n, Apply&& apply,
                               const PowerIterationOptions& opts) {
  if (n <= 0) throw InvalidInput("spectral radius of an empty matrix");
  constexpr int kStagnantRuns = 8;
  std::vector<double> x(static_cast<std::size_t>(n), 1.0);
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  double prev = std::numeric_limits<double>::quiet_NaN();
  int stagnant = 0;
  for (long it = 0; it < opts.max_iterations; ++it) {
    apply(x, y);
    double dot = 0.0, norm2 = 0.0, peak = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i < n; ++i) {
      y[i] += x[i];
      dot += x[i] * y[i];
      norm2 += x[i] * x[i];
      peak = std::max(peak, y[i]);
      double ratio = y[i] / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    // Subtracting the shift at the end keeps the estimate's relative
    // error where the tolerance expects it.
    double est = dot / norm2;
    if (hi - lo <= opts.rayleigh_tolerance * hi) return est - 1.0;
    if (!std::isnan(prev) &&
        std::abs(est - prev) <= opts.rayleigh_tolerance * std::abs(est)) {
      if (++stagnant >= kStagnantRuns) return est - 1.0;
    } else {
      stagnant = 0;
    }
    prev = est;
    // y >= x elementwise and x starts positive, so peak > 0 here.
    for (int i = 0; i < n; ++i) x[i] = y[i] / peak;
  }
  std::ostringstream os;
  os << "power iteration hit the cap of " << opts.max_iterations
     << " iterations; last estimate " << (prev - 1.0);
  throw ConvergenceError(os.str());
}

}  // namespace

double spectral_radius(const SquareMatrix& m,
                       const PowerIterationOptions& opts) {
  const int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(m.at(i, j) >= 0.0))
        throw InvalidInput("spectral radius needs a non-negative matrix");
  return shifted_power_iteration(
      n,
      [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int i = 0; i < n; ++i) {
          double sum = 0.0;
          for (int j = 0; j < n; ++j) sum += m.at(i, j) * x[j];
          y[i] = sum;
        }
      },
      opts);
}

double spectral_radius(const SparseAdjacency& adj,
                       const PowerIterationOptions& opts) {
  const int n = adj.size();
  for (const auto& row : adj.targets)
    for (std::int32_t t : row)
      if (t < 0 || t >= n)
        throw InvalidInput("adjacency target out of range");
  return shifted_power_iteration(
      n,
      [&](const std::vector<double>& x, std::vector<double>& y) {
        std::fill(y.begin(), y.end(), 0.0);
        for (int v = 0; v < n; ++v)
          for (std::int32_t t : adj.targets[v]) y[t] += x[v];
      },
      opts);
}

}  // namespace pathrank
