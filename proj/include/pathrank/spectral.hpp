#pragma once

#include <cstdint>
#include <vector>

#include "pathrank/errors.hpp"

namespace pathrank {

// Dense square matrix of doubles, row major.  Small: component
// matrices never exceed the vertex count of one strongly connected
// component.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Unweighted sparse adjacency with parallel-edge multiplicity, used
// for expanded approximation graphs where a dense matrix would not
// fit.  targets[v] lists out-neighbours of v, repeats allowed.
struct SparseAdjacency {
  std::vector<std::vector<std::int32_t>> targets;
  int size() const { return static_cast<int>(targets.size()); }
};

struct PowerIterationOptions {
  // Convergence: successive Rayleigh-quotient estimates within this
  // relative distance.
  double rayleigh_tolerance = 1e-15;
  long max_iterations = 1'000'000;
};

// Spectral radius of a non-negative matrix by power iteration on
// m + I.  The shift makes periodic matrices converge and keeps the
// Perron vector fixed, so rho(m) = rho(m + I) - 1.  Intended for
// irreducible matrices (decompose first otherwise); accurate to about
// 1e-13 relative on them.  Throws ConvergenceError at the iteration
// cap, reporting the last estimate.
double spectral_radius(const SquareMatrix& m,
                       const PowerIterationOptions& opts = {});
double spectral_radius(const SparseAdjacency& adj,
                       const PowerIterationOptions& opts = {});

}  // namespace pathrank
