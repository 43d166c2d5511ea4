#pragma once

#include <string>
#include <vector>

#include "pathrank/graph.hpp"

namespace pathrank {

// Finite-state Markov chain over n states.  Every entry lies in
// [0, 1]; a row either sums to 1 within 1e-9 (stochastic) or to
// strictly less (sub-stochastic, flagged).  Row sums above 1 + 1e-9
// are rejected at construction.
class MarkovChain {
 public:
  // row-major probabilities, n*n entries
  MarkovChain(std::vector<std::string> states, std::vector<double> probs);

  int state_count() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  double prob(int from, int to) const {
    return probs_.at(static_cast<std::size_t>(from) * states_.size() + to);
  }
  bool row_sub_stochastic(int row) const { return sub_rows_.at(row); }
  bool sub_stochastic() const { return any_sub_; }

 private:
  std::vector<std::string> states_;
  std::vector<double> probs_;
  std::vector<bool> sub_rows_;
  bool any_sub_ = false;
};

// Square numeric matrix, comma separated, one row per line.  An
// optional leading header row carries the state names; without one the
// states are named "0", "1", ...
MarkovChain parse_markov_csv(const std::string& text);
MarkovChain parse_markov_csv_file(const std::string& path);

// Converts a chain to a weighted digraph: each transition with
// probability p in (0, 1) becomes an edge of weight -log p, so a path
// weight equals the negative log of the product of its transition
// probabilities.  Probability-1 transitions carry weight 0 and are
// eliminated first by repeatedly merging the source state of the
// lexicographically smallest (row, column) probability-1 transition
// into its target; edges into the source are redirected to the target.
// A cycle of probability-1 transitions is rejected: it would generate
// infinitely many distinct paths of equal weight.
WeightedDigraph from_markov(const MarkovChain& chain);

}  // namespace pathrank
