#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pathrank/asymptotics.hpp"
#include "pathrank/graph.hpp"

namespace pathrank {

struct WeightEntry {
  std::uint64_t rank = 0;  // 1-based
  double weight = 0.0;
  std::optional<Path> path;  // only when the producer materializes paths
};

// Lazy non-decreasing stream of ranked weights.  Single consumer: the
// internal frontier mutates on every pull.  next() returns nullopt
// once the stream is exhausted (naturally or by a configured limit)
// and keeps returning it.
class WeightSequence {
 public:
  virtual ~WeightSequence() = default;
  virtual std::optional<WeightEntry> next() = 0;
};

struct EnumerateOptions {
  // At least one of the two limits must be set.
  std::optional<std::uint64_t> max_rank;
  std::optional<double> max_weight;  // inclusive
  std::size_t frontier_guard = 10'000'000;
  bool materialize_paths = false;
};

// All paths from v1 to v2 by increasing weight; ties resolved by
// (length, lexicographic edge-id sequence).  Best-first over partial
// paths, pruned to vertices that can still reach v2.  Weights
// accumulate parent-to-child in path order, so equal paths always
// yield bit-identical weights.  Throws GuardExceeded from next() when
// the frontier outgrows its budget; entries already yielded stay
// valid.  The graph must outlive the stream.
std::unique_ptr<WeightSequence> enumerate_paths(const WeightedDigraph& g,
                                                VertexId v1, VertexId v2,
                                                const EnumerateOptions& opts);

struct CombineOptions {
  std::size_t frontier_guard = 10'000'000;
};

// Sorted stream of all sums picking one entry from every input
// (multiset semantics: distinct index tuples with equal sums all
// appear).  Consumes the inputs lazily, caching what it has seen.
std::unique_ptr<WeightSequence> compose_sequences(
    std::vector<std::unique_ptr<WeightSequence>> inputs,
    const CombineOptions& opts = {});

// Sorted multiset union of the inputs; duplicates preserved, ties
// resolved by input position.
std::unique_ptr<WeightSequence> union_sequences(
    std::vector<std::unique_ptr<WeightSequence>> inputs);

enum class FitModel { Linear, Power, Log };

struct FitReport {
  FitModel model = FitModel::Linear;
  int degree = 1;          // Power: the exponent applied to the weights
  double rate = 0.0;       // least-squares slope
  double intercept = 0.0;  // absorbs the constant offset of the law
  std::uint64_t rank_lo = 0;
  std::uint64_t rank_hi = 0;
  double max_rel_residual = 0.0;
};

// Least-squares estimate of the growth rate over ranks
// [rank_lo, rank_hi], model chosen by the hint's class:
//   Polynomial{1}  ->  p_r       ~ rate * r       + intercept
//   Polynomial{c}  ->  p_r^c     ~ rate * r       + intercept
//   Logarithmic    ->  p_r       ~ rate * log r   + intercept
// The intercept keeps the finite-rank constant out of the slope; the
// laws' limits make rate alone the estimate of s.  Consumes the
// stream from its current position, which must still be before
// rank_lo; throws InvalidInput if it ends before rank_hi, the hint is
// Finite, or the window has no spread.
FitReport fit_asymptotics(WeightSequence& seq, const AsymptoticClass& hint,
                          std::uint64_t rank_lo, std::uint64_t rank_hi);

}  // namespace pathrank
