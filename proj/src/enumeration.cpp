#include "pathrank/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "pathrank/structure.hpp"

namespace pathrank {

namespace {

// Best-first search over partial paths.  Partial paths form a tree;
// each node stores one edge and a parent link, so extending is O(1)
// and prefixes are shared.  The frontier orders nodes by
// (weight, length, lexicographic edge ids), which makes pops globally
// sorted: a child's weight is strictly above its parent's, hence above
// everything popped earlier.
class PathStream final : public WeightSequence {
 public:
  PathStream(const WeightedDigraph& g, VertexId v1, VertexId v2,
             const EnumerateOptions& opts)
      : g_(g), v2_(v2), opts_(opts) {
    if (!opts.max_rank && !opts.max_weight)
      throw InvalidInput(
          "path enumeration needs a rank limit and/or a weight limit");
    auto rel = relevant_vertices(g, v1, v2);
    if (rel.empty()) {
      done_ = true;
      return;
    }
    mask_.assign(g.vertex_count(), false);
    for (VertexId v : rel) mask_[v] = true;
    nodes_.push_back(Node{0.0, v1, -1, -1, 0, -1});
    heap_.push_back(0);
  }

  std::optional<WeightEntry> next() override {
    if (tripped_)
      throw GuardExceeded("enumeration frontier guard exceeded (" +
                          std::to_string(opts_.frontier_guard) + " entries)");
    if (done_) return std::nullopt;
    if (opts_.max_rank && yielded_ >= *opts_.max_rank) {
      done_ = true;
      return std::nullopt;
    }
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), after_);
      const std::int32_t id = heap_.back();
      heap_.pop_back();
      const Node n = nodes_[id];
      // Everything still queued weighs at least this much.
      if (opts_.max_weight && n.weight > *opts_.max_weight) break;
      for (EdgeId e : g_.out_edges(n.head)) {
        VertexId to = g_.edge(e).to;
        if (!mask_[to]) continue;
        if (nodes_.size() >= opts_.frontier_guard) {
          tripped_ = true;
          throw GuardExceeded("enumeration frontier guard exceeded (" +
                              std::to_string(opts_.frontier_guard) +
                              " entries)");
        }
        nodes_.push_back(Node{n.weight + g_.edge(e).weight, to, id, e,
                              n.length + 1, n.parent < 0 ? e : n.first});
        heap_.push_back(static_cast<std::int32_t>(nodes_.size() - 1));
        std::push_heap(heap_.begin(), heap_.end(), after_);
      }
      if (n.head == v2_ && n.length > 0) {
        WeightEntry entry;
        entry.rank = ++yielded_;
        entry.weight = n.weight;
        if (opts_.materialize_paths) entry.path = materialize(id);
        return entry;
      }
    }
    done_ = true;
    return std::nullopt;
  }

 private:
  struct Node {
    double weight;
    VertexId head;
    std::int32_t parent;  // -1 at the root
    EdgeId edge;
    std::int32_t length;
    EdgeId first;  // edge at position 1 of the chain, -1 at the root
  };

  Path materialize(std::int32_t id) const {
    Path path;
    path.edges.reserve(nodes_[id].length);
    for (std::int32_t at = id; at > 0; at = nodes_[at].parent)
      path.edges.push_back(nodes_[at].edge);
    std::reverse(path.edges.begin(), path.edges.end());
    return path;
  }

  // Heap comparator: true when a should pop after b.  Ties resolve by
  // (length, lexicographic edge-id sequence); the stored first edge
  // settles most of them in O(1), and equal-length chains sharing it
  // are walked tail-up only until they merge (they always meet, at the
  // root if nowhere else), so siblings compare in a step or two.
  bool pops_after(std::int32_t a, std::int32_t b) const {
    const Node& na = nodes_[a];
    const Node& nb = nodes_[b];
    if (na.weight != nb.weight) return na.weight > nb.weight;
    if (na.length != nb.length) return na.length > nb.length;
    if (na.first != nb.first) return na.first > nb.first;
    scratch_a_.clear();
    scratch_b_.clear();
    std::int32_t pa = a, pb = b;
    while (pa != pb) {
      scratch_a_.push_back(nodes_[pa].edge);
      scratch_b_.push_back(nodes_[pb].edge);
      pa = nodes_[pa].parent;
      pb = nodes_[pb].parent;
    }
    // The suffixes came out back-to-front; the last collected pair is
    // the earliest position where the sequences can differ.
    for (std::size_t i = scratch_a_.size(); i-- > 0;)
      if (scratch_a_[i] != scratch_b_[i]) return scratch_a_[i] > scratch_b_[i];
    return false;
  }

  struct After {
    const PathStream* s;
    bool operator()(std::int32_t a, std::int32_t b) const {
      return s->pops_after(a, b);
    }
  };

  const WeightedDigraph& g_;
  VertexId v2_;
  EnumerateOptions opts_;
  std::vector<bool> mask_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> heap_;
  After after_{this};
  mutable std::vector<EdgeId> scratch_a_, scratch_b_;
  std::uint64_t yielded_ = 0;
  bool done_ = false;
  bool tripped_ = false;
};

}  // namespace

std::unique_ptr<WeightSequence> enumerate_paths(const WeightedDigraph& g,
                                                VertexId v1, VertexId v2,
                                                const EnumerateOptions& opts) {
  if (v1 < 0 || v1 >= g.vertex_count() || v2 < 0 || v2 >= g.vertex_count())
    throw InvalidInput("query vertex out of range");
  return std::make_unique<PathStream>(g, v1, v2, opts);
}

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<std::uint32_t>& t) const {
    std::size_t h = t.size();
    for (std::uint32_t v : t)
      h = h * 1000003u + v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

// K-fold sorted sums: a frontier of index tuples ordered by
// (sum, tuple), deduplicated by tuple so equal sums keep their full
// multiplicity.
class ComposeStream final : public WeightSequence {
 public:
  ComposeStream(std::vector<std::unique_ptr<WeightSequence>> inputs,
                const CombineOptions& opts)
      : inputs_(std::move(inputs)), opts_(opts) {
    if (inputs_.empty())
      throw InvalidInput("compose needs at least one sequence");
    cache_.resize(inputs_.size());
    input_done_.assign(inputs_.size(), false);
    std::vector<std::uint32_t> zero(inputs_.size(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      ok = ok && fetch(i, 0);
    if (ok) push(std::move(zero));
  }

  std::optional<WeightEntry> next() override {
    if (tripped_)
      throw GuardExceeded("compose frontier guard exceeded (" +
                          std::to_string(opts_.frontier_guard) + " entries)");
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), after_);
    Entry top = std::move(heap_.back());
    heap_.pop_back();
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      std::vector<std::uint32_t> succ = top.idx;
      ++succ[i];
      if (!fetch(i, succ[i])) continue;
      if (seen_.count(succ)) continue;
      push(std::move(succ));
    }
    WeightEntry entry;
    entry.rank = ++yielded_;
    entry.weight = top.sum;
    return entry;
  }

 private:
  struct Entry {
    double sum;
    std::vector<std::uint32_t> idx;
  };

  struct After {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.sum != b.sum) return a.sum > b.sum;
      return a.idx > b.idx;
    }
  };

  // Ensures cache_[i][j] exists; false when input i is too short.
  bool fetch(std::size_t i, std::uint32_t j) {
    while (cache_[i].size() <= j && !input_done_[i]) {
      auto e = inputs_[i]->next();
      if (!e) {
        input_done_[i] = true;
        break;
      }
      cache_[i].push_back(e->weight);
    }
    return cache_[i].size() > j;
  }

  void push(std::vector<std::uint32_t> idx) {
    if (seen_.size() >= opts_.frontier_guard) {
      tripped_ = true;
      throw GuardExceeded("compose frontier guard exceeded (" +
                          std::to_string(opts_.frontier_guard) + " entries)");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) sum += cache_[i][idx[i]];
    seen_.insert(idx);
    heap_.push_back(Entry{sum, std::move(idx)});
    std::push_heap(heap_.begin(), heap_.end(), after_);
  }

  std::vector<std::unique_ptr<WeightSequence>> inputs_;
  CombineOptions opts_;
  std::vector<std::vector<double>> cache_;
  std::vector<bool> input_done_;
  std::vector<Entry> heap_;
  std::unordered_set<std::vector<std::uint32_t>, TupleHash> seen_;
  After after_;
  std::uint64_t yielded_ = 0;
  bool tripped_ = false;
};

class UnionStream final : public WeightSequence {
 public:
  explicit UnionStream(std::vector<std::unique_ptr<WeightSequence>> inputs)
      : inputs_(std::move(inputs)) {
    if (inputs_.empty())
      throw InvalidInput("union needs at least one sequence");
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      auto e = inputs_[i]->next();
      if (e) heads_.push_back(Head{e->weight, i});
    }
    std::make_heap(heads_.begin(), heads_.end(), after_);
  }

  std::optional<WeightEntry> next() override {
    if (heads_.empty()) return std::nullopt;
    std::pop_heap(heads_.begin(), heads_.end(), after_);
    Head head = heads_.back();
    heads_.pop_back();
    auto refill = inputs_[head.input]->next();
    if (refill) {
      heads_.push_back(Head{refill->weight, head.input});
      std::push_heap(heads_.begin(), heads_.end(), after_);
    }
    WeightEntry entry;
    entry.rank = ++yielded_;
    entry.weight = head.weight;
    return entry;
  }

 private:
  struct Head {
    double weight;
    std::size_t input;
  };

  struct After {
    bool operator()(const Head& a, const Head& b) const {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.input > b.input;
    }
  };

  std::vector<std::unique_ptr<WeightSequence>> inputs_;
  std::vector<Head> heads_;
  After after_;
  std::uint64_t yielded_ = 0;
};

}  // namespace

std::unique_ptr<WeightSequence> compose_sequences(
    std::vector<std::unique_ptr<WeightSequence>> inputs,
    const CombineOptions& opts) {
  return std::make_unique<ComposeStream>(std::move(inputs), opts);
}

std::unique_ptr<WeightSequence> union_sequences(
    std::vector<std::unique_ptr<WeightSequence>> inputs) {
  return std::make_unique<UnionStream>(std::move(inputs));
}

FitReport fit_asymptotics(WeightSequence& seq, const AsymptoticClass& hint,
                          std::uint64_t rank_lo, std::uint64_t rank_hi) {
  if (hint.kind == AsymptoticClass::Case::Finite)
    throw InvalidInput("nothing to fit: the sequence is finite");
  if (rank_lo < 1 || rank_lo > rank_hi)
    throw InvalidInput("fit window is empty");

  FitReport report;
  report.rank_lo = rank_lo;
  report.rank_hi = rank_hi;
  if (hint.kind == AsymptoticClass::Case::Logarithmic) {
    report.model = FitModel::Log;
    report.degree = 1;
  } else {
    report.model = hint.degree == 1 ? FitModel::Linear : FitModel::Power;
    report.degree = hint.degree;
  }

  std::vector<double> window;
  window.reserve(rank_hi - rank_lo + 1);
  for (std::uint64_t r = 1; r <= rank_hi; ++r) {
    auto e = seq.next();
    if (!e)
      throw InvalidInput("sequence ended at rank " + std::to_string(r - 1) +
                         ", before the fit window's end " +
                         std::to_string(rank_hi));
    if (r >= rank_lo) window.push_back(e->weight);
  }

  const std::size_t n = window.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = static_cast<double>(rank_lo + i);
    switch (report.model) {
      case FitModel::Linear:
        xs[i] = r;
        ys[i] = window[i];
        break;
      case FitModel::Power:
        xs[i] = r;
        ys[i] = std::pow(window[i], report.degree);
        break;
      case FitModel::Log:
        xs[i] = std::log(r);
        ys[i] = window[i];
        break;
    }
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0))
    throw InvalidInput("fit window is degenerate (no spread in the model)");
  report.rate = sxy / sxx;
  report.intercept = my - report.rate * mx;

  for (std::size_t i = 0; i < n; ++i) {
    const double line = report.rate * xs[i] + report.intercept;
    double predicted;
    if (report.model == FitModel::Power)
      predicted = line > 0.0 ? std::pow(line, 1.0 / report.degree) : 0.0;
    else
      predicted = line;
    report.max_rel_residual = std::max(
        report.max_rel_residual, std::abs(predicted - window[i]) / window[i]);
  }
  return report;
}

}  // namespace pathrank
