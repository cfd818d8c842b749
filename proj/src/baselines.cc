/*
 * Copyright 2026 The SPAD+ Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "spadplus/baselines.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "spadplus/errors.h"

namespace spadplus {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckDims(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + " was fit on " +
                            std::to_string(expected) +
                            " dimensions, instance has " +
                            std::to_string(actual));
  }
}

// Squared distance from x to every training row, skipping `self` (pass
// train.rows() to skip nothing). Skipped entries are set to +inf.
void SquaredDistances(const Matrix& train, std::span<const double> x,
                      std::size_t self, std::vector<double>& out) {
  out.resize(train.rows());
  for (std::size_t j = 0; j < train.rows(); ++j) {
    out[j] = j == self ? kInf : SquaredEuclidean(x, train.row(j));
  }
}

// Squared distance from x to its k-th nearest training row (1-based k),
// skipping `self` (pass train.rows() to skip nothing). Keeps a max-heap of
// the k best so far, so most rows are rejected after one comparison.
double KthSquaredDistance(const Matrix& train, std::span<const double> x,
                          std::size_t self, std::size_t k,
                          std::vector<double>& heap) {
  heap.clear();
  for (std::size_t j = 0; j < train.rows(); ++j) {
    if (j == self) continue;
    const double d = SquaredEuclidean(x, train.row(j));
    if (heap.size() < k) {
      heap.push_back(d);
      std::push_heap(heap.begin(), heap.end());
    } else if (d < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = d;
      std::push_heap(heap.begin(), heap.end());
    }
  }
  return heap.front();
}

}  // namespace

LofModel::LofModel(Matrix train, std::size_t k)
    : train_(std::move(train)), k_(k) {}

LofModel LofModel::Fit(Matrix train, std::optional<std::size_t> k) {
  const std::size_t n = train.rows();
  const std::size_t kk =
      k.value_or(static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
  if (kk < 1 || kk >= n) {
    throw DetectorError("LOF needs 1 <= k < N (k = " + std::to_string(kk) +
                        ", N = " + std::to_string(n) + ")");
  }
  LofModel model(std::move(train), kk);
  const Matrix& d = model.train_;

  std::vector<double> sq;
  std::vector<double> heap;
  std::vector<double> k_sq(n);
  model.k_distance_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    k_sq[i] = KthSquaredDistance(d, d.row(i), i, kk, heap);
    model.k_distance_[i] = std::sqrt(k_sq[i]);
  }

  model.lrd_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    SquaredDistances(d, d.row(i), i, sq);
    double reach = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (sq[j] <= k_sq[i]) {
        reach += std::max(model.k_distance_[j], std::sqrt(sq[j]));
        ++count;
      }
    }
    model.lrd_[i] = reach == 0.0 ? kInf : static_cast<double>(count) / reach;
  }
  return model;
}

double LofModel::Score(std::span<const double> x) const {
  CheckDims(train_.cols(), x.size(), "LOF model");
  std::vector<double> sq;
  SquaredDistances(train_, x, train_.rows(), sq);
  std::vector<double> nth = sq;
  std::nth_element(nth.begin(), nth.begin() + (k_ - 1), nth.end());
  const double k_sq = nth[k_ - 1];

  double reach = 0.0;
  double lrd_sum = 0.0;
  std::size_t count = 0;
  bool infinite_neighbour = false;
  for (std::size_t j = 0; j < sq.size(); ++j) {
    if (sq[j] > k_sq) continue;
    ++count;
    reach += std::max(k_distance_[j], std::sqrt(sq[j]));
    if (std::isinf(lrd_[j])) {
      infinite_neighbour = true;
    } else {
      lrd_sum += lrd_[j];
    }
  }
  if (reach == 0.0) return infinite_neighbour ? 1.0 : 0.0;
  if (infinite_neighbour) return std::numeric_limits<double>::max();
  const double lrd_x = static_cast<double>(count) / reach;
  return lrd_sum / (static_cast<double>(count) * lrd_x);
}

std::vector<double> LofModel::ScoreRows(const Matrix& data) const {
  CheckDims(train_.cols(), data.cols(), "LOF model");
  std::vector<double> scores(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) scores[r] = Score(data.row(r));
  return scores;
}

double AveragePathAdjustment(std::size_t m) {
  if (m <= 1) return 0.0;
  double harmonic = 0.0;
  for (std::size_t i = 1; i < m; ++i) harmonic += 1.0 / static_cast<double>(i);
  const double md = static_cast<double>(m);
  return 2.0 * (harmonic - (md - 1.0) / md);
}

std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                  std::size_t k,
                                                  std::mt19937_64& rng) {
  k = std::min(k, n);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& train, std::size_t height_limit,
              std::mt19937_64& rng)
      : train_(train), height_limit_(height_limit), rng_(rng) {}

  IsolationForest::Tree Build(std::vector<std::size_t> rows) {
    tree_.clear();
    Grow(rows.data(), rows.size(), 0);
    return std::move(tree_);
  }

 private:
  std::uint32_t MakeLeaf(std::size_t index, std::size_t size) {
    tree_[index].size = static_cast<std::uint32_t>(size);
    return static_cast<std::uint32_t>(index);
  }

  std::uint32_t Grow(std::size_t* rows, std::size_t size, std::size_t depth) {
    const std::size_t index = tree_.size();
    tree_.emplace_back();
    if (size <= 1 || depth >= height_limit_) return MakeLeaf(index, size);

    const std::size_t dims = train_.cols();
    std::vector<std::size_t> candidates;
    std::vector<double> lo(dims), hi(dims);
    for (std::size_t c = 0; c < dims; ++c) {
      lo[c] = hi[c] = train_(rows[0], c);
    }
    for (std::size_t i = 1; i < size; ++i) {
      const auto row = train_.row(rows[i]);
      for (std::size_t c = 0; c < dims; ++c) {
        lo[c] = std::min(lo[c], row[c]);
        hi[c] = std::max(hi[c], row[c]);
      }
    }
    for (std::size_t c = 0; c < dims; ++c) {
      if (hi[c] > lo[c]) candidates.push_back(c);
    }
    if (candidates.empty()) return MakeLeaf(index, size);

    std::uniform_int_distribution<std::size_t> pick_dim(0,
                                                        candidates.size() - 1);
    const std::size_t dim = candidates[pick_dim(rng_)];
    std::uniform_real_distribution<double> pick_value(lo[dim], hi[dim]);
    double split = pick_value(rng_);
    // Both sides must be non-empty: split must exceed the minimum.
    while (!(split > lo[dim])) split = pick_value(rng_);

    std::size_t* mid = std::partition(rows, rows + size, [&](std::size_t r) {
      return train_(r, dim) < split;
    });
    const std::size_t left_size = static_cast<std::size_t>(mid - rows);

    const std::uint32_t left = Grow(rows, left_size, depth + 1);
    const std::uint32_t right = Grow(mid, size - left_size, depth + 1);
    IsolationForest::Node& node = tree_[index];
    node.split_dim = static_cast<std::uint32_t>(dim);
    node.split_value = split;
    node.left = left;
    node.right = right;
    node.size = static_cast<std::uint32_t>(size);
    return static_cast<std::uint32_t>(index);
  }

  const Matrix& train_;
  std::size_t height_limit_;
  std::mt19937_64& rng_;
  IsolationForest::Tree tree_;
};

}  // namespace

IsolationForest IsolationForest::Fit(const Matrix& train,
                                     const IsolationForestOptions& options) {
  if (train.rows() < 2) {
    throw DetectorError("isolation forest needs at least 2 training rows");
  }
  if (options.num_trees == 0) throw ConfigError("isolation forest needs t >= 1");
  if (options.subsample_size == 0) {
    throw ConfigError("isolation forest needs psi >= 1");
  }
  IsolationForest forest;
  forest.dims_ = train.cols();
  forest.subsample_size_ = std::min(options.subsample_size, train.rows());
  forest.height_limit_ =
      static_cast<std::size_t>(std::bit_width(forest.subsample_size_)) - 1;

  std::mt19937_64 rng(options.seed);
  TreeBuilder builder(train, forest.height_limit_, rng);
  forest.trees_.reserve(options.num_trees);
  for (std::size_t t = 0; t < options.num_trees; ++t) {
    forest.trees_.push_back(builder.Build(
        SampleWithoutReplacement(train.rows(), forest.subsample_size_, rng)));
  }
  return forest;
}

std::pair<std::size_t, std::size_t> IsolationForest::Route(
    std::size_t tree_index, std::span<const double> x) const {
  const Tree& tree = trees_[tree_index];
  std::size_t node = 0;
  std::size_t depth = 0;
  while (tree[node].split_dim != Node::kLeaf) {
    const Node& n = tree[node];
    node = x[n.split_dim] < n.split_value ? n.left : n.right;
    ++depth;
  }
  return {node, depth};
}

std::size_t IsolationForest::Depth(std::size_t tree_index,
                                   std::span<const double> x) const {
  return Route(tree_index, x).second;
}

double IsolationForest::PathLength(std::size_t tree_index,
                                   std::span<const double> x) const {
  const auto [leaf, depth] = Route(tree_index, x);
  return static_cast<double>(depth) +
         AveragePathAdjustment(trees_[tree_index][leaf].size);
}

double IsolationForest::Score(std::span<const double> x) const {
  CheckDims(dims_, x.size(), "isolation forest");
  double total = 0.0;
  for (std::size_t t = 0; t < trees_.size(); ++t) total += PathLength(t, x);
  return total / static_cast<double>(trees_.size());
}

std::vector<double> IsolationForest::ScoreRows(const Matrix& data) const {
  CheckDims(dims_, data.cols(), "isolation forest");
  std::vector<double> scores(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) scores[r] = Score(data.row(r));
  return scores;
}

SpModel::SpModel(Matrix subsample) : subsample_(std::move(subsample)) {
  if (subsample_.empty()) throw DetectorError("Sp subsample is empty");
}

SpModel SpModel::Fit(const Matrix& train, std::size_t subsample_size,
                     std::uint64_t seed) {
  if (train.empty()) throw DetectorError("Sp needs at least 1 training row");
  if (subsample_size == 0) throw ConfigError("Sp needs psi >= 1");
  std::mt19937_64 rng(seed);
  const auto rows = SampleWithoutReplacement(train.rows(), subsample_size, rng);
  return SpModel(train.SelectRows(rows));
}

double SpModel::Score(std::span<const double> x) const {
  CheckDims(subsample_.cols(), x.size(), "Sp model");
  double best = kInf;
  for (std::size_t j = 0; j < subsample_.rows(); ++j) {
    best = std::min(best, SquaredEuclidean(x, subsample_.row(j)));
  }
  return std::sqrt(best);
}

std::vector<double> SpModel::ScoreRows(const Matrix& data) const {
  CheckDims(subsample_.cols(), data.cols(), "Sp model");
  std::vector<double> scores(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) scores[r] = Score(data.row(r));
  return scores;
}

}  // namespace spadplus
