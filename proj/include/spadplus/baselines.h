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

// Comparison detectors: local outlier factor, isolation forest and the
// subsample nearest-neighbour distance (Sp).

#ifndef SPADPLUS_BASELINES_H_
#define SPADPLUS_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "spadplus/matrix.h"

namespace spadplus {

enum class Orientation { kHigherIsAnomalous, kLowerIsAnomalous };

struct DetectorOutput {
  std::vector<double> scores;
  Orientation orientation = Orientation::kHigherIsAnomalous;
};

// Local outlier factor against a fixed training set. Neighbourhoods include
// every point tied with the k-th nearest distance; a training point is never
// its own neighbour. kNN search is brute force.
class LofModel {
 public:
  static constexpr Orientation kOrientation = Orientation::kHigherIsAnomalous;

  // k defaults to floor(sqrt(N)), and must satisfy 1 <= k < N.
  static LofModel Fit(Matrix train, std::optional<std::size_t> k = {});

  std::size_t k() const { return k_; }
  const Matrix& train() const { return train_; }
  // Distance from training point i to its k-th nearest other training point.
  double k_distance(std::size_t i) const { return k_distance_[i]; }
  // +infinity when all of point i's neighbours coincide with it.
  double lrd(std::size_t i) const { return lrd_[i]; }

  // Ratio of the neighbours' mean lrd to the lrd of x. Infinite lrd values
  // resolve as finite / inf = 0 and inf / inf = 1; an infinite numerator
  // over a finite lrd saturates to the largest finite double.
  double Score(std::span<const double> x) const;
  std::vector<double> ScoreRows(const Matrix& data) const;

 private:
  LofModel(Matrix train, std::size_t k);

  Matrix train_;
  std::size_t k_ = 1;
  std::vector<double> k_distance_;
  std::vector<double> lrd_;
};

// Average path adjustment for a leaf holding m instances:
// c(m) = 2 (H(m - 1) - (m - 1) / m), with c(1) = c(0) = 0.
double AveragePathAdjustment(std::size_t m);

struct IsolationForestOptions {
  std::size_t num_trees = 100;
  std::size_t subsample_size = 256;
  std::uint64_t seed = 0;
};

class IsolationForest {
 public:
  static constexpr Orientation kOrientation = Orientation::kLowerIsAnomalous;

  struct Node {
    // Leaves have split_dim == kLeaf and carry `size` training instances.
    static constexpr std::uint32_t kLeaf = 0xFFFFFFFF;
    std::uint32_t split_dim = kLeaf;
    double split_value = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t size = 0;

    friend bool operator==(const Node&, const Node&) = default;
  };
  using Tree = std::vector<Node>;  // node 0 is the root

  static IsolationForest Fit(const Matrix& train,
                             const IsolationForestOptions& options = {});

  std::size_t num_trees() const { return trees_.size(); }
  const Tree& tree(std::size_t i) const { return trees_[i]; }
  std::size_t subsample_size() const { return subsample_size_; }
  std::size_t height_limit() const { return height_limit_; }
  std::size_t dims() const { return dims_; }

  // Edges from the root to the leaf x is routed to in tree i (value < split
  // goes left), plus c(leaf size).
  double PathLength(std::size_t tree_index, std::span<const double> x) const;
  // Edge count only, without the leaf adjustment.
  std::size_t Depth(std::size_t tree_index, std::span<const double> x) const;
  // Mean PathLength over all trees. Lower is more anomalous.
  double Score(std::span<const double> x) const;
  std::vector<double> ScoreRows(const Matrix& data) const;

 private:
  // (leaf node index, edge count) reached by x in tree i.
  std::pair<std::size_t, std::size_t> Route(std::size_t tree_index,
                                            std::span<const double> x) const;

  std::vector<Tree> trees_;
  std::size_t subsample_size_ = 0;
  std::size_t height_limit_ = 0;
  std::size_t dims_ = 0;
};

// Distance to the nearest neighbour inside a random subsample of the
// training set.
class SpModel {
 public:
  static constexpr Orientation kOrientation = Orientation::kHigherIsAnomalous;

  static SpModel Fit(const Matrix& train, std::size_t subsample_size = 25,
                     std::uint64_t seed = 0);
  // Uses `subsample` verbatim.
  explicit SpModel(Matrix subsample);

  const Matrix& subsample() const { return subsample_; }
  double Score(std::span<const double> x) const;
  std::vector<double> ScoreRows(const Matrix& data) const;

 private:
  Matrix subsample_;
};

// Indices of min(k, n) rows drawn uniformly without replacement from [0, n),
// in draw order (partial Fisher-Yates).
std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                  std::size_t k,
                                                  std::mt19937_64& rng);

}  // namespace spadplus

#endif  // SPADPLUS_BASELINES_H_
