// Copyright 2026 The Toric Mismatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace toric {

/// Real weights are multiplied by this and rounded before solving, so the
/// solver works on exact integers. Two weights closer than 0.5e-6 can tie.
inline constexpr double kWeightScale = 1e6;

std::int64_t quantize_weight(double w);

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
};

/// Undirected weighted graph. Duplicate edges keep the lighter weight.
class MatchingGraph {
   public:
    MatchingGraph() = default;
    explicit MatchingGraph(int node_count) : node_count_(node_count) {}

    int node_count() const { return node_count_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    void add_edge(int u, int v, double weight) { edges_.push_back({u, v, weight}); }

    /// Complete graph from a row-major n x n weight matrix (upper triangle used).
    static MatchingGraph complete(int node_count, std::span<const double> weights);

   private:
    int node_count_ = 0;
    std::vector<WeightedEdge> edges_;
};

struct Matching {
    /// Pairs (u, v) with u < v, sorted by u.
    std::vector<std::pair<int, int>> pairs;
    double total_weight = 0.0;
};

struct MatchingOptions {
    /// Among all minimum-weight matchings return the one whose sorted pair list
    /// is lexicographically smallest. Costs extra solves when ties exist; the
    /// decoder turns it off and relies on the solver being deterministic.
    bool canonical_ties = true;
};

/// Exact minimum-weight perfect matching. Throws StructuralError on odd node
/// counts or malformed edges and InfeasibleError when no perfect matching
/// exists.
Matching min_weight_perfect_matching(const MatchingGraph& graph, const MatchingOptions& options = {});

/// Exhaustive search over all perfect matchings, for node_count <= 12.
Matching brute_force_matching(const MatchingGraph& graph);

inline constexpr int kBruteForceMaxNodes = 12;

/// Reusable O(n^3) primal-dual blossom solver over dense integer costs. One
/// instance must not be shared between threads; keep one per worker so the
/// workspace is allocated once.
class BlossomSolver {
   public:
    static constexpr std::int64_t kAbsent = INT64_MIN;

    /// costs is row-major node_count x node_count and symmetric; kAbsent marks
    /// a missing edge. Returns mate[i] for every node. Throws InfeasibleError
    /// if there is no perfect matching.
    std::vector<int> solve(int node_count, std::span<const std::int64_t> costs);

   private:
    struct Edge {
        int u = 0;
        int v = 0;
        std::int64_t w = 0;
        bool present = false;
    };

    void reset(int n);
    void run();
    bool grow_and_augment();

    Edge& g(int u, int v) { return g_[static_cast<std::size_t>(u) * stride_ + v]; }
    int& flower_from(int b, int x) { return flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + x]; }
    std::int64_t slack_of(const Edge& e) { return lab_[e.u] + lab_[e.v] - g(e.u, e.v).w * 2; }

    void update_slack(int u, int x);
    void set_slack(int x);
    void queue_push(int x);
    void set_top(int x, int b);
    int rotate_to_even(int b, int xr);
    void set_match(int u, int v);
    void augment(int u, int v);
    int lowest_common_ancestor(int u, int v);
    void add_blossom(int u, int lca, int v);
    void expand_blossom(int b);
    bool on_tight_edge(const Edge& e);

    int n_ = 0;
    int nx_ = 0;
    int stride_ = 0;
    int stamp_ = 0;
    std::vector<Edge> g_;
    std::vector<std::int64_t> lab_;
    std::vector<int> match_;
    std::vector<int> slack_;
    std::vector<int> top_;
    std::vector<int> parent_;
    std::vector<int> label_;
    std::vector<int> visited_;
    std::vector<int> flower_from_;
    std::vector<std::vector<int>> flower_;
    std::vector<int> queue_;
    std::size_t queue_head_ = 0;
};

}  // namespace toric
