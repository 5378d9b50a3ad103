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

#include "toric/matching.h"

#include <algorithm>
#include <cassert>
#include <climits>
#include <cmath>
#include <limits>
#include <string>

#include "toric/error.h"

namespace toric {

std::int64_t quantize_weight(double w) {
    if (!std::isfinite(w)) throw StructuralError("edge weight must be finite");
    double scaled = w * kWeightScale;
    if (std::fabs(scaled) > 1e15) throw StructuralError("edge weight too large to quantize: " + std::to_string(w));
    return std::llround(scaled);
}

MatchingGraph MatchingGraph::complete(int node_count, std::span<const double> weights) {
    if (node_count < 0 || weights.size() != static_cast<std::size_t>(node_count) * node_count) {
        throw StructuralError("weight matrix does not match node count");
    }
    MatchingGraph g(node_count);
    for (int u = 0; u < node_count; ++u) {
        for (int v = u + 1; v < node_count; ++v) {
            g.add_edge(u, v, weights[static_cast<std::size_t>(u) * node_count + v]);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Dense weighted blossom.
//
// Primal-dual maximum-weight perfect matching on vertices 1..n with blossom
// ids n+1..2n; index 0 means "none". Edge weights are -2 * cost. lab_ holds
// twice the vertex duals and the blossom duals. Vertex duals are unrestricted
// in sign; blossom duals stay nonnegative. All exposed vertices start with
// even duals and always shift together, and every other forest vertex is tied
// to them by tight edges, so slacks between outer vertices are even and the
// halved dual steps are exact integers.
// ---------------------------------------------------------------------------

void BlossomSolver::reset(int n) {
    n_ = n;
    nx_ = n;
    stride_ = 2 * n + 1;
    g_.assign(static_cast<std::size_t>(stride_) * stride_, Edge{});
    lab_.assign(stride_, 0);
    match_.assign(stride_, 0);
    slack_.assign(stride_, 0);
    top_.assign(stride_, 0);
    parent_.assign(stride_, 0);
    label_.assign(stride_, -1);
    visited_.assign(stride_, 0);
    flower_from_.assign(static_cast<std::size_t>(stride_) * (n + 1), 0);
    flower_.resize(stride_);
    for (auto& f : flower_) f.clear();
    queue_.clear();
    queue_head_ = 0;
    stamp_ = 0;
    for (int u = 1; u <= n; ++u) {
        top_[u] = u;
        flower_from(u, u) = u;
        for (int v = 1; v <= n; ++v) g(u, v) = {u, v, 0, false};
    }
}

void BlossomSolver::update_slack(int u, int x) {
    if (!slack_[x] || slack_of(g(u, x)) < slack_of(g(slack_[x], x))) slack_[x] = u;
}

void BlossomSolver::set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u) {
        if (g(u, x).present && top_[u] != x && label_[top_[u]] == 0) update_slack(u, x);
    }
}

void BlossomSolver::queue_push(int x) {
    if (x <= n_) {
        queue_.push_back(x);
        return;
    }
    for (int sub : flower_[x]) queue_push(sub);
}

void BlossomSolver::set_top(int x, int b) {
    top_[x] = b;
    if (x > n_) {
        for (int sub : flower_[x]) set_top(sub, b);
    }
}

// Reorders flower b so that sub-blossom xr sits at an even position counted
// from the base, and returns that position.
int BlossomSolver::rotate_to_even(int b, int xr) {
    auto& f = flower_[b];
    int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
    if (pr % 2 == 1) {
        std::reverse(f.begin() + 1, f.end());
        return static_cast<int>(f.size()) - pr;
    }
    return pr;
}

void BlossomSolver::set_match(int u, int v) {
    match_[u] = g(u, v).v;
    if (u <= n_) return;
    Edge e = g(u, v);
    int xr = flower_from(u, e.u);
    int pr = rotate_to_even(u, xr);
    auto& f = flower_[u];
    for (int i = 0; i < pr; ++i) set_match(f[i], f[i ^ 1]);
    set_match(xr, v);
    std::rotate(f.begin(), f.begin() + pr, f.end());
}

void BlossomSolver::augment(int u, int v) {
    for (;;) {
        int xnv = top_[match_[u]];
        set_match(u, v);
        if (!xnv) return;
        set_match(xnv, top_[parent_[xnv]]);
        u = top_[parent_[xnv]];
        v = xnv;
    }
}

int BlossomSolver::lowest_common_ancestor(int u, int v) {
    for (++stamp_; u || v; std::swap(u, v)) {
        if (!u) continue;
        if (visited_[u] == stamp_) return u;
        visited_[u] = stamp_;
        u = top_[match_[u]];
        if (u) u = top_[parent_[u]];
    }
    return 0;
}

void BlossomSolver::add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= nx_ && top_[b]) ++b;
    if (b > nx_) ++nx_;
    lab_[b] = 0;
    label_[b] = 0;
    match_[b] = match_[lca];
    auto& f = flower_[b];
    f.clear();
    f.push_back(lca);
    for (int x = u, y; x != lca; x = top_[parent_[y]]) {
        f.push_back(x);
        f.push_back(y = top_[match_[x]]);
        queue_push(y);
    }
    std::reverse(f.begin() + 1, f.end());
    for (int x = v, y; x != lca; x = top_[parent_[y]]) {
        f.push_back(x);
        f.push_back(y = top_[match_[x]]);
        queue_push(y);
    }
    set_top(b, b);
    for (int x = 1; x <= nx_; ++x) g(b, x).present = g(x, b).present = false;
    for (int x = 1; x <= n_; ++x) flower_from(b, x) = 0;
    for (int xs : f) {
        for (int x = 1; x <= nx_; ++x) {
            if (g(xs, x).present && (!g(b, x).present || slack_of(g(xs, x)) < slack_of(g(b, x)))) {
                g(b, x) = g(xs, x);
                g(x, b) = g(x, xs);
            }
        }
        for (int x = 1; x <= n_; ++x) {
            if (flower_from(xs, x)) flower_from(b, x) = xs;
        }
    }
    set_slack(b);
}

void BlossomSolver::expand_blossom(int b) {
    auto& f = flower_[b];
    for (int sub : f) set_top(sub, sub);
    int xr = flower_from(b, g(b, parent_[b]).u);
    int pr = rotate_to_even(b, xr);
    for (int i = 0; i < pr; i += 2) {
        int xs = f[i];
        int xns = f[i + 1];
        parent_[xs] = g(xns, xs).u;
        label_[xs] = 1;
        label_[xns] = 0;
        slack_[xs] = 0;
        set_slack(xns);
        queue_push(xns);
    }
    label_[xr] = 1;
    parent_[xr] = parent_[b];
    for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < f.size(); ++i) {
        int xs = f[i];
        label_[xs] = -1;
        set_slack(xs);
    }
    top_[b] = 0;
}

bool BlossomSolver::on_tight_edge(const Edge& e) {
    int u = top_[e.u];
    int v = top_[e.v];
    if (label_[v] == -1) {
        parent_[v] = e.u;
        label_[v] = 1;
        int nu = top_[match_[v]];
        slack_[v] = slack_[nu] = 0;
        label_[nu] = 0;
        queue_push(nu);
    } else if (label_[v] == 0) {
        int lca = lowest_common_ancestor(u, v);
        if (!lca) {
            augment(u, v);
            augment(v, u);
            return true;
        }
        add_blossom(u, lca, v);
    }
    return false;
}

// One phase: grow alternating trees from every exposed vertex until an
// augmenting path is found (true) or no dual progress is possible (false).
bool BlossomSolver::grow_and_augment() {
    std::fill(label_.begin(), label_.begin() + nx_ + 1, -1);
    std::fill(slack_.begin(), slack_.begin() + nx_ + 1, 0);
    queue_.clear();
    queue_head_ = 0;
    for (int x = 1; x <= nx_; ++x) {
        if (top_[x] == x && !match_[x]) {
            parent_[x] = 0;
            label_[x] = 0;
            queue_push(x);
        }
    }
    if (queue_.empty()) return false;
    for (;;) {
        while (queue_head_ < queue_.size()) {
            int u = queue_[queue_head_++];
            if (label_[top_[u]] == 1) continue;
            for (int v = 1; v <= n_; ++v) {
                const Edge& e = g(u, v);
                if (e.present && top_[u] != top_[v]) {
                    if (slack_of(e) == 0) {
                        if (on_tight_edge(e)) return true;
                    } else {
                        update_slack(u, top_[v]);
                    }
                }
            }
        }
        std::int64_t d = std::numeric_limits<std::int64_t>::max();
        for (int b = n_ + 1; b <= nx_; ++b) {
            if (top_[b] == b && label_[b] == 1) d = std::min(d, lab_[b] / 2);
        }
        for (int x = 1; x <= nx_; ++x) {
            if (top_[x] == x && slack_[x]) {
                std::int64_t s = slack_of(g(slack_[x], x));
                if (label_[x] == -1) {
                    d = std::min(d, s);
                } else if (label_[x] == 0) {
                    assert(s % 2 == 0);
                    d = std::min(d, s / 2);
                }
            }
        }
        if (d == std::numeric_limits<std::int64_t>::max()) {
            throw InfeasibleError("graph has no perfect matching");
        }
        for (int u = 1; u <= n_; ++u) {
            int l = label_[top_[u]];
            if (l == 0) {
                lab_[u] -= d;
            } else if (l == 1) {
                lab_[u] += d;
            }
        }
        for (int b = n_ + 1; b <= nx_; ++b) {
            if (top_[b] == b) {
                if (label_[b] == 0) {
                    lab_[b] += d * 2;
                } else if (label_[b] == 1) {
                    lab_[b] -= d * 2;
                }
            }
        }
        queue_.clear();
        queue_head_ = 0;
        for (int x = 1; x <= nx_; ++x) {
            if (top_[x] == x && slack_[x] && top_[slack_[x]] != x && slack_of(g(slack_[x], x)) == 0) {
                if (on_tight_edge(g(slack_[x], x))) return true;
            }
        }
        for (int b = n_ + 1; b <= nx_; ++b) {
            if (top_[b] == b && label_[b] == 1 && lab_[b] == 0) expand_blossom(b);
        }
    }
}

void BlossomSolver::run() {
    // Warm start: each vertex dual sits at its cheapest incident edge, which
    // is dual feasible, then mutually tight pairs are matched greedily.
    for (int u = 1; u <= n_; ++u) {
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (int v = 1; v <= n_; ++v) {
            if (g(u, v).present) best = std::max(best, g(u, v).w);
        }
        if (best == std::numeric_limits<std::int64_t>::min()) {
            throw InfeasibleError("node " + std::to_string(u - 1) + " has no edges");
        }
        lab_[u] = best;
    }
    for (int u = 1; u <= n_; ++u) {
        if (match_[u]) continue;
        for (int v = u + 1; v <= n_; ++v) {
            if (!match_[v] && g(u, v).present && slack_of(g(u, v)) == 0) {
                match_[u] = v;
                match_[v] = u;
                break;
            }
        }
    }
    while (grow_and_augment()) {
    }
}

std::vector<int> BlossomSolver::solve(int node_count, std::span<const std::int64_t> costs) {
    if (node_count < 0 || node_count % 2 != 0) {
        throw StructuralError("perfect matching needs an even node count, got " + std::to_string(node_count));
    }
    const auto n = static_cast<std::size_t>(node_count);
    if (costs.size() != n * n) throw StructuralError("cost matrix does not match node count");
    if (node_count == 0) return {};

    constexpr std::int64_t kLimit = std::int64_t{1} << 58;
    reset(node_count);
    for (int u = 0; u < node_count; ++u) {
        for (int v = 0; v < node_count; ++v) {
            std::int64_t c = costs[static_cast<std::size_t>(u) * n + v];
            if (u == v || c == kAbsent) continue;
            if (c > kLimit / node_count || c < -kLimit / node_count) {
                throw StructuralError("edge cost too large for exact integer matching");
            }
            // Doubled so every vertex dual starts even (see the note above).
            g(u + 1, v + 1).w = -2 * c;
            g(u + 1, v + 1).present = true;
        }
    }
    run();

    std::vector<int> mate(n, -1);
    for (int u = 1; u <= node_count; ++u) {
        int m = match_[u];
        if (!m || !g(u, m).present) throw InfeasibleError("graph has no perfect matching");
        mate[u - 1] = m - 1;
    }
    return mate;
}

// ---------------------------------------------------------------------------

namespace {

struct CostMatrix {
    int n = 0;
    std::vector<std::int64_t> cost;
    std::vector<double> weight;

    std::int64_t c(int u, int v) const { return cost[static_cast<std::size_t>(u) * n + v]; }
    bool present(int u, int v) const { return c(u, v) != BlossomSolver::kAbsent; }
};

CostMatrix build_costs(const MatchingGraph& graph) {
    const int n = graph.node_count();
    if (n < 0 || n % 2 != 0) {
        throw StructuralError("perfect matching needs an even node count, got " + std::to_string(n));
    }
    CostMatrix m;
    m.n = n;
    m.cost.assign(static_cast<std::size_t>(n) * n, BlossomSolver::kAbsent);
    m.weight.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& e : graph.edges()) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw StructuralError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") out of range");
        }
        if (e.u == e.v) throw StructuralError("self-loop at node " + std::to_string(e.u));
        auto q = quantize_weight(e.weight);
        auto i = static_cast<std::size_t>(e.u) * n + e.v;
        auto j = static_cast<std::size_t>(e.v) * n + e.u;
        if (m.cost[i] == BlossomSolver::kAbsent || q < m.cost[i]) {
            m.cost[i] = m.cost[j] = q;
            m.weight[i] = m.weight[j] = e.weight;
        }
    }
    return m;
}

Matching to_matching(const CostMatrix& m, const std::vector<int>& mate) {
    Matching out;
    for (int u = 0; u < m.n; ++u) {
        int v = mate[u];
        if (u < v) {
            out.pairs.emplace_back(u, v);
            out.total_weight += m.weight[static_cast<std::size_t>(u) * m.n + v];
        }
    }
    return out;
}

std::int64_t total_cost(const CostMatrix& m, const std::vector<int>& mate) {
    std::int64_t t = 0;
    for (int u = 0; u < m.n; ++u) {
        if (u < mate[u]) t += m.c(u, mate[u]);
    }
    return t;
}

// Solves the subproblem on the nodes listed in `nodes`; returns the optimal
// cost and fills mate (global indices), or false when infeasible.
bool solve_subset(BlossomSolver& solver, const CostMatrix& m, const std::vector<int>& nodes,
                  std::vector<int>& mate, std::int64_t& cost) {
    const int k = static_cast<int>(nodes.size());
    cost = 0;
    if (k == 0) return true;
    std::vector<std::int64_t> sub(static_cast<std::size_t>(k) * k, BlossomSolver::kAbsent);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) sub[static_cast<std::size_t>(i) * k + j] = m.c(nodes[i], nodes[j]);
    }
    std::vector<int> local;
    try {
        local = solver.solve(k, sub);
    } catch (const InfeasibleError&) {
        return false;
    }
    for (int i = 0; i < k; ++i) {
        mate[nodes[i]] = nodes[local[i]];
        if (i < local[i]) cost += sub[static_cast<std::size_t>(i) * k + local[i]];
    }
    return true;
}

// Greedy lexicographic descent: fix the lowest free node to the smallest
// partner that still admits an optimal completion.
void canonicalize(BlossomSolver& solver, const CostMatrix& m, std::vector<int>& mate) {
    std::vector<char> alive(m.n, 1);
    std::int64_t remaining = total_cost(m, mate);
    std::vector<int> trial(mate);
    for (int a = 0; a < m.n; ++a) {
        if (!alive[a]) continue;
        for (int b = a + 1; b < mate[a]; ++b) {
            if (!alive[b] || !m.present(a, b)) continue;
            std::vector<int> rest;
            for (int x = 0; x < m.n; ++x) {
                if (alive[x] && x != a && x != b) rest.push_back(x);
            }
            std::int64_t sub_cost = 0;
            if (!solve_subset(solver, m, rest, trial, sub_cost)) continue;
            if (sub_cost + m.c(a, b) == remaining) {
                trial[a] = b;
                trial[b] = a;
                for (int x : rest) mate[x] = trial[x];
                mate[a] = b;
                mate[b] = a;
                break;
            }
        }
        alive[a] = alive[mate[a]] = 0;
        remaining -= m.c(a, mate[a]);
    }
}

void brute_force_recurse(const CostMatrix& m, std::vector<int>& mate, std::int64_t cost, std::int64_t& best,
                         std::vector<int>& best_mate, bool& found) {
    int a = 0;
    while (a < m.n && mate[a] >= 0) ++a;
    if (a == m.n) {
        if (!found || cost < best) {
            best = cost;
            best_mate = mate;
            found = true;
        }
        return;
    }
    for (int b = a + 1; b < m.n; ++b) {
        if (mate[b] >= 0 || !m.present(a, b)) continue;
        mate[a] = b;
        mate[b] = a;
        brute_force_recurse(m, mate, cost + m.c(a, b), best, best_mate, found);
        mate[a] = mate[b] = -1;
    }
}

}  // namespace

Matching min_weight_perfect_matching(const MatchingGraph& graph, const MatchingOptions& options) {
    CostMatrix m = build_costs(graph);
    if (m.n == 0) return {};
    BlossomSolver solver;
    std::vector<int> mate = solver.solve(m.n, m.cost);
    if (options.canonical_ties) canonicalize(solver, m, mate);
    return to_matching(m, mate);
}

Matching brute_force_matching(const MatchingGraph& graph) {
    if (graph.node_count() > kBruteForceMaxNodes) {
        throw SizeLimitError("brute-force matching supports at most " + std::to_string(kBruteForceMaxNodes) +
                             " nodes, got " + std::to_string(graph.node_count()));
    }
    CostMatrix m = build_costs(graph);
    if (m.n == 0) return {};
    std::vector<int> mate(m.n, -1);
    std::vector<int> best_mate;
    std::int64_t best = 0;
    bool found = false;
    brute_force_recurse(m, mate, 0, best, best_mate, found);
    if (!found) throw InfeasibleError("graph has no perfect matching");
    return to_matching(m, best_mate);
}

}  // namespace toric
