#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swarmest/geometry.hpp"
#include "swarmest/rng.hpp"

namespace swarmest {

// Undirected simple graph. Edges are stored as (i, j) with i < j, sorted
// lexicographically and without duplicates.
class ProximityGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  ProximityGraph() = default;
  // Normalises, sorts and deduplicates; rejects self-loops and out-of-range ids.
  ProximityGraph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<std::size_t>> adjacency_lists() const;

  static ProximityGraph complete(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// Edge (i, j) iff |p_i - p_j| <= r_comm.
ProximityGraph build_proximity_graph(std::span<const Vec2> positions, double r_comm);

double mean_degree(const ProximityGraph& graph);
std::size_t giant_component_size(const ProximityGraph& graph);

// Row-stochastic averaging matrix without the measurement input:
//   W_ii = alpha + (1 - alpha) / (1 + deg_i),  W_ij = (1 - alpha) / (1 + deg_i).
Eigen::MatrixXd averaging_matrix(const ProximityGraph& graph, double alpha);

// Second-largest eigenvalue modulus of averaging_matrix(graph, alpha).
// Computed on the symmetric matrix diag(1 + deg)^(1/2) W diag(1 + deg)^(-1/2).
// Requires N >= 2.
double second_largest_eigenvalue(const ProximityGraph& graph, double alpha);

struct GeometricSample {
  std::vector<Vec2> positions;
  ProximityGraph graph;
};

// n points uniform in the unit square linked at radius range_ratio.
GeometricSample random_geometric_graph(std::size_t n, double range_ratio, Rng& rng);

// "i j" per line, zero-based, sorted.
void write_edge_list(std::ostream& out, const ProximityGraph& graph);

}  // namespace swarmest
