#include "swarmest/network.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "swarmest/errors.hpp"
#include "swarmest/union_find.hpp"

namespace swarmest {

ProximityGraph::ProximityGraph(std::size_t node_count, std::vector<Edge> edges) : n_(node_count) {
  for (auto& [a, b] : edges) {
    if (a == b) throw DomainError("ProximityGraph: self-loop");
    if (a >= n_ || b >= n_) throw DomainError("ProximityGraph: node id out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

std::vector<std::size_t> ProximityGraph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& [a, b] : edges_) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

std::vector<std::vector<std::size_t>> ProximityGraph::adjacency_lists() const {
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const auto& [a, b] : edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

ProximityGraph ProximityGraph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return ProximityGraph(n, std::move(edges));
}

ProximityGraph build_proximity_graph(std::span<const Vec2> positions, double r_comm) {
  if (!(r_comm > 0.0)) throw DomainError("build_proximity_graph: r_comm must be > 0");
  const double r2 = r_comm * r_comm;
  std::vector<ProximityGraph::Edge> edges;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if ((positions[i] - positions[j]).squared_norm() <= r2) edges.emplace_back(i, j);
    }
  }
  return ProximityGraph(positions.size(), std::move(edges));
}

double mean_degree(const ProximityGraph& graph) {
  if (graph.node_count() == 0) throw DomainError("mean_degree: empty graph");
  return 2.0 * static_cast<double>(graph.edges().size()) / static_cast<double>(graph.node_count());
}

std::size_t giant_component_size(const ProximityGraph& graph) {
  if (graph.node_count() == 0) throw DomainError("giant_component_size: empty graph");
  UnionFind uf(graph.node_count());
  for (const auto& [a, b] : graph.edges()) uf.unite(a, b);
  std::size_t best = 0;
  for (std::size_t i = 0; i < graph.node_count(); ++i) best = std::max(best, uf.component_size(i));
  return best;
}

Eigen::MatrixXd averaging_matrix(const ProximityGraph& graph, double alpha) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const auto deg = graph.degrees();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i, i) = alpha + (1.0 - alpha) / (1.0 + static_cast<double>(deg[static_cast<std::size_t>(i)]));
  }
  for (const auto& [a, b] : graph.edges()) {
    const auto i = static_cast<Eigen::Index>(a);
    const auto j = static_cast<Eigen::Index>(b);
    w(i, j) = (1.0 - alpha) / (1.0 + static_cast<double>(deg[a]));
    w(j, i) = (1.0 - alpha) / (1.0 + static_cast<double>(deg[b]));
  }
  return w;
}

double second_largest_eigenvalue(const ProximityGraph& graph, double alpha) {
  if (graph.node_count() < 2) throw DomainError("second_largest_eigenvalue: needs at least 2 nodes");
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const auto deg = graph.degrees();
  // S = D^(1/2) W D^(-1/2) with D = diag(1 + deg):
  //   S_ii = W_ii,  S_ij = (1 - alpha) / sqrt((1 + deg_i)(1 + deg_j)).
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i, i) = alpha + (1.0 - alpha) / (1.0 + static_cast<double>(deg[static_cast<std::size_t>(i)]));
  }
  for (const auto& [a, b] : graph.edges()) {
    const double v = (1.0 - alpha) / std::sqrt((1.0 + static_cast<double>(deg[a])) * (1.0 + static_cast<double>(deg[b])));
    s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    s(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("second_largest_eigenvalue: eigen solver failed");
  std::vector<double> moduli(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  // clamp roundoff above 1
  return std::min(moduli[1], 1.0);
}

GeometricSample random_geometric_graph(std::size_t n, double range_ratio, Rng& rng) {
  if (n < 1) throw DomainError("random_geometric_graph: n must be >= 1");
  if (!(range_ratio > 0.0) || range_ratio > std::sqrt(2.0)) {
    throw DomainError("random_geometric_graph: range_ratio must lie in (0, sqrt(2)]");
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GeometricSample out;
  out.positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    out.positions.push_back({x, y});
  }
  out.graph = build_proximity_graph(out.positions, range_ratio);
  return out;
}

void write_edge_list(std::ostream& out, const ProximityGraph& graph) {
  for (const auto& [a, b] : graph.edges()) out << a << ' ' << b << '\n';
}

}  // namespace swarmest
