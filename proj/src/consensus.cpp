#include "swarmest/consensus.hpp"

#include <cmath>
#include <stdexcept>

#include "swarmest/errors.hpp"

namespace swarmest {

void ConsensusParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha", "must lie in [0, 1]");
  if (t_comm < 1) throw ConfigError("t_comm", "must be >= 1");
  if (!(delta > 0.0)) throw ConfigError("delta", "must be > 0");
}

double degroot_update(double estimate, double sample, std::span<const double> neighbor_estimates, double alpha) {
  double sum = sample;
  for (double z : neighbor_estimates) sum += z;
  const double w = (1.0 - alpha) / (1.0 + static_cast<double>(neighbor_estimates.size()));
  return alpha * estimate + w * sum;
}

TransitionSystem transition_system(const ProximityGraph& graph, double alpha) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const auto deg = graph.degrees();
  TransitionSystem sys{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    sys.state(i, i) = alpha;
    sys.input(i) = (1.0 - alpha) / (1.0 + static_cast<double>(deg[static_cast<std::size_t>(i)]));
  }
  for (const auto& [a, b] : graph.edges()) {
    const auto i = static_cast<Eigen::Index>(a);
    const auto j = static_cast<Eigen::Index>(b);
    sys.state(i, j) = sys.input(i);
    sys.state(j, i) = sys.input(j);
  }
  return sys;
}

std::vector<double> steady_state_solve(const ProximityGraph& graph, std::span<const double> samples, double alpha) {
  if (samples.size() != graph.node_count()) throw DomainError("steady_state_solve: size mismatch");
  if (!(alpha < 1.0)) throw DomainError("steady_state_solve: alpha must be < 1");
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  const TransitionSystem sys = transition_system(graph, alpha);
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - sys.state;
  const Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(samples.data(), n);
  const Eigen::VectorXd rhs = sys.input.cwiseProduct(s);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
  if (!lu.isInvertible()) throw std::logic_error("steady_state_solve: singular system");
  const Eigen::VectorXd z = lu.solve(rhs);
  return {z.data(), z.data() + n};
}

std::vector<std::vector<double>> run_consensus_static(const ProximityGraph& graph, std::span<const double> samples,
                                                      const ConsensusParams& params,
                                                      std::span<const double> initial) {
  const std::size_t n = graph.node_count();
  if (samples.size() != n || initial.size() != n) throw DomainError("run_consensus_static: size mismatch");
  const auto adj = graph.adjacency_lists();
  std::vector<std::vector<double>> series;
  series.reserve(static_cast<std::size_t>(std::max(params.t_comm, 0)) + 1);
  series.emplace_back(initial.begin(), initial.end());
  std::vector<double> nbr;
  for (int t = 0; t < params.t_comm; ++t) {
    const auto& prev = series.back();
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      nbr.clear();
      for (std::size_t j : adj[i]) nbr.push_back(prev[j]);
      next[i] = degroot_update(prev[i], samples[i], nbr, params.alpha);
    }
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<std::size_t> first_passage_time(std::span<const double> series, double delta) {
  if (series.empty()) throw DomainError("first_passage_time: empty series");
  if (!(delta > 0.0)) throw DomainError("first_passage_time: delta must be > 0");
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (series[t] < delta) return t;
  }
  return std::nullopt;
}

std::vector<double> passage_series(std::span<const double> precision_errors, PassageMode mode) {
  if (precision_errors.empty()) throw DomainError("passage_series: empty series");
  std::vector<double> out(precision_errors.begin(), precision_errors.end());
  if (mode == PassageMode::DistanceToFinal) {
    const double final_value = precision_errors.back();
    for (double& v : out) v = std::abs(v - final_value);
  }
  return out;
}

}  // namespace swarmest
