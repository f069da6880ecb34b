#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "swarmest/network.hpp"

namespace swarmest {

struct ConsensusParams {
  double alpha = 0.5;      // weight on the agent's own previous estimate
  int t_comm = 100;        // averaging iterations
  double delta = 1e-4;     // steady-state band for first passage

  void validate() const;
};

// Memory-augmented DeGroot update:
//   z' = alpha z + (1 - alpha)/(1 + N_i) * (s + sum_j z_j)
double degroot_update(double estimate, double sample, std::span<const double> neighbor_estimates, double alpha);

// Linear-system form z(t+1) = A z(t) + B s of the update on a fixed graph.
struct TransitionSystem {
  Eigen::MatrixXd state;  // A
  Eigen::VectorXd input;  // diagonal of B
};

TransitionSystem transition_system(const ProximityGraph& graph, double alpha);

// Fixed point of the update: (I - A) z* = B s, solved directly. Requires alpha < 1.
std::vector<double> steady_state_solve(const ProximityGraph& graph, std::span<const double> samples, double alpha);

// Synchronous degroot_update iteration on a static graph. Element t of the result is
// the estimate vector after t updates; element 0 is `initial`.
std::vector<std::vector<double>> run_consensus_static(const ProximityGraph& graph, std::span<const double> samples,
                                                      const ConsensusParams& params,
                                                      std::span<const double> initial);

// First index whose value is below delta; nullopt if none.
std::optional<std::size_t> first_passage_time(std::span<const double> series, double delta);

// How the precision-error trajectory is turned into a first-passage series.
enum class PassageMode {
  DistanceToFinal,  // |E_P(t) - E_P(t_comm)|
  RawPrecision,     // E_P(t)
};

// Per-step distance of the precision-error trajectory to its steady state.
std::vector<double> passage_series(std::span<const double> precision_errors, PassageMode mode);

}  // namespace swarmest
