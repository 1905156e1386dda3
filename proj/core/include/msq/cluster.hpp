#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "msq/modes.hpp"

namespace msq {

/// Cluster graph over squeezed modes: symmetric hollow 0/1 adjacency plus the
/// map from node index to the squeezed (m, n) mode feeding it.
struct ClusterTopology {
  Eigen::MatrixXi adjacency;
  std::vector<std::pair<int, int>> node_modes;

  int n_nodes() const { return static_cast<int>(adjacency.rows()); }
  void validate() const;

  static ClusterTopology from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges,
                                    std::vector<std::pair<int, int>> node_modes = {});
};

/// Paper presets: triangle over {00, 01, 10}, 4-cycle over {00, 01, 10, 11},
/// and the 5-node graph over {00, 01, 10, 11, 02}.
ClusterTopology triangle_cluster();
ClusterTopology four_node_cluster();
ClusterTopology five_node_cluster();

/// a = (I + A^2)^{-1/2}, b = A (I + A^2)^{-1/2}; both symmetric and
/// a^2 + b^2 = I.
struct TransformMatrices {
  Eigen::MatrixXd a, b;
};
TransformMatrices transform_matrices(const Eigen::MatrixXi& adjacency);

/// Orthogonal node transform U = [[a, -b], [b, a]] acting on (x_1..x_N, p_1..p_N).
Eigen::MatrixXd node_transform(const Eigen::MatrixXi& adjacency);

/// Cluster quadratures Q = U q from stacked squeezed-mode quadratures.
Eigen::VectorXd node_quadratures(const Eigen::MatrixXi& adjacency, const Eigen::VectorXd& quadratures);

/// Nullifier variance combination: delta_i depends only on the squeezed-mode
/// p quadratures, with convex weights w_ij = S_ij^2 / (1 + h_i) where
/// S = (I + A^2)^{1/2}. The x contributions cancel structurally (b = A a);
/// x_cancellation_defect records the residual of the companion p-coefficient
/// identity a + A b = S.
struct NullifierSet {
  Eigen::MatrixXd weights;         // (node, mode) -> w_ij, rows sum to 1
  Eigen::VectorXi neighbor_counts; // h_i
  Eigen::VectorXd variances;       // shot-noise units
  double x_cancellation_defect = 0.0;
};
NullifierSet nullifier_variances(const ClusterTopology& topology, const Eigen::VectorXd& p_variances);

/// Two-node entanglement witness W = var1 + var2 against a configurable
/// threshold (default two vacuum units).
struct WitnessResult {
  double value = 0.0;
  bool entangled = false;
};
WitnessResult two_node_witness(double var1, double var2, double threshold = 2.0);

/// Spatial shapes of the nullifier modes: normalized combinations
/// sum_j S_ij / sqrt(1 + h_i) * mode_j of the contributing squeezed modes.
std::vector<ModeFunction2D> nullifier_mode_shapes(const ClusterTopology& topology,
                                                  const std::vector<ModeFunction2D>& node_modes);

} // namespace msq
