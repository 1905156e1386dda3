#include "msq/cluster.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace msq {

namespace {

// (I + A^2)^{+1/2} and (I + A^2)^{-1/2} via eigendecomposition of the
// symmetric positive definite I + A^2.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> sqrt_pair(const Eigen::MatrixXi& adjacency) {
  const Eigen::MatrixXd a = adjacency.cast<double>();
  const int n = static_cast<int>(a.rows());
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + a * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd ev = eig.eigenvalues();
  Eigen::MatrixXd sqrt_m = eig.eigenvectors() * ev.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
  Eigen::MatrixXd inv_sqrt_m =
      eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  return {sqrt_m, inv_sqrt_m};
}

void validate_adjacency(const Eigen::MatrixXi& a) {
  if (a.rows() < 2 || a.rows() != a.cols())
    throw ConfigError("ClusterTopology: adjacency must be square with >= 2 nodes");
  for (int i = 0; i < a.rows(); ++i) {
    if (a(i, i) != 0) throw ConfigError("ClusterTopology: adjacency diagonal must be zero");
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0 && a(i, j) != 1) throw ConfigError("ClusterTopology: adjacency entries must be 0/1");
      if (a(i, j) != a(j, i)) throw ConfigError("ClusterTopology: adjacency must be symmetric");
    }
  }
}

} // namespace

void ClusterTopology::validate() const {
  validate_adjacency(adjacency);
  if (!node_modes.empty() && static_cast<int>(node_modes.size()) != n_nodes())
    throw ConfigError("ClusterTopology: node_modes size must match the node count");
}

ClusterTopology ClusterTopology::from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges,
                                            std::vector<std::pair<int, int>> node_modes) {
  if (n_nodes < 2) throw ConfigError("ClusterTopology: need at least 2 nodes");
  ClusterTopology t;
  t.adjacency = Eigen::MatrixXi::Zero(n_nodes, n_nodes);
  for (const auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n_nodes || j >= n_nodes || i == j)
      throw ConfigError("ClusterTopology: invalid edge");
    t.adjacency(i, j) = 1;
    t.adjacency(j, i) = 1;
  }
  t.node_modes = std::move(node_modes);
  t.validate();
  return t;
}

ClusterTopology triangle_cluster() {
  return ClusterTopology::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 0}, {0, 1}, {1, 0}});
}

ClusterTopology four_node_cluster() {
  return ClusterTopology::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}},
                                     {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

ClusterTopology five_node_cluster() {
  // adjacency rows: 01111 / 10101 / 11010 / 10101 / 11010
  return ClusterTopology::from_edges(
      5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}, {3, 4}},
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}});
}

TransformMatrices transform_matrices(const Eigen::MatrixXi& adjacency) {
  validate_adjacency(adjacency);
  const auto [sqrt_m, inv_sqrt_m] = sqrt_pair(adjacency);
  return {inv_sqrt_m, adjacency.cast<double>() * inv_sqrt_m};
}

Eigen::MatrixXd node_transform(const Eigen::MatrixXi& adjacency) {
  const TransformMatrices t = transform_matrices(adjacency);
  const int n = static_cast<int>(adjacency.rows());
  Eigen::MatrixXd u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = t.a;
  u.topRightCorner(n, n) = -t.b;
  u.bottomLeftCorner(n, n) = t.b;
  u.bottomRightCorner(n, n) = t.a;
  return u;
}

Eigen::VectorXd node_quadratures(const Eigen::MatrixXi& adjacency, const Eigen::VectorXd& quadratures) {
  const int n = static_cast<int>(adjacency.rows());
  if (quadratures.size() != 2 * n)
    throw ConfigError("node_quadratures: quadrature vector must have 2 * n_nodes entries");
  return node_transform(adjacency) * quadratures;
}

NullifierSet nullifier_variances(const ClusterTopology& topology, const Eigen::VectorXd& p_variances) {
  topology.validate();
  const int n = topology.n_nodes();
  if (p_variances.size() != n)
    throw ConfigError("nullifier_variances: need one p variance per node");
  if ((p_variances.array() <= 0.0).any())
    throw ConfigError("nullifier_variances: variances must be positive");

  const auto [sqrt_m, inv_sqrt_m] = sqrt_pair(topology.adjacency);
  const Eigen::MatrixXd a = inv_sqrt_m;
  const Eigen::MatrixXd adj = topology.adjacency.cast<double>();
  const Eigen::MatrixXd b = adj * a;

  NullifierSet set;
  set.neighbor_counts = topology.adjacency.rowwise().sum();
  // With b = A a the nullifier x coefficients (b - A a) cancel structurally;
  // what can drift numerically is the p-coefficient identity a + A b = S.
  set.x_cancellation_defect = (a + adj * b - sqrt_m).cwiseAbs().maxCoeff();
  set.weights.resize(n, n);
  set.variances.resize(n);
  for (int i = 0; i < n; ++i) {
    const double norm = 1.0 + set.neighbor_counts(i);
    double var = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = sqrt_m(i, j) * sqrt_m(i, j) / norm;
      set.weights(i, j) = w;
      var += w * p_variances(j);
    }
    set.variances(i) = var;
  }
  return set;
}

WitnessResult two_node_witness(double var1, double var2, double threshold) {
  if (var1 <= 0.0 || var2 <= 0.0) throw ConfigError("two_node_witness: variances must be positive");
  const double w = var1 + var2;
  return {w, w < threshold};
}

std::vector<ModeFunction2D> nullifier_mode_shapes(const ClusterTopology& topology,
                                                  const std::vector<ModeFunction2D>& node_modes) {
  topology.validate();
  const int n = topology.n_nodes();
  if (static_cast<int>(node_modes.size()) != n)
    throw ConfigError("nullifier_mode_shapes: need one mode per node");
  for (int j = 1; j < n; ++j)
    if (node_modes[j].grid != node_modes[0].grid)
      throw GridMismatchError("nullifier_mode_shapes: node modes on different grids");

  const auto [sqrt_m, inv_sqrt_m] = sqrt_pair(topology.adjacency);
  const Eigen::VectorXi h = topology.adjacency.rowwise().sum();

  std::vector<ModeFunction2D> shapes;
  shapes.reserve(n);
  for (int i = 0; i < n; ++i) {
    ModeFunction2D shape{node_modes[0].grid,
                         Eigen::MatrixXcd::Zero(node_modes[0].samples.rows(), node_modes[0].samples.cols()),
                         -1, -1};
    const double norm = std::sqrt(1.0 + h(i));
    for (int j = 0; j < n; ++j) shape.samples += (sqrt_m(i, j) / norm) * node_modes[j].samples;
    const double nrm = l2_norm(shape);
    if (nrm > 0.0) shape.samples /= nrm;
    shapes.push_back(std::move(shape));
  }
  return shapes;
}

} // namespace msq
