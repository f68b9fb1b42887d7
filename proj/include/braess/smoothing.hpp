#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "braess/graph.hpp"

namespace braess {

// Binary node classes, +1 / -1 per node.
struct LabelConfig {
  std::string name;
  std::vector<int> labels;
};

// The four built-in labelings of the eight-node showcase family:
//   1  original split       {0,1,6,7} / {2,3,4,5}
//   2  rotated split        {0,1,2,3} / {4,5,6,7}
//   3  paired split         {0,3,4,7} / {1,2,5,6}
//   4  alternating split    {0,2,4,6} / {1,3,5,7}
LabelConfig ring_label_config(int which);

// Exact fraction num/den, reduced, den > 0.
struct Rational {
  long long num = 0;
  long long den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(long long num, long long den);
double to_double(const Rational& r);

/**
 * One self-inclusive mean-aggregation round:
 *   x'_u = (x_u + sum_{v in N(u)} x_v) / (1 + d_u)
 * i.e. X' = (D + I)^{-1} (A + I) X. Degree-0 nodes pass through unchanged.
 */
Eigen::MatrixXd mean_aggregate(const Graph& g, const Eigen::MatrixXd& features);

// Class means after one aggregation round of the noiseless +-1 class signal,
// in exact rational arithmetic. Returns (positive-class mean, negative-class
// mean).
std::pair<Rational, Rational> class_mean_informativeness_exact(const Graph& g,
                                                               const LabelConfig& labels);
std::pair<double, double> class_mean_informativeness(const Graph& g,
                                                     const LabelConfig& labels);

// Energy trace(X^T L X) / n under the symmetric normalized Laplacian; 0 only
// for columns parallel to the kernel.
double dirichlet_energy(const Graph& g, const Eigen::MatrixXd& features);

// Mean of 1 - cos(x_u, x_v) over all cross-class node pairs. Rows must be
// nonzero (ZeroVectorRow).
double interclass_cosine_distance(const Eigen::MatrixXd& features,
                                  const LabelConfig& labels);

struct SmoothingOptions {
  int max_order = 10;     // aggregation rounds 0..max_order
  int trials = 200;
  double ridge_alpha = 1e-3;
  std::uint64_t seed = 0;
  int feature_dim = 1;
};

struct SmoothingOrderStats {
  int order = 0;
  double mse_mean = 0.0;
  double mse_std = 0.0;   // population deviation: one trial reports 0
  double dirichlet = 0.0;       // diagnostics on the first trial's features
  double cosine_dist = 0.0;
  Eigen::VectorXd class_mean_pos;
  Eigen::VectorXd class_mean_neg;
};

struct SmoothingReport {
  std::vector<SmoothingOrderStats> per_order;
  SmoothingOptions options;
};

/**
 * Per trial: draw features (class c row ~ N(c, 1) i.i.d.), aggregate
 * k = 0..max_order times, split nodes 50/50 per class (seeded), fit ridge
 * regression (closed form, unpenalized intercept) on the train half, record
 * test MSE. Trials use seeds derived from (seed, trial), so trial order and
 * scoring parallelism cannot change aggregates. DegenerateSplit if either
 * class misses a side of the split.
 */
SmoothingReport smoothing_mse_curve(const Graph& g, const LabelConfig& labels,
                                    const SmoothingOptions& options);

// Deterministic per (labels, dim, seed); independent of the graph.
Eigen::MatrixXd sample_features(const LabelConfig& labels, int dim, std::uint64_t seed);

// CSV body: order,mse_mean,mse_std,dirichlet,cosine_dist. Comment lines (if
// any) carry the resolved run config.
std::string smoothing_report_csv(const SmoothingReport& report,
                                 const std::vector<std::string>& header_comments = {});

}  // namespace braess
