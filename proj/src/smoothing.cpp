#include "braess/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <Eigen/Dense>

#include "braess/rng.hpp"
#include "braess/spectrum.hpp"

namespace braess {

LabelConfig ring_label_config(int which) {
  switch (which) {
    case 1: return {"config1", {1, 1, -1, -1, -1, -1, 1, 1}};
    case 2: return {"config2", {1, 1, 1, 1, -1, -1, -1, -1}};
    case 3: return {"config3", {1, -1, -1, 1, 1, -1, -1, 1}};
    case 4: return {"config4", {1, -1, 1, -1, 1, -1, 1, -1}};
    default:
      fail(Errc::InvalidArgument, "label config " + std::to_string(which) + " outside 1..4");
  }
}

Rational make_rational(long long num, long long den) {
  if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

double to_double(const Rational& r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

namespace {

Rational rational_add(const Rational& a, const Rational& b) {
  return make_rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

void check_labels(const Graph& g, const LabelConfig& labels) {
  if (static_cast<int>(labels.labels.size()) != g.num_nodes())
    fail(Errc::InvalidArgument, "label count " + std::to_string(labels.labels.size()) +
                                    " != node count " + std::to_string(g.num_nodes()));
  for (int v : labels.labels)
    if (v != 1 && v != -1) fail(Errc::InvalidArgument, "labels must be +1 or -1");
}

std::vector<int> class_members(const LabelConfig& labels, int cls) {
  std::vector<int> out;
  for (std::size_t i = 0; i < labels.labels.size(); ++i)
    if (labels.labels[i] == cls) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

Eigen::MatrixXd mean_aggregate(const Graph& g, const Eigen::MatrixXd& features) {
  if (features.rows() != g.num_nodes())
    fail(Errc::InvalidArgument, "feature rows " + std::to_string(features.rows()) +
                                    " != node count " + std::to_string(g.num_nodes()));
  Eigen::MatrixXd out(features.rows(), features.cols());
  for (int u = 0; u < g.num_nodes(); ++u) {
    Eigen::RowVectorXd acc = features.row(u);
    for (int v : g.neighbors(u)) acc += features.row(v);
    out.row(u) = acc / (1.0 + static_cast<double>(g.degree(u)));
  }
  return out;
}

std::pair<Rational, Rational> class_mean_informativeness_exact(const Graph& g,
                                                               const LabelConfig& labels) {
  check_labels(g, labels);
  std::pair<Rational, Rational> means;
  for (int cls : {1, -1}) {
    const std::vector<int> members = class_members(labels, cls);
    if (members.empty()) fail(Errc::InvalidArgument, "a class is empty");
    Rational sum{0, 1};
    for (int u : members) {
      long long acc = labels.labels[u];
      for (int v : g.neighbors(u)) acc += labels.labels[v];
      sum = rational_add(sum, make_rational(acc, 1 + g.degree(u)));
    }
    const Rational mean = make_rational(sum.num, sum.den * static_cast<long long>(members.size()));
    (cls == 1 ? means.first : means.second) = mean;
  }
  return means;
}

std::pair<double, double> class_mean_informativeness(const Graph& g,
                                                     const LabelConfig& labels) {
  const auto exact = class_mean_informativeness_exact(g, labels);
  return {to_double(exact.first), to_double(exact.second)};
}

double dirichlet_energy(const Graph& g, const Eigen::MatrixXd& features) {
  if (features.rows() != g.num_nodes())
    fail(Errc::InvalidArgument, "feature rows != node count");
  double total = 0.0;
  for (int c = 0; c < features.cols(); ++c) {
    const Eigen::VectorXd col = features.col(c);
    total += col.dot(laplacian_apply(g, col));
  }
  return total / static_cast<double>(g.num_nodes());
}

double interclass_cosine_distance(const Eigen::MatrixXd& features,
                                  const LabelConfig& labels) {
  if (static_cast<int>(labels.labels.size()) != features.rows())
    fail(Errc::InvalidArgument, "label count != feature rows");
  Eigen::VectorXd norms(features.rows());
  for (int i = 0; i < features.rows(); ++i) {
    norms[i] = features.row(i).norm();
    if (norms[i] == 0.0) fail(Errc::ZeroVectorRow, "row " + std::to_string(i) + " is zero");
  }
  const std::vector<int> pos = class_members(labels, 1);
  const std::vector<int> neg = class_members(labels, -1);
  if (pos.empty() || neg.empty()) fail(Errc::InvalidArgument, "a class is empty");
  double acc = 0.0;
  for (int u : pos)
    for (int v : neg)
      acc += 1.0 - features.row(u).dot(features.row(v)) / (norms[u] * norms[v]);
  return acc / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

Eigen::MatrixXd sample_features(const LabelConfig& labels, int dim, std::uint64_t seed) {
  if (dim < 1) fail(Errc::InvalidArgument, "feature dim must be >= 1");
  Rng rng(seed);
  Eigen::MatrixXd x(static_cast<int>(labels.labels.size()), dim);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < dim; ++j)
      x(i, j) = rng.normal(static_cast<double>(labels.labels[i]), 1.0);
  return x;
}

namespace {

// Per class: seeded shuffle, first ceil(size/2) train, rest test.
std::pair<std::vector<int>, std::vector<int>> stratified_split(const LabelConfig& labels,
                                                               Rng& rng) {
  std::vector<int> train, test;
  for (int cls : {1, -1}) {
    std::vector<int> members = class_members(labels, cls);
    for (std::size_t i = members.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.below(i));
      std::swap(members[i - 1], members[j]);
    }
    const std::size_t take = (members.size() + 1) / 2;
    if (take == 0 || take == members.size())
      fail(Errc::DegenerateSplit, "class " + std::to_string(cls) +
                                      " cannot occupy both split halves");
    train.insert(train.end(), members.begin(), members.begin() + static_cast<long>(take));
    test.insert(test.end(), members.begin() + static_cast<long>(take), members.end());
  }
  return {train, test};
}

// Closed-form ridge with unpenalized intercept; returns test MSE.
double ridge_test_mse(const Eigen::MatrixXd& features, const Eigen::VectorXd& y,
                      const std::vector<int>& train, const std::vector<int>& test,
                      double alpha) {
  const int dim = static_cast<int>(features.cols());
  Eigen::MatrixXd z_train(static_cast<int>(train.size()), dim + 1);
  Eigen::VectorXd y_train(static_cast<int>(train.size()));
  for (std::size_t r = 0; r < train.size(); ++r) {
    z_train.row(static_cast<int>(r)).head(dim) = features.row(train[r]);
    z_train(static_cast<int>(r), dim) = 1.0;
    y_train[static_cast<int>(r)] = y[train[r]];
  }
  Eigen::MatrixXd normal = z_train.transpose() * z_train;
  for (int j = 0; j < dim; ++j) normal(j, j) += alpha;
  const Eigen::VectorXd beta = normal.ldlt().solve(z_train.transpose() * y_train);

  double acc = 0.0;
  for (int u : test) {
    const double pred = features.row(u).head(dim).dot(beta.head(dim)) + beta[dim];
    const double err = pred - y[u];
    acc += err * err;
  }
  return acc / static_cast<double>(test.size());
}

}  // namespace

SmoothingReport smoothing_mse_curve(const Graph& g, const LabelConfig& labels,
                                    const SmoothingOptions& options) {
  check_labels(g, labels);
  if (options.max_order < 0) fail(Errc::InvalidArgument, "max_order must be >= 0");
  if (options.trials < 1) fail(Errc::InvalidArgument, "trials must be >= 1");
  if (options.ridge_alpha < 0.0) fail(Errc::InvalidArgument, "ridge_alpha must be >= 0");
  if (options.feature_dim < 1) fail(Errc::InvalidArgument, "feature_dim must be >= 1");

  const int orders = options.max_order + 1;
  Eigen::VectorXd y(g.num_nodes());
  for (int i = 0; i < g.num_nodes(); ++i) y[i] = static_cast<double>(labels.labels[i]);

  std::vector<std::vector<double>> mse(static_cast<std::size_t>(orders));
  std::vector<Eigen::MatrixXd> first_trial_features(static_cast<std::size_t>(orders));

  for (int t = 0; t < options.trials; ++t) {
    const std::uint64_t feature_seed = derive_seed(options.seed, 2 * static_cast<std::uint64_t>(t));
    const std::uint64_t split_seed =
        derive_seed(options.seed, 2 * static_cast<std::uint64_t>(t) + 1);
    Eigen::MatrixXd x = sample_features(labels, options.feature_dim, feature_seed);
    Rng split_rng(split_seed);
    const auto [train, test] = stratified_split(labels, split_rng);
    for (int k = 0; k < orders; ++k) {
      if (k > 0) x = mean_aggregate(g, x);
      if (t == 0) first_trial_features[static_cast<std::size_t>(k)] = x;
      mse[static_cast<std::size_t>(k)].push_back(
          ridge_test_mse(x, y, train, test, options.ridge_alpha));
    }
  }

  const std::vector<int> pos = class_members(labels, 1);
  const std::vector<int> neg = class_members(labels, -1);

  SmoothingReport report;
  report.options = options;
  for (int k = 0; k < orders; ++k) {
    const std::vector<double>& samples = mse[static_cast<std::size_t>(k)];
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double v : samples) var += (v - mean) * (v - mean);
    var /= static_cast<double>(samples.size());

    const Eigen::MatrixXd& feats = first_trial_features[static_cast<std::size_t>(k)];
    SmoothingOrderStats stats;
    stats.order = k;
    stats.mse_mean = mean;
    stats.mse_std = std::sqrt(var);
    stats.dirichlet = dirichlet_energy(g, feats);
    stats.cosine_dist = interclass_cosine_distance(feats, labels);
    stats.class_mean_pos = Eigen::VectorXd::Zero(feats.cols());
    stats.class_mean_neg = Eigen::VectorXd::Zero(feats.cols());
    for (int u : pos) stats.class_mean_pos += feats.row(u).transpose();
    for (int u : neg) stats.class_mean_neg += feats.row(u).transpose();
    stats.class_mean_pos /= static_cast<double>(pos.size());
    stats.class_mean_neg /= static_cast<double>(neg.size());
    report.per_order.push_back(std::move(stats));
  }
  return report;
}

std::string smoothing_report_csv(const SmoothingReport& report,
                                 const std::vector<std::string>& header_comments) {
  std::string out;
  for (const std::string& line : header_comments) out += "# " + line + "\n";
  out += "order,mse_mean,mse_std,dirichlet,cosine_dist\n";
  char buf[160];
  for (const SmoothingOrderStats& s : report.per_order) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", s.order, s.mse_mean,
                  s.mse_std, s.dirichlet, s.cosine_dist);
    out += buf;
  }
  return out;
}

}  // namespace braess
