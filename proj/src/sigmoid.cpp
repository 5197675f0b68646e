#include <cmath>

#include "ispear/ml.hpp"

namespace ispear::ml {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double SigmoidModel::probability(const Eigen::VectorXd& x) const {
  if (x.size() != weights.size())
    throw Error(ErrorCode::DimensionMismatch, "feature dimension mismatch");
  return sigmoid(weights.dot(x) + bias);
}

double sigmoid_loss_grad(const LabeledSet& data, const Eigen::VectorXd& weights, double bias,
                         double class_weight_non_emotional, Eigen::VectorXd* grad_w,
                         double* grad_b) {
  const auto n = data.features.rows();
  double loss = 0.0;
  double weight_sum = 0.0;
  if (grad_w) grad_w->setZero(weights.size());
  if (grad_b) *grad_b = 0.0;

  for (Eigen::Index i = 0; i < n; ++i) {
    const double target =
        data.labels[static_cast<std::size_t>(i)] == Label::emotional ? 1.0 : 0.0;
    const double w =
        target == 0.0 ? class_weight_non_emotional : 1.0;
    const double z = weights.dot(data.features.row(i).transpose()) + bias;
    // log(1 + exp(z)) - t z, written in the overflow-safe form.
    const double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    loss += w * (softplus - target * z);
    weight_sum += w;
    const double err = sigmoid(z) - target;
    if (grad_w) grad_w->noalias() += w * err * data.features.row(i).transpose();
    if (grad_b) *grad_b += w * err;
  }

  loss /= weight_sum;
  if (grad_w) *grad_w /= weight_sum;
  if (grad_b) *grad_b /= weight_sum;
  return loss;
}

SigmoidModel train_sigmoid(const LabeledSet& data, const SigmoidConfig& cfg) {
  data.validate();
  bool pos = false, neg = false;
  for (Label l : data.labels) (l == Label::emotional ? pos : neg) = true;
  if (!pos || !neg)
    throw Error(ErrorCode::BothClassesRequired, "training data must contain both classes");

  const auto d = data.features.cols();
  Rng rng(cfg.seed);
  SigmoidModel model;
  model.weights.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) model.weights(j) = rng.uniform(-0.01, 0.01);
  model.bias = rng.uniform(-0.01, 0.01);

  Eigen::VectorXd grad_w(d);
  double grad_b = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double loss = sigmoid_loss_grad(data, model.weights, model.bias,
                                    cfg.class_weight_non_emotional, &grad_w, &grad_b);
    if (!std::isfinite(loss))
      throw Error(ErrorCode::DivergedLoss, "non-finite loss at epoch " + std::to_string(epoch));
    model.weights.noalias() -= cfg.learning_rate * grad_w;
    model.bias -= cfg.learning_rate * grad_b;
  }
  return model;
}

Label predict(const SigmoidModel& model, const Eigen::VectorXd& x) {
  return model.probability(x) >= 0.5 ? Label::emotional : Label::non_emotional;
}

}  // namespace ispear::ml
