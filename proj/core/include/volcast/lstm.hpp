#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "volcast/series.hpp"

namespace volcast::lstm {

struct LstmConfig {
    int hidden = 30;
    int input_dim = 1;     // 1 = volatility only, 2 = volatility + sentiment
    double dropout = 0.2;  // on the last hidden state feeding the dense head
    int lookback = 5;
    double lr = 0.05;
    int epochs = 80;
    int batch_size = 32;
    std::uint64_t seed = 1;
};

void validate(const LstmConfig& cfg);

struct LstmWeights {
    Eigen::MatrixXd w_forget, w_input, w_candidate, w_output;  // hidden x (input_dim + hidden)
    Eigen::VectorXd b_forget, b_input, b_candidate, b_output;
    Eigen::VectorXd dense_w;  // hidden
    double dense_b = 0.0;
    int hidden = 0;
    int input_dim = 0;
};

struct LstmGradients {
    Eigen::MatrixXd w_forget, w_input, w_candidate, w_output;
    Eigen::VectorXd b_forget, b_input, b_candidate, b_output;
    Eigen::VectorXd dense_w;
    double dense_b = 0.0;
};

/// Which inputs accompany the lagged volatility. shift_sentiment pairs the
/// previous step's volatility with the current step's sentiment (the
/// contemporaneous-information probe); it implies use_sentiment.
struct FeatureSpec {
    bool use_sentiment = false;
    bool shift_sentiment = false;
};

struct Dataset {
    std::vector<Eigen::MatrixXd> windows;  // each lookback x input_dim
    std::vector<double> targets;
    std::vector<Date> dates;  // target dates
    int input_dim = 1;
    int lookback = 0;

    std::size_t size() const { return windows.size(); }
};

/// Supervised (window, target) pairs: the target at date t is vol(t); window
/// rows carry vol(u) for u = t-lookback..t-1 plus sentiment at u (unshifted)
/// or u+1 (shifted). Calendars must already be aligned when sentiment is
/// used.
Dataset build_features(const VolatilitySeries& vol, const SentimentSeries* sent, const FeatureSpec& spec,
                       int lookback);

/// All intermediate activations of one cell step (what backprop needs).
struct CellState {
    Eigen::VectorXd f, i, g, o, c, h;
};

CellState cell_forward(const LstmWeights& w, const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                       const Eigen::VectorXd& c_prev);

/// (h, c) after one step.
std::pair<Eigen::VectorXd, Eigen::VectorXd> cell_step(const LstmWeights& w, const Eigen::VectorXd& x,
                                                      const Eigen::VectorXd& h_prev,
                                                      const Eigen::VectorXd& c_prev);

/// Squared-error loss of one window with full backpropagation through time.
/// dropout_mask, when given, multiplies the final hidden state elementwise
/// (entries are 0 or 1/(1-p)); pass nullptr for evaluation-mode behavior.
double sequence_loss_and_gradients(const LstmWeights& w, const Eigen::MatrixXd& window, double target,
                                   const Eigen::VectorXd* dropout_mask, LstmGradients* grads);

struct TrainResult {
    LstmWeights weights;
    std::vector<double> epoch_loss;
};

/// Seeded mini-batch gradient descent with global gradient-norm clipping at
/// 1.0; inverted dropout during training only.
TrainResult train(const Dataset& dataset, const LstmConfig& cfg);

/// One prediction per window, dropout inactive, clamped at >= 0.
std::vector<double> forecast(const LstmWeights& w, const Dataset& dataset);

/// Min-max map to [0,1] fitted on training data only; inverse-applied to
/// forecasts. A constant series maps to 0.
struct MinMaxScaler {
    double lo = 0.0;
    double hi = 1.0;

    static MinMaxScaler fit(std::span<const double> values);
    double transform(double v) const;
    double inverse(double v) const;
};

/// Matrix dump with a shape header.
std::string to_text(const LstmWeights& w);

}  // namespace volcast::lstm
