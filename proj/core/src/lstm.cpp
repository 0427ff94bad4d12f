#include "volcast/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "volcast/errors.hpp"
#include "volcast/rng.hpp"

namespace volcast::lstm {

namespace {

Eigen::VectorXd sigmoid(const Eigen::VectorXd& z) {
    return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

void check_weight_shapes(const LstmWeights& w) {
    const auto cols = static_cast<Eigen::Index>(w.input_dim + w.hidden);
    for (const auto* m : {&w.w_forget, &w.w_input, &w.w_candidate, &w.w_output}) {
        if (m->rows() != w.hidden || m->cols() != cols) {
            throw Error::data("ShapeMismatch", "lstm weights: gate matrix shape inconsistent with config");
        }
    }
    for (const auto* b : {&w.b_forget, &w.b_input, &w.b_candidate, &w.b_output}) {
        if (b->size() != w.hidden) {
            throw Error::data("ShapeMismatch", "lstm weights: gate bias shape inconsistent with config");
        }
    }
    if (w.dense_w.size() != w.hidden) {
        throw Error::data("ShapeMismatch", "lstm weights: dense head shape inconsistent with config");
    }
}

LstmGradients zero_gradients(const LstmWeights& w) {
    LstmGradients g;
    const auto cols = static_cast<Eigen::Index>(w.input_dim + w.hidden);
    g.w_forget = Eigen::MatrixXd::Zero(w.hidden, cols);
    g.w_input = Eigen::MatrixXd::Zero(w.hidden, cols);
    g.w_candidate = Eigen::MatrixXd::Zero(w.hidden, cols);
    g.w_output = Eigen::MatrixXd::Zero(w.hidden, cols);
    g.b_forget = Eigen::VectorXd::Zero(w.hidden);
    g.b_input = Eigen::VectorXd::Zero(w.hidden);
    g.b_candidate = Eigen::VectorXd::Zero(w.hidden);
    g.b_output = Eigen::VectorXd::Zero(w.hidden);
    g.dense_w = Eigen::VectorXd::Zero(w.hidden);
    g.dense_b = 0.0;
    return g;
}

void accumulate(LstmGradients& into, const LstmGradients& from) {
    into.w_forget += from.w_forget;
    into.w_input += from.w_input;
    into.w_candidate += from.w_candidate;
    into.w_output += from.w_output;
    into.b_forget += from.b_forget;
    into.b_input += from.b_input;
    into.b_candidate += from.b_candidate;
    into.b_output += from.b_output;
    into.dense_w += from.dense_w;
    into.dense_b += from.dense_b;
}

void scale(LstmGradients& g, double factor) {
    g.w_forget *= factor;
    g.w_input *= factor;
    g.w_candidate *= factor;
    g.w_output *= factor;
    g.b_forget *= factor;
    g.b_input *= factor;
    g.b_candidate *= factor;
    g.b_output *= factor;
    g.dense_w *= factor;
    g.dense_b *= factor;
}

double squared_norm(const LstmGradients& g) {
    return g.w_forget.squaredNorm() + g.w_input.squaredNorm() + g.w_candidate.squaredNorm() +
           g.w_output.squaredNorm() + g.b_forget.squaredNorm() + g.b_input.squaredNorm() +
           g.b_candidate.squaredNorm() + g.b_output.squaredNorm() + g.dense_w.squaredNorm() +
           g.dense_b * g.dense_b;
}

}  // namespace

void validate(const LstmConfig& cfg) {
    if (cfg.hidden < 1 || (cfg.input_dim != 1 && cfg.input_dim != 2) || cfg.dropout < 0.0 || cfg.dropout >= 1.0 ||
        cfg.lookback < 1 || !(cfg.lr > 0.0) || cfg.epochs < 0 || cfg.batch_size < 1) {
        throw Error::config("InvalidLstmConfig",
                            "lstm config: hidden >= 1, input_dim in {1,2}, dropout in [0,1), lookback >= 1");
    }
}

Dataset build_features(const VolatilitySeries& vol, const SentimentSeries* sent, const FeatureSpec& spec,
                       int lookback) {
    if (spec.shift_sentiment && !spec.use_sentiment) {
        throw Error::config("InvalidFeatureSpec", "shift_sentiment requires use_sentiment");
    }
    if (lookback < 1) {
        throw Error::config("InvalidFeatureSpec", "lookback must be >= 1");
    }
    if (spec.use_sentiment) {
        if (sent == nullptr) {
            throw Error::data("UnalignedCalendars", "sentiment features requested but no sentiment series given");
        }
        if (sent->dates != vol.dates) {
            throw Error::data("UnalignedCalendars", "volatility and sentiment calendars differ; align them first");
        }
    }
    const auto n = vol.size();
    if (n < static_cast<std::size_t>(lookback) + 1) {
        throw Error::data("SeriesTooShort", "need at least lookback+1 observations to build features");
    }

    Dataset ds;
    ds.input_dim = spec.use_sentiment ? 2 : 1;
    ds.lookback = lookback;
    for (std::size_t j = static_cast<std::size_t>(lookback); j < n; ++j) {
        Eigen::MatrixXd window(lookback, ds.input_dim);
        for (int k = 0; k < lookback; ++k) {
            const std::size_t u = j - static_cast<std::size_t>(lookback) + static_cast<std::size_t>(k);
            window(k, 0) = vol.values[u];
            if (spec.use_sentiment) {
                window(k, 1) = spec.shift_sentiment ? sent->scores[u + 1] : sent->scores[u];
            }
        }
        ds.windows.push_back(std::move(window));
        ds.targets.push_back(vol.values[j]);
        ds.dates.push_back(vol.dates[j]);
    }
    return ds;
}

CellState cell_forward(const LstmWeights& w, const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                       const Eigen::VectorXd& c_prev) {
    check_weight_shapes(w);
    if (x.size() != w.input_dim || h_prev.size() != w.hidden || c_prev.size() != w.hidden) {
        throw Error::data("ShapeMismatch", "cell_forward: input or state dimensions do not match weights");
    }
    Eigen::VectorXd z(w.input_dim + w.hidden);
    z << x, h_prev;

    CellState s;
    s.f = sigmoid(w.w_forget * z + w.b_forget);
    s.i = sigmoid(w.w_input * z + w.b_input);
    s.g = (w.w_candidate * z + w.b_candidate).array().tanh();
    s.o = sigmoid(w.w_output * z + w.b_output);
    s.c = s.f.cwiseProduct(c_prev) + s.i.cwiseProduct(s.g);
    s.h = s.o.cwiseProduct(s.c.array().tanh().matrix());
    return s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> cell_step(const LstmWeights& w, const Eigen::VectorXd& x,
                                                      const Eigen::VectorXd& h_prev,
                                                      const Eigen::VectorXd& c_prev) {
    auto s = cell_forward(w, x, h_prev, c_prev);
    return {std::move(s.h), std::move(s.c)};
}

double sequence_loss_and_gradients(const LstmWeights& w, const Eigen::MatrixXd& window, double target,
                                   const Eigen::VectorXd* dropout_mask, LstmGradients* grads) {
    check_weight_shapes(w);
    if (window.cols() != w.input_dim || window.rows() < 1) {
        throw Error::data("ShapeMismatch", "lstm sequence: window shape does not match weights");
    }
    const auto steps = static_cast<int>(window.rows());

    std::vector<CellState> states;
    states.reserve(static_cast<std::size_t>(steps));
    Eigen::VectorXd h = Eigen::VectorXd::Zero(w.hidden);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(w.hidden);
    for (int t = 0; t < steps; ++t) {
        states.push_back(cell_forward(w, window.row(t).transpose(), h, c));
        h = states.back().h;
        c = states.back().c;
    }

    Eigen::VectorXd h_final = h;
    if (dropout_mask) {
        if (dropout_mask->size() != w.hidden) {
            throw Error::data("ShapeMismatch", "lstm sequence: dropout mask size mismatch");
        }
        h_final = h_final.cwiseProduct(*dropout_mask);
    }
    const double prediction = w.dense_w.dot(h_final) + w.dense_b;
    const double err = prediction - target;
    const double loss = err * err;
    if (!grads) return loss;

    *grads = zero_gradients(w);
    const double dpred = 2.0 * err;
    grads->dense_w = dpred * h_final;
    grads->dense_b = dpred;

    Eigen::VectorXd dh = dpred * w.dense_w;
    if (dropout_mask) dh = dh.cwiseProduct(*dropout_mask);
    Eigen::VectorXd dc = Eigen::VectorXd::Zero(w.hidden);

    for (int t = steps - 1; t >= 0; --t) {
        const CellState& s = states[static_cast<std::size_t>(t)];
        const Eigen::VectorXd c_prev =
            t == 0 ? Eigen::VectorXd::Zero(w.hidden) : states[static_cast<std::size_t>(t - 1)].c;
        const Eigen::VectorXd h_prev =
            t == 0 ? Eigen::VectorXd::Zero(w.hidden) : states[static_cast<std::size_t>(t - 1)].h;

        const Eigen::VectorXd tc = s.c.array().tanh();
        const Eigen::VectorXd d_o = dh.cwiseProduct(tc);
        dc += dh.cwiseProduct(s.o).cwiseProduct((1.0 - tc.array().square()).matrix());

        const Eigen::VectorXd d_f = dc.cwiseProduct(c_prev);
        const Eigen::VectorXd d_i = dc.cwiseProduct(s.g);
        const Eigen::VectorXd d_g = dc.cwiseProduct(s.i);

        const Eigen::VectorXd dpre_f = d_f.cwiseProduct(s.f).cwiseProduct((1.0 - s.f.array()).matrix());
        const Eigen::VectorXd dpre_i = d_i.cwiseProduct(s.i).cwiseProduct((1.0 - s.i.array()).matrix());
        const Eigen::VectorXd dpre_g = d_g.cwiseProduct((1.0 - s.g.array().square()).matrix());
        const Eigen::VectorXd dpre_o = d_o.cwiseProduct(s.o).cwiseProduct((1.0 - s.o.array()).matrix());

        Eigen::VectorXd z(w.input_dim + w.hidden);
        z << window.row(t).transpose(), h_prev;

        grads->w_forget += dpre_f * z.transpose();
        grads->w_input += dpre_i * z.transpose();
        grads->w_candidate += dpre_g * z.transpose();
        grads->w_output += dpre_o * z.transpose();
        grads->b_forget += dpre_f;
        grads->b_input += dpre_i;
        grads->b_candidate += dpre_g;
        grads->b_output += dpre_o;

        const Eigen::VectorXd dz = w.w_forget.transpose() * dpre_f + w.w_input.transpose() * dpre_i +
                                   w.w_candidate.transpose() * dpre_g + w.w_output.transpose() * dpre_o;
        dh = dz.tail(w.hidden);
        dc = dc.cwiseProduct(s.f);
    }
    return loss;
}

TrainResult train(const Dataset& dataset, const LstmConfig& cfg) {
    validate(cfg);
    if (dataset.size() == 0) {
        throw Error::data("EmptyDataset", "lstm train: dataset is empty");
    }
    if (dataset.input_dim != cfg.input_dim) {
        throw Error::data("ShapeMismatch", "lstm train: dataset input_dim does not match config");
    }

    Rng rng(cfg.seed);
    TrainResult result;
    LstmWeights& w = result.weights;
    w.hidden = cfg.hidden;
    w.input_dim = cfg.input_dim;
    const auto cols = cfg.input_dim + cfg.hidden;
    const double r = 1.0 / std::sqrt(static_cast<double>(cols));
    auto init_matrix = [&](Eigen::MatrixXd& m) {
        m.resize(cfg.hidden, cols);
        for (int i = 0; i < cfg.hidden; ++i) {
            for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-r, r);
        }
    };
    init_matrix(w.w_forget);
    init_matrix(w.w_input);
    init_matrix(w.w_candidate);
    init_matrix(w.w_output);
    // Forget bias starts open so early training can carry state.
    w.b_forget = Eigen::VectorXd::Constant(cfg.hidden, 1.0);
    w.b_input = Eigen::VectorXd::Zero(cfg.hidden);
    w.b_candidate = Eigen::VectorXd::Zero(cfg.hidden);
    w.b_output = Eigen::VectorXd::Zero(cfg.hidden);
    const double dense_r = 1.0 / std::sqrt(static_cast<double>(cfg.hidden));
    w.dense_w.resize(cfg.hidden);
    for (int i = 0; i < cfg.hidden; ++i) w.dense_w(i) = rng.uniform(-dense_r, dense_r);
    w.dense_b = 0.0;

    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const double keep = 1.0 - cfg.dropout;
    Eigen::VectorXd mask(cfg.hidden);
    LstmGradients batch_grads, sample_grads;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
            const auto end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            batch_grads = zero_gradients(w);
            for (std::size_t idx = start; idx < end; ++idx) {
                const std::size_t s = order[idx];
                const Eigen::VectorXd* mask_ptr = nullptr;
                if (cfg.dropout > 0.0) {
                    for (int i = 0; i < cfg.hidden; ++i) {
                        mask(i) = rng.uniform() < cfg.dropout ? 0.0 : 1.0 / keep;
                    }
                    mask_ptr = &mask;
                }
                loss_sum += sequence_loss_and_gradients(w, dataset.windows[s], dataset.targets[s], mask_ptr,
                                                        &sample_grads);
                accumulate(batch_grads, sample_grads);
            }
            scale(batch_grads, 1.0 / static_cast<double>(end - start));
            const double norm = std::sqrt(squared_norm(batch_grads));
            if (norm > 1.0) scale(batch_grads, 1.0 / norm);

            w.w_forget -= cfg.lr * batch_grads.w_forget;
            w.w_input -= cfg.lr * batch_grads.w_input;
            w.w_candidate -= cfg.lr * batch_grads.w_candidate;
            w.w_output -= cfg.lr * batch_grads.w_output;
            w.b_forget -= cfg.lr * batch_grads.b_forget;
            w.b_input -= cfg.lr * batch_grads.b_input;
            w.b_candidate -= cfg.lr * batch_grads.b_candidate;
            w.b_output -= cfg.lr * batch_grads.b_output;
            w.dense_w -= cfg.lr * batch_grads.dense_w;
            w.dense_b -= cfg.lr * batch_grads.dense_b;
        }
        result.epoch_loss.push_back(loss_sum / static_cast<double>(dataset.size()));
    }
    return result;
}

std::vector<double> forecast(const LstmWeights& w, const Dataset& dataset) {
    check_weight_shapes(w);
    if (dataset.input_dim != w.input_dim) {
        throw Error::data("ShapeMismatch", "lstm forecast: dataset input_dim does not match weights");
    }
    std::vector<double> out;
    out.reserve(dataset.size());
    for (const auto& window : dataset.windows) {
        Eigen::VectorXd h = Eigen::VectorXd::Zero(w.hidden);
        Eigen::VectorXd c = Eigen::VectorXd::Zero(w.hidden);
        for (int t = 0; t < window.rows(); ++t) {
            auto [nh, nc] = cell_step(w, window.row(t).transpose(), h, c);
            h = std::move(nh);
            c = std::move(nc);
        }
        out.push_back(std::max(0.0, w.dense_w.dot(h) + w.dense_b));
    }
    return out;
}

MinMaxScaler MinMaxScaler::fit(std::span<const double> values) {
    if (values.empty()) {
        throw Error::data("EmptyDataset", "scaler fit: no values");
    }
    MinMaxScaler s;
    s.lo = *std::min_element(values.begin(), values.end());
    s.hi = *std::max_element(values.begin(), values.end());
    return s;
}

double MinMaxScaler::transform(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.0; }

double MinMaxScaler::inverse(double v) const { return hi > lo ? lo + v * (hi - lo) : lo; }

std::string to_text(const LstmWeights& w) {
    std::ostringstream out;
    out << "hidden " << w.hidden << " input_dim " << w.input_dim << "\n";
    char buf[32];
    auto dump_matrix = [&](const char* name, const Eigen::MatrixXd& m) {
        out << name << " " << m.rows() << " " << m.cols() << "\n";
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                std::snprintf(buf, sizeof(buf), "%.12g", m(i, j));
                out << buf << (j + 1 == m.cols() ? "" : " ");
            }
            out << "\n";
        }
    };
    auto dump_vector = [&](const char* name, const Eigen::VectorXd& v) {
        out << name << " " << v.size() << "\n";
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.12g", v(i));
            out << buf << (i + 1 == v.size() ? "" : " ");
        }
        out << "\n";
    };
    dump_matrix("w_forget", w.w_forget);
    dump_matrix("w_input", w.w_input);
    dump_matrix("w_candidate", w.w_candidate);
    dump_matrix("w_output", w.w_output);
    dump_vector("b_forget", w.b_forget);
    dump_vector("b_input", w.b_input);
    dump_vector("b_candidate", w.b_candidate);
    dump_vector("b_output", w.b_output);
    dump_vector("dense_w", w.dense_w);
    std::snprintf(buf, sizeof(buf), "%.12g", w.dense_b);
    out << "dense_b " << buf << "\n";
    return out.str();
}

}  // namespace volcast::lstm
