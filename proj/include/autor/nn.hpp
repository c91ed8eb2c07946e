#ifndef AUTOR_NN_HPP
#define AUTOR_NN_HPP

// Minimal neural-network substrate: dense / conv1d / avgpool1d / softmax
// layers with hand-written backprop, SGD and RMSProp, a finite-difference
// gradient checker, and JSON checkpointing. Everything is double precision
// and deterministic given an explicit Rng.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "autor/errors.hpp"
#include "autor/rng.hpp"

namespace autor::nn {

// ---------------------------------------------------------------- Array

struct Array {
    std::vector<std::size_t> shape;  // 1-D or 2-D, row-major
    std::vector<double> data;

    Array() = default;
    explicit Array(std::size_t n) : shape{n}, data(n, 0.0) {}
    static Array vec(std::size_t n, double fill = 0.0) {
        Array a(n);
        std::fill(a.data.begin(), a.data.end(), fill);
        return a;
    }
    static Array mat(std::size_t rows, std::size_t cols, double fill = 0.0) {
        Array a;
        a.shape = {rows, cols};
        a.data.assign(rows * cols, fill);
        return a;
    }

    std::size_t size() const { return data.size(); }
    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }
    double& at2(std::size_t r, std::size_t c) { return data[r * shape[1] + c]; }
    double at2(std::size_t r, std::size_t c) const { return data[r * shape[1] + c]; }

    bool finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline std::size_t shape_product(const std::vector<std::size_t>& s) {
    return std::accumulate(s.begin(), s.end(), std::size_t{1}, std::multiplies<>());
}

// ---------------------------------------------------------------- specs

enum class LayerKind { Dense, Conv1d, AvgPool1d, Softmax };
enum class Activation { Tanh, Relu, Linear };

struct LayerSpec {
    LayerKind kind = LayerKind::Dense;
    Activation activation = Activation::Linear;
    // dense
    std::size_t in_size = 0;
    std::size_t out_size = 0;
    // conv1d: weights laid out (filter_count, kernel_size * in_channels)
    std::size_t kernel_size = 1;
    std::size_t in_channels = 1;
    std::size_t filter_count = 1;
    std::size_t stride = 1;

    static LayerSpec dense(std::size_t in, std::size_t out, Activation act) {
        LayerSpec s;
        s.kind = LayerKind::Dense;
        s.in_size = in;
        s.out_size = out;
        s.activation = act;
        return s;
    }
    static LayerSpec conv1d(std::size_t in_ch, std::size_t filters, std::size_t kernel,
                            Activation act, std::size_t stride = 1) {
        LayerSpec s;
        s.kind = LayerKind::Conv1d;
        s.in_channels = in_ch;
        s.filter_count = filters;
        s.kernel_size = kernel;
        s.stride = stride;
        s.activation = act;
        return s;
    }
    static LayerSpec avgpool1d() {
        LayerSpec s;
        s.kind = LayerKind::AvgPool1d;
        return s;
    }
    static LayerSpec softmax() {
        LayerSpec s;
        s.kind = LayerKind::Softmax;
        return s;
    }
};

struct LayerParams {
    Array weights;
    Array biases;
};

struct NetworkParams {
    std::vector<LayerParams> layers;
};

inline void validate_spec(const LayerSpec& s, std::size_t index) {
    auto fail = [&](const std::string& msg) {
        throw ConfigError("layer " + std::to_string(index) + ": " + msg);
    };
    switch (s.kind) {
        case LayerKind::Dense:
            if (s.in_size == 0 || s.out_size == 0) fail("dense layer needs in_size/out_size");
            break;
        case LayerKind::Conv1d:
            if (s.kernel_size < 1) fail("kernel_size must be >= 1");
            if (s.stride < 1) fail("stride must be >= 1");
            if (s.filter_count < 1 || s.in_channels < 1) fail("conv1d needs channels/filters");
            break;
        default:
            break;
    }
}

// Glorot-uniform initialization, deterministic given rng.
inline NetworkParams init_params(const std::vector<LayerSpec>& specs, Rng& rng) {
    NetworkParams p;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const LayerSpec& s = specs[i];
        validate_spec(s, i);
        LayerParams lp;
        if (s.kind == LayerKind::Dense) {
            double lim = std::sqrt(6.0 / double(s.in_size + s.out_size));
            lp.weights = Array::mat(s.out_size, s.in_size);
            for (double& w : lp.weights.data) w = rng.uniform(-lim, lim);
            lp.biases = Array(s.out_size);
        } else if (s.kind == LayerKind::Conv1d) {
            std::size_t fan_in = s.kernel_size * s.in_channels;
            double lim = std::sqrt(6.0 / double(fan_in + s.filter_count));
            lp.weights = Array::mat(s.filter_count, s.kernel_size * s.in_channels);
            for (double& w : lp.weights.data) w = rng.uniform(-lim, lim);
            lp.biases = Array(s.filter_count);
        }
        p.layers.push_back(std::move(lp));
    }
    return p;
}

// ---------------------------------------------------------------- forward

struct ForwardCache {
    std::vector<Array> inputs;      // input to each layer
    std::vector<Array> preact;      // pre-activation (dense/conv)
    std::vector<Array> outputs;     // post-activation
    bool valid = false;
};

inline double apply_act(Activation a, double z) {
    switch (a) {
        case Activation::Tanh: return std::tanh(z);
        case Activation::Relu: return z > 0.0 ? z : 0.0;
        default: return z;
    }
}

inline double act_deriv(Activation a, double z, double y) {
    switch (a) {
        case Activation::Tanh: return 1.0 - y * y;
        case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
        default: return 1.0;
    }
}

// Interpret an array as a (length, channels) sequence.
inline void as_sequence(const Array& x, std::size_t channels, std::size_t& len) {
    if (x.size() % channels != 0)
        throw ConfigError("sequence size " + std::to_string(x.size()) +
                          " not divisible by channel count " + std::to_string(channels));
    len = x.size() / channels;
}

inline Array softmax_of(const Array& x) {
    Array out(x.size());
    double mx = *std::max_element(x.data.begin(), x.data.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = std::exp(x[i] - mx);
        sum += out[i];
    }
    for (double& v : out.data) v /= sum;
    return out;
}

inline Array forward(const NetworkParams& params, const std::vector<LayerSpec>& specs,
                     const Array& x, ForwardCache* cache = nullptr) {
    if (params.layers.size() != specs.size())
        throw ConfigError("params/specs layer count mismatch");
    Array cur = x;
    if (cache) {
        cache->inputs.clear();
        cache->preact.clear();
        cache->outputs.clear();
    }
    for (std::size_t li = 0; li < specs.size(); ++li) {
        const LayerSpec& s = specs[li];
        const LayerParams& lp = params.layers[li];
        Array z, y;
        switch (s.kind) {
            case LayerKind::Dense: {
                if (cur.size() != s.in_size)
                    throw ConfigError("layer " + std::to_string(li) + ": dense expects " +
                                      std::to_string(s.in_size) + " inputs, got " +
                                      std::to_string(cur.size()));
                z = Array(s.out_size);
                for (std::size_t o = 0; o < s.out_size; ++o) {
                    double acc = lp.biases[o];
                    const double* wrow = &lp.weights.data[o * s.in_size];
                    for (std::size_t i = 0; i < s.in_size; ++i) acc += wrow[i] * cur[i];
                    z[o] = acc;
                }
                y = z;
                for (double& v : y.data) v = apply_act(s.activation, v);
                break;
            }
            case LayerKind::Conv1d: {
                std::size_t len;
                as_sequence(cur, s.in_channels, len);
                if (len < s.kernel_size)
                    throw ConfigError("layer " + std::to_string(li) + ": input length " +
                                      std::to_string(len) + " shorter than kernel " +
                                      std::to_string(s.kernel_size));
                std::size_t out_len = (len - s.kernel_size) / s.stride + 1;
                z = Array::mat(out_len, s.filter_count);
                for (std::size_t t = 0; t < out_len; ++t) {
                    for (std::size_t f = 0; f < s.filter_count; ++f) {
                        double acc = lp.biases[f];
                        const double* w = &lp.weights.data[f * s.kernel_size * s.in_channels];
                        for (std::size_t k = 0; k < s.kernel_size; ++k) {
                            const double* xr = &cur.data[(t * s.stride + k) * s.in_channels];
                            for (std::size_t c = 0; c < s.in_channels; ++c)
                                acc += w[k * s.in_channels + c] * xr[c];
                        }
                        z.at2(t, f) = acc;
                    }
                }
                y = z;
                for (double& v : y.data) v = apply_act(s.activation, v);
                break;
            }
            case LayerKind::AvgPool1d: {
                // full-sequence mean per channel
                std::size_t channels = cur.shape.size() == 2 ? cur.shape[1] : 1;
                std::size_t len;
                as_sequence(cur, channels, len);
                z = Array(channels);
                for (std::size_t t = 0; t < len; ++t)
                    for (std::size_t c = 0; c < channels; ++c) z[c] += cur.data[t * channels + c];
                for (double& v : z.data) v /= double(len);
                y = z;
                break;
            }
            case LayerKind::Softmax: {
                z = cur;
                y = softmax_of(cur);
                break;
            }
        }
        if (!y.finite())
            throw TrainingError("non-finite activation at layer " + std::to_string(li));
        if (cache) {
            cache->inputs.push_back(cur);
            cache->preact.push_back(z);
            cache->outputs.push_back(y);
        }
        cur = std::move(y);
    }
    if (cache) cache->valid = true;
    return cur;
}

// --------------------------------------------------------------- backward

struct BackwardResult {
    NetworkParams grads;
    Array input_grad;
};

inline BackwardResult backward(const NetworkParams& params, const std::vector<LayerSpec>& specs,
                               const ForwardCache& cache, const Array& loss_grad) {
    if (!cache.valid) throw StateError("backward called before forward");
    if (cache.outputs.size() != specs.size()) throw StateError("cache does not match specs");
    BackwardResult res;
    res.grads.layers.resize(specs.size());
    Array g = loss_grad;  // dL/d(layer output)
    for (std::size_t li = specs.size(); li-- > 0;) {
        const LayerSpec& s = specs[li];
        const LayerParams& lp = params.layers[li];
        const Array& x = cache.inputs[li];
        const Array& z = cache.preact[li];
        const Array& y = cache.outputs[li];
        LayerParams& gl = res.grads.layers[li];
        Array gx;
        switch (s.kind) {
            case LayerKind::Dense: {
                Array gz(s.out_size);
                for (std::size_t o = 0; o < s.out_size; ++o)
                    gz[o] = g[o] * act_deriv(s.activation, z[o], y[o]);
                gl.weights = Array::mat(s.out_size, s.in_size);
                gl.biases = Array(s.out_size);
                gx = Array(s.in_size);
                gx.shape = x.shape;
                for (std::size_t o = 0; o < s.out_size; ++o) {
                    gl.biases[o] = gz[o];
                    const double* wrow = &lp.weights.data[o * s.in_size];
                    double* grow = &gl.weights.data[o * s.in_size];
                    for (std::size_t i = 0; i < s.in_size; ++i) {
                        grow[i] = gz[o] * x[i];
                        gx[i] += gz[o] * wrow[i];
                    }
                }
                break;
            }
            case LayerKind::Conv1d: {
                std::size_t len;
                as_sequence(x, s.in_channels, len);
                std::size_t out_len = z.shape[0];
                gl.weights = Array::mat(s.filter_count, s.kernel_size * s.in_channels);
                gl.biases = Array(s.filter_count);
                gx = Array::mat(len, s.in_channels);
                gx.shape = x.shape;
                for (std::size_t t = 0; t < out_len; ++t) {
                    for (std::size_t f = 0; f < s.filter_count; ++f) {
                        double gz = g.data[t * s.filter_count + f] *
                                    act_deriv(s.activation, z.at2(t, f), y.at2(t, f));
                        if (gz == 0.0) continue;
                        gl.biases[f] += gz;
                        const double* w = &lp.weights.data[f * s.kernel_size * s.in_channels];
                        double* gw = &gl.weights.data[f * s.kernel_size * s.in_channels];
                        for (std::size_t k = 0; k < s.kernel_size; ++k) {
                            std::size_t xi = (t * s.stride + k) * s.in_channels;
                            for (std::size_t c = 0; c < s.in_channels; ++c) {
                                gw[k * s.in_channels + c] += gz * x.data[xi + c];
                                gx.data[xi + c] += gz * w[k * s.in_channels + c];
                            }
                        }
                    }
                }
                break;
            }
            case LayerKind::AvgPool1d: {
                std::size_t channels = x.shape.size() == 2 ? x.shape[1] : 1;
                std::size_t len;
                as_sequence(x, channels, len);
                gx = Array::mat(len, channels);
                gx.shape = x.shape;
                for (std::size_t t = 0; t < len; ++t)
                    for (std::size_t c = 0; c < channels; ++c)
                        gx.data[t * channels + c] = g[c] / double(len);
                break;
            }
            case LayerKind::Softmax: {
                gx = Array(x.size());
                gx.shape = x.shape;
                double dot = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i) dot += g[i] * y[i];
                for (std::size_t i = 0; i < y.size(); ++i) gx[i] = y[i] * (g[i] - dot);
                break;
            }
        }
        if (!gx.finite())
            throw TrainingError("non-finite gradient at layer " + std::to_string(li));
        g = std::move(gx);
    }
    res.input_grad = std::move(g);
    return res;
}

// ----------------------------------------------------------------- losses

constexpr double kProbClamp = 1e-12;

inline bool is_one_hot(const Array& label) {
    std::size_t ones = 0;
    for (double v : label.data) {
        if (v == 1.0)
            ++ones;
        else if (v != 0.0)
            return false;
    }
    return ones == 1;
}

inline double cross_entropy(const Array& probs, const Array& one_hot_label) {
    if (!is_one_hot(one_hot_label)) throw InputError("label is not one-hot");
    if (probs.size() != one_hot_label.size()) throw InputError("probs/label size mismatch");
    double sum = 0.0;
    for (double v : probs.data) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("probabilities do not sum to 1");
    double loss = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i)
        if (one_hot_label[i] == 1.0)
            loss -= std::log(std::clamp(probs[i], kProbClamp, 1.0));
    return loss;
}

// dL/dprobs for the clamped cross-entropy above
inline Array cross_entropy_grad(const Array& probs, const Array& one_hot_label) {
    Array g(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (one_hot_label[i] == 1.0) {
            double p = std::clamp(probs[i], kProbClamp, 1.0);
            g[i] = (probs[i] > kProbClamp && probs[i] < 1.0) ? -1.0 / p : 0.0;
            if (probs[i] >= 1.0) g[i] = -1.0;  // d(-log p)/dp at p=1
        }
    }
    return g;
}

// ------------------------------------------------------------- optimizers

struct OptimizerState {
    enum class Kind { Sgd, Rmsprop } kind = Kind::Sgd;
    double learning_rate = 0.01;
    double decay = 0.9;     // rmsprop
    double epsilon = 1e-8;  // rmsprop
    std::vector<LayerParams> accum;  // rmsprop mean-square accumulators

    static OptimizerState sgd(double lr) {
        OptimizerState s;
        s.kind = Kind::Sgd;
        s.learning_rate = lr;
        return s;
    }
    static OptimizerState rmsprop(double lr, double decay = 0.9, double eps = 1e-8) {
        OptimizerState s;
        s.kind = Kind::Rmsprop;
        s.learning_rate = lr;
        s.decay = decay;
        s.epsilon = eps;
        return s;
    }
};

inline void check_grads_finite(const NetworkParams& grads) {
    for (std::size_t li = 0; li < grads.layers.size(); ++li)
        if (!grads.layers[li].weights.finite() || !grads.layers[li].biases.finite())
            throw TrainingError("non-finite gradient in layer " + std::to_string(li));
}

inline void sgd_step(NetworkParams& params, const NetworkParams& grads, double lr) {
    check_grads_finite(grads);
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        auto& p = params.layers[li];
        const auto& g = grads.layers[li];
        if (p.weights.size() != g.weights.size() || p.biases.size() != g.biases.size())
            throw InputError("gradient shape mismatch in layer " + std::to_string(li));
        for (std::size_t i = 0; i < p.weights.size(); ++i) p.weights[i] -= lr * g.weights[i];
        for (std::size_t i = 0; i < p.biases.size(); ++i) p.biases[i] -= lr * g.biases[i];
    }
}

inline void rmsprop_step(NetworkParams& params, const NetworkParams& grads, OptimizerState& st) {
    check_grads_finite(grads);
    if (st.accum.empty()) {
        st.accum.resize(params.layers.size());
        for (std::size_t li = 0; li < params.layers.size(); ++li) {
            st.accum[li].weights = Array(params.layers[li].weights.size());
            st.accum[li].weights.shape = params.layers[li].weights.shape;
            st.accum[li].biases = Array(params.layers[li].biases.size());
        }
    }
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        auto& p = params.layers[li];
        const auto& g = grads.layers[li];
        auto& a = st.accum[li];
        for (std::size_t i = 0; i < p.weights.size(); ++i) {
            a.weights[i] = st.decay * a.weights[i] + (1.0 - st.decay) * g.weights[i] * g.weights[i];
            p.weights[i] -= st.learning_rate * g.weights[i] /
                            (std::sqrt(a.weights[i]) + st.epsilon);
        }
        for (std::size_t i = 0; i < p.biases.size(); ++i) {
            a.biases[i] = st.decay * a.biases[i] + (1.0 - st.decay) * g.biases[i] * g.biases[i];
            p.biases[i] -= st.learning_rate * g.biases[i] / (std::sqrt(a.biases[i]) + st.epsilon);
        }
    }
}

// ------------------------------------------------------------- grad check

// Loss used by the checker: cross-entropy when the network ends in softmax,
// half squared error against `label` otherwise.
inline double check_loss(const std::vector<LayerSpec>& specs, const NetworkParams& params,
                         const Array& x, const Array& label) {
    Array out = forward(params, specs, x);
    if (!specs.empty() && specs.back().kind == LayerKind::Softmax)
        return cross_entropy(out, label);
    double loss = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double d = out[i] - label[i];
        loss += 0.5 * d * d;
    }
    return loss;
}

struct GradCheckReport {
    std::vector<double> max_rel_err_per_layer;
    double max_rel_err = 0.0;
    bool passed = false;
};

inline GradCheckReport grad_check(const std::vector<LayerSpec>& specs, NetworkParams params,
                                  const Array& x, const Array& label, double tolerance,
                                  double step = 1e-5) {
    ForwardCache cache;
    Array out = forward(params, specs, x, &cache);
    Array lg;
    if (!specs.empty() && specs.back().kind == LayerKind::Softmax) {
        lg = cross_entropy_grad(out, label);
    } else {
        lg = Array(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) lg[i] = out[i] - label[i];
    }
    BackwardResult bp = backward(params, specs, cache, lg);

    GradCheckReport rep;
    for (std::size_t li = 0; li < params.layers.size(); ++li) {
        double layer_max = 0.0;
        auto probe = [&](Array& arr, const Array& analytic) {
            for (std::size_t i = 0; i < arr.size(); ++i) {
                double orig = arr[i];
                arr[i] = orig + step;
                double lp = check_loss(specs, params, x, label);
                arr[i] = orig - step;
                double lm = check_loss(specs, params, x, label);
                arr[i] = orig;
                double fd = (lp - lm) / (2.0 * step);
                double denom = std::max({std::abs(fd), std::abs(analytic[i]), 1e-8});
                layer_max = std::max(layer_max, std::abs(fd - analytic[i]) / denom);
            }
        };
        probe(params.layers[li].weights, bp.grads.layers[li].weights);
        probe(params.layers[li].biases, bp.grads.layers[li].biases);
        rep.max_rel_err_per_layer.push_back(layer_max);
        rep.max_rel_err = std::max(rep.max_rel_err, layer_max);
    }
    rep.passed = rep.max_rel_err < tolerance;
    return rep;
}

// ------------------------------------------------------------ checkpoints

inline std::string kind_name(LayerKind k) {
    switch (k) {
        case LayerKind::Dense: return "dense";
        case LayerKind::Conv1d: return "conv1d";
        case LayerKind::AvgPool1d: return "avgpool1d";
        default: return "softmax";
    }
}
inline LayerKind kind_from(const std::string& s) {
    if (s == "dense") return LayerKind::Dense;
    if (s == "conv1d") return LayerKind::Conv1d;
    if (s == "avgpool1d") return LayerKind::AvgPool1d;
    if (s == "softmax") return LayerKind::Softmax;
    throw ParseError("unknown layer kind: " + s);
}
inline std::string act_name(Activation a) {
    switch (a) {
        case Activation::Tanh: return "tanh";
        case Activation::Relu: return "relu";
        default: return "linear";
    }
}
inline Activation act_from(const std::string& s) {
    if (s == "tanh") return Activation::Tanh;
    if (s == "relu") return Activation::Relu;
    if (s == "linear") return Activation::Linear;
    throw ParseError("unknown activation: " + s);
}

inline nlohmann::json array_to_json(const Array& a) {
    return nlohmann::json{{"shape", a.shape}, {"data", a.data}};
}
inline Array array_from_json(const nlohmann::json& j) {
    Array a;
    a.shape = j.at("shape").get<std::vector<std::size_t>>();
    a.data = j.at("data").get<std::vector<double>>();
    if (a.shape.empty() && a.data.empty()) return a;  // parameterless layer
    if (shape_product(a.shape) != a.data.size())
        throw ParseError("array shape/data mismatch in checkpoint");
    return a;
}

inline nlohmann::json checkpoint_to_json(const std::vector<LayerSpec>& specs,
                                         const NetworkParams& params) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["layer_specs"] = nlohmann::json::array();
    for (const auto& s : specs) {
        j["layer_specs"].push_back({{"kind", kind_name(s.kind)},
                                    {"activation", act_name(s.activation)},
                                    {"in_size", s.in_size},
                                    {"out_size", s.out_size},
                                    {"kernel_size", s.kernel_size},
                                    {"in_channels", s.in_channels},
                                    {"filter_count", s.filter_count},
                                    {"stride", s.stride}});
    }
    j["layers"] = nlohmann::json::array();
    for (const auto& lp : params.layers)
        j["layers"].push_back(
            {{"weights", array_to_json(lp.weights)}, {"biases", array_to_json(lp.biases)}});
    return j;
}

inline void checkpoint_from_json(const nlohmann::json& j, std::vector<LayerSpec>& specs,
                                 NetworkParams& params) {
    if (j.at("format_version").get<int>() != 1) throw ParseError("unsupported checkpoint version");
    specs.clear();
    for (const auto& js : j.at("layer_specs")) {
        LayerSpec s;
        s.kind = kind_from(js.at("kind").get<std::string>());
        s.activation = act_from(js.at("activation").get<std::string>());
        s.in_size = js.at("in_size").get<std::size_t>();
        s.out_size = js.at("out_size").get<std::size_t>();
        s.kernel_size = js.at("kernel_size").get<std::size_t>();
        s.in_channels = js.at("in_channels").get<std::size_t>();
        s.filter_count = js.at("filter_count").get<std::size_t>();
        s.stride = js.at("stride").get<std::size_t>();
        specs.push_back(s);
    }
    params.layers.clear();
    for (const auto& jl : j.at("layers")) {
        LayerParams lp;
        lp.weights = array_from_json(jl.at("weights"));
        lp.biases = array_from_json(jl.at("biases"));
        params.layers.push_back(std::move(lp));
    }
}

inline void save_checkpoint(const std::string& path, const std::vector<LayerSpec>& specs,
                            const NetworkParams& params) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open checkpoint for writing: " + path);
    f << checkpoint_to_json(specs, params).dump(1) << "\n";
}

inline void load_checkpoint(const std::string& path, std::vector<LayerSpec>& specs,
                            NetworkParams& params) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open checkpoint: " + path);
    nlohmann::json j;
    f >> j;
    checkpoint_from_json(j, specs, params);
}

}  // namespace autor::nn

#endif
