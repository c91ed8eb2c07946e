#ifndef AUTOR_AMC_HPP
#define AUTOR_AMC_HPP

// Modulation classifier: complex-correntropy lag features followed by a
// small 1D-CNN softmax head. Lag index i in 1..l maps to sample offset
// i-1, so V[1] is the zero-lag entry 1/(sqrt(2*pi)*sigma^2) for any input.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "autor/errors.hpp"
#include "autor/nn.hpp"
#include "autor/rng.hpp"
#include "autor/sigchain.hpp"

namespace autor::amc {

using sig::cplx;
using sig::IQSequence;

struct CorrentropyFeature {
    std::vector<double> values;  // length l
    double kernel_sigma = 1.0;
    std::size_t source_length = 0;  // m
};

inline CorrentropyFeature complex_correntropy(const IQSequence& iq, double sigma, std::size_t l) {
    const std::size_t m = iq.samples.size();
    if (l < 1 || l > m) throw InputError("feature length must satisfy 1 <= l <= m");
    if (sigma <= 0.0) throw InputError("kernel sigma must be positive");
    CorrentropyFeature f;
    f.kernel_sigma = sigma;
    f.source_length = m;
    f.values.resize(l);
    const double norm = 1.0 / (std::sqrt(2.0 * M_PI) * sigma * sigma);
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 1; i <= l; ++i) {
        double acc = 0.0;
        std::size_t terms = m - i + 1;
        for (std::size_t n = 0; n < terms; ++n)
            acc += std::exp(-std::norm(iq.samples[n] - iq.samples[n + i - 1]) * inv2s2);
        f.values[i - 1] = std::abs(acc * norm / double(terms));
    }
    return f;
}

// ------------------------------------------------------------------ model

struct AmcModel {
    std::vector<nn::LayerSpec> specs;
    nn::NetworkParams params;
    std::vector<std::string> class_names;
    std::size_t feature_length = 0;
};

inline AmcModel make_model(std::size_t feature_length, const std::vector<std::string>& classes,
                           Rng& rng) {
    AmcModel m;
    m.class_names = classes;
    m.feature_length = feature_length;
    std::size_t l1_out = feature_length - 8 + 1;
    std::size_t k2 = std::min<std::size_t>(100, l1_out);
    m.specs = {
        nn::LayerSpec::conv1d(1, 16, 8, nn::Activation::Relu),
        nn::LayerSpec::conv1d(16, 8, k2, nn::Activation::Relu),
        nn::LayerSpec::avgpool1d(),
        nn::LayerSpec::dense(8, classes.size(), nn::Activation::Linear),
        nn::LayerSpec::softmax(),
    };
    m.params = nn::init_params(m.specs, rng);
    return m;
}

// max-normalized copy of the raw feature, the CNN input
inline nn::Array prepare_input(const std::vector<double>& feature) {
    nn::Array x(feature.size());
    double mx = 0.0;
    for (double v : feature) mx = std::max(mx, std::abs(v));
    if (mx == 0.0) mx = 1.0;
    for (std::size_t i = 0; i < feature.size(); ++i) x[i] = feature[i] / mx;
    return x;
}

inline std::pair<std::size_t, std::vector<double>> classify(const AmcModel& model,
                                                            const std::vector<double>& feature) {
    if (feature.size() != model.feature_length)
        throw InputError("feature length " + std::to_string(feature.size()) +
                         " does not match model input " + std::to_string(model.feature_length));
    nn::Array out = nn::forward(model.params, model.specs, prepare_input(feature));
    std::size_t best = 0;  // ties broken by lowest class index
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] > out[best]) best = i;
    return {best, out.data};
}

// ---------------------------------------------------------------- dataset

struct AmcDatasetSpec {
    std::vector<sig::Scheme> schemes{sig::Scheme::BPSK, sig::Scheme::QPSK, sig::Scheme::QAM16};
    std::vector<double> snr_db{0, 2, 4, 6, 8, 10};
    std::vector<int> path_counts{1, 2, 4};
    std::size_t messages_per_combo = 50;
    std::size_t message_length = 1024;  // symbols per message, m
    std::size_t feature_length = 150;   // l
    double kernel_sigma = 1.0;
    double max_freq_offset = 0.01;  // cycles/sample, drawn uniformly from [0, this]
    std::uint64_t seed = 0;
};

struct AmcExample {
    std::size_t label = 0;
    double snr_db = 0.0;
    int paths = 1;
    std::vector<double> feature;
};

struct AmcDataset {
    std::vector<std::string> class_names;
    std::vector<AmcExample> examples;
    std::size_t feature_length = 0;
};

inline sig::ChannelConfig random_channel(int paths, double max_freq_offset, Rng& rng) {
    sig::ChannelConfig ch;
    ch.phase = rng.uniform(-M_PI, M_PI);
    ch.freq_offset = rng.uniform(0.0, max_freq_offset);
    ch.taps.clear();
    double total = 0.0;
    std::vector<double> mags(paths);
    for (int d = 0; d < paths; ++d) {
        mags[d] = std::pow(0.4, d);
        total += mags[d] * mags[d];
    }
    double scale = 1.0 / std::sqrt(total);
    for (int d = 0; d < paths; ++d) {
        double phi = d == 0 ? 0.0 : rng.uniform(-M_PI, M_PI);
        ch.taps.push_back({d, std::polar(scale * mags[d], phi)});
    }
    return ch;
}

inline AmcExample synthesize_example(sig::Scheme sch, std::size_t label, double snr_db, int paths,
                                     const AmcDatasetSpec& spec, Rng& rng) {
    const auto& m = sig::scheme(sch);
    std::vector<int> bits(spec.message_length * m.bits_per_symbol);
    for (auto& b : bits) b = int(rng.uniform_int(2));
    IQSequence iq = sig::modulate(bits, m);
    iq = sig::apply_channel(iq, random_channel(paths, spec.max_freq_offset, rng));
    sig::NoiseConfig noise;
    noise.variance = std::pow(10.0, -snr_db / 10.0);
    sig::add_noise(iq, noise, rng);
    AmcExample ex;
    ex.label = label;
    ex.snr_db = snr_db;
    ex.paths = paths;
    ex.feature = complex_correntropy(iq, spec.kernel_sigma, spec.feature_length).values;
    return ex;
}

inline AmcDataset build_dataset(const AmcDatasetSpec& spec, std::uint64_t seed_override = 0) {
    if (spec.messages_per_combo < 1 || spec.schemes.empty() || spec.snr_db.empty() ||
        spec.path_counts.empty())
        throw InputError("all dataset counts must be >= 1");
    std::uint64_t seed = seed_override ? seed_override : spec.seed;
    AmcDataset ds;
    ds.feature_length = spec.feature_length;
    for (auto s : spec.schemes) ds.class_names.push_back(sig::scheme(s).name);
    std::uint64_t combo = 0;
    for (std::size_t ci = 0; ci < spec.schemes.size(); ++ci)
        for (double snr : spec.snr_db)
            for (int paths : spec.path_counts) {
                for (std::size_t msg = 0; msg < spec.messages_per_combo; ++msg) {
                    Rng rng = Rng::stream(seed, "amc-dataset", combo * 1000003ULL + msg);
                    ds.examples.push_back(
                        synthesize_example(spec.schemes[ci], ci, snr, paths, spec, rng));
                }
                ++combo;
            }
    return ds;
}

// stratified by (class, snr); deterministic given seed
inline void split_dataset(const AmcDataset& ds, double train_fraction, std::uint64_t seed,
                          AmcDataset& train, AmcDataset& test) {
    train.class_names = test.class_names = ds.class_names;
    train.feature_length = test.feature_length = ds.feature_length;
    std::map<std::pair<std::size_t, double>, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < ds.examples.size(); ++i)
        strata[{ds.examples[i].label, ds.examples[i].snr_db}].push_back(i);
    for (auto& [key, idx] : strata) {
        Rng rng = Rng::stream(seed, "amc-split",
                              key.first * 131ULL + std::uint64_t(key.second * 8 + 1024));
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.uniform_int(i)]);
        std::size_t ntrain = std::size_t(std::round(train_fraction * double(idx.size())));
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < ntrain ? train : test).examples.push_back(ds.examples[idx[i]]);
    }
}

// ---------------------------------------------------------------- training

struct AmcTrainConfig {
    std::size_t epochs = 80;
    std::size_t batch_size = 32;
    double learning_rate = 0.05;  // plain SGD
    std::uint64_t seed = 0;
};

struct AmcTrainResult {
    AmcModel model;
    std::vector<double> loss_curve;  // mean training loss per epoch
    std::vector<double> accuracy_curve;
};

inline double dataset_accuracy(const AmcModel& model, const AmcDataset& ds) {
    if (ds.examples.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& ex : ds.examples)
        if (classify(model, ex.feature).first == ex.label) ++hits;
    return double(hits) / double(ds.examples.size());
}

inline AmcTrainResult train(const AmcDataset& ds, const AmcTrainConfig& cfg) {
    std::size_t classes = ds.class_names.size();
    {
        std::vector<bool> present(classes, false);
        for (const auto& ex : ds.examples) present[ex.label] = true;
        if (std::count(present.begin(), present.end(), true) < 2)
            throw InputError("training requires at least 2 classes present");
    }
    Rng init_rng = Rng::stream(cfg.seed, "amc-init");
    AmcTrainResult res;
    res.model = make_model(ds.feature_length, ds.class_names, init_rng);
    auto& model = res.model;

    std::vector<std::size_t> order(ds.examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng shuffle_rng = Rng::stream(cfg.seed, "amc-shuffle", epoch);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffle_rng.uniform_int(i)]);
        double epoch_loss = 0.0;
        std::size_t hits = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            std::size_t end = std::min(order.size(), start + cfg.batch_size);
            nn::NetworkParams batch_grad;
            for (std::size_t bi = start; bi < end; ++bi) {
                const auto& ex = ds.examples[order[bi]];
                nn::Array x = prepare_input(ex.feature);
                nn::ForwardCache cache;
                nn::Array out = nn::forward(model.params, model.specs, x, &cache);
                nn::Array label(classes);
                label[ex.label] = 1.0;
                epoch_loss += nn::cross_entropy(out, label);
                std::size_t pred = 0;
                for (std::size_t c = 1; c < classes; ++c)
                    if (out[c] > out[pred]) pred = c;
                if (pred == ex.label) ++hits;
                auto bp = nn::backward(model.params, model.specs, cache,
                                       nn::cross_entropy_grad(out, label));
                if (batch_grad.layers.empty()) {
                    batch_grad = std::move(bp.grads);
                } else {
                    for (std::size_t li = 0; li < batch_grad.layers.size(); ++li) {
                        auto& acc = batch_grad.layers[li];
                        const auto& g = bp.grads.layers[li];
                        for (std::size_t k = 0; k < acc.weights.size(); ++k)
                            acc.weights[k] += g.weights[k];
                        for (std::size_t k = 0; k < acc.biases.size(); ++k)
                            acc.biases[k] += g.biases[k];
                    }
                }
            }
            double inv = 1.0 / double(end - start);
            for (auto& lp : batch_grad.layers) {
                for (auto& v : lp.weights.data) v *= inv;
                for (auto& v : lp.biases.data) v *= inv;
            }
            nn::sgd_step(model.params, batch_grad, cfg.learning_rate);
        }
        epoch_loss /= double(ds.examples.size());
        if (!std::isfinite(epoch_loss)) throw TrainingError("AMC training diverged");
        res.loss_curve.push_back(epoch_loss);
        res.accuracy_curve.push_back(double(hits) / double(ds.examples.size()));
    }
    return res;
}

// -------------------------------------------------------------------- I/O

inline void save_dataset_csv(const std::string& path, const AmcDataset& ds) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << "label,snr_db,paths";
    for (std::size_t i = 1; i <= ds.feature_length; ++i) f << ",v" << i;
    f << "\n";
    for (const auto& ex : ds.examples) {
        f << ds.class_names[ex.label] << "," << sig::format_double(ex.snr_db) << "," << ex.paths;
        for (double v : ex.feature) f << "," << sig::format_double(v);
        f << "\n";
    }
}

inline std::vector<std::vector<std::size_t>> confusion_matrix(const AmcModel& model,
                                                              const AmcDataset& ds) {
    std::size_t k = model.class_names.size();
    std::vector<std::vector<std::size_t>> cm(k, std::vector<std::size_t>(k, 0));
    for (const auto& ex : ds.examples) cm[ex.label][classify(model, ex.feature).first]++;
    return cm;
}

inline void save_confusion_csv(const std::string& path, const AmcModel& model,
                               const std::vector<std::vector<std::size_t>>& cm) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << "true_class";
    for (const auto& n : model.class_names) f << ",pred_" << n;
    f << "\n";
    for (std::size_t r = 0; r < cm.size(); ++r) {
        f << model.class_names[r];
        for (std::size_t c = 0; c < cm[r].size(); ++c) f << "," << cm[r][c];
        f << "\n";
    }
}

}  // namespace autor::amc

#endif
