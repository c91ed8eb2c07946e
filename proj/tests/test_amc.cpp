#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "autor/amc.hpp"

using namespace autor;
using namespace autor::amc;
using sig::cplx;

// Independent direct-summation oracle for the lag-feature definition.
static std::vector<double> correntropy_oracle(const std::vector<cplx>& y, double sigma,
                                              std::size_t l) {
    std::vector<double> out;
    for (std::size_t i = 1; i <= l; ++i) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t n = 0; n + i - 1 < y.size(); ++n) {
            cplx d = y[n] - y[n + i - 1];
            sum += std::exp(-(d.real() * d.real() + d.imag() * d.imag()) /
                            (2.0 * sigma * sigma));
            ++count;
        }
        out.push_back(std::abs(sum / (double(count) * std::sqrt(2.0 * M_PI) * sigma * sigma)));
    }
    return out;
}

TEST_CASE("constant input puts every lag at the kernel peak") {
    sig::IQSequence iq;
    iq.samples.assign(20, cplx(0.3, -0.4));
    double sigma = 0.7;
    auto f = complex_correntropy(iq, sigma, 5);
    double peak = 1.0 / (std::sqrt(2.0 * M_PI) * sigma * sigma);
    for (double v : f.values) CHECK(v == Catch::Approx(peak).margin(1e-9));
}

TEST_CASE("BPSK alternation, hand-evaluated against the oracle") {
    sig::IQSequence iq;
    iq.samples = {cplx(1, 0), cplx(-1, 0), cplx(1, 0), cplx(-1, 0)};
    auto f = complex_correntropy(iq, 1.0, 2);
    CHECK(f.values[0] == Catch::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    CHECK(f.values[1] == Catch::Approx(std::exp(-2.0) / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    auto oracle = correntropy_oracle(iq.samples, 1.0, 2);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(f.values[i] == Catch::Approx(oracle[i]).epsilon(1e-12));
}

TEST_CASE("random input matches the oracle") {
    Rng rng = Rng::stream(4, "corr-oracle");
    sig::IQSequence iq;
    for (int i = 0; i < 64; ++i) iq.samples.emplace_back(rng.normal(), rng.normal());
    auto f = complex_correntropy(iq, 1.3, 16);
    auto oracle = correntropy_oracle(iq.samples, 1.3, 16);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(f.values[i] == Catch::Approx(oracle[i]).epsilon(1e-12));
}

TEST_CASE("widening the kernel never shrinks the exponential factor") {
    Rng rng = Rng::stream(6, "corr-sigma");
    sig::IQSequence iq;
    for (int i = 0; i < 40; ++i) iq.samples.emplace_back(rng.normal(), rng.normal());
    auto f1 = complex_correntropy(iq, 1.0, 8);
    auto f2 = complex_correntropy(iq, 2.0, 8);
    // compare after factoring out the 1/(sqrt(2 pi) sigma^2) normalization
    for (std::size_t i = 0; i < 8; ++i) {
        double e1 = f1.values[i] * std::sqrt(2.0 * M_PI) * 1.0;
        double e2 = f2.values[i] * std::sqrt(2.0 * M_PI) * 4.0;
        CHECK(e2 >= e1 - 1e-12);
    }
}

TEST_CASE("feature is invariant to a global phase rotation") {
    Rng rng = Rng::stream(8, "corr-rot");
    sig::IQSequence iq, rot;
    cplx r = std::polar(1.0, 1.234);
    for (int i = 0; i < 50; ++i) {
        cplx v(rng.normal(), rng.normal());
        iq.samples.push_back(v);
        rot.samples.push_back(r * v);
    }
    auto fa = complex_correntropy(iq, 1.0, 10);
    auto fb = complex_correntropy(rot, 1.0, 10);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(std::abs(fa.values[i] - fb.values[i]) <= 1e-12);
}

TEST_CASE("zero-lag entry is exact even under a frequency offset") {
    Rng rng = Rng::stream(9, "corr-freq");
    sig::IQSequence iq;
    for (int i = 0; i < 50; ++i) iq.samples.emplace_back(rng.normal(), rng.normal());
    sig::ChannelConfig ch;
    ch.freq_offset = 0.03;
    auto y = sig::apply_channel(iq, ch);
    double sigma = 0.9;
    auto f = complex_correntropy(y, sigma, 4);
    CHECK(f.values[0] ==
          Catch::Approx(1.0 / (std::sqrt(2.0 * M_PI) * sigma * sigma)).margin(1e-9));
}

TEST_CASE("l > m is rejected") {
    sig::IQSequence iq;
    iq.samples.assign(4, cplx(1, 0));
    CHECK_THROWS_AS(complex_correntropy(iq, 1.0, 5), InputError);
}

TEST_CASE("paper-scale dataset spec yields 2700 examples") {
    AmcDatasetSpec spec;  // 3 schemes x 6 SNRs x 3 path counts x 50 messages
    spec.message_length = 64;
    spec.feature_length = 8;
    auto ds = build_dataset(spec);
    CHECK(ds.examples.size() == 2700);
}

TEST_CASE("degenerate one-example dataset") {
    AmcDatasetSpec spec;
    spec.schemes = {sig::Scheme::QPSK};
    spec.snr_db = {10.0};
    spec.path_counts = {1};
    spec.messages_per_combo = 1;
    spec.message_length = 64;
    spec.feature_length = 8;
    auto ds = build_dataset(spec);
    REQUIRE(ds.examples.size() == 1);
    CHECK(ds.examples[0].label == 0);
    CHECK(ds.class_names[0] == "QPSK");
}

TEST_CASE("dataset generation is deterministic given the seed") {
    AmcDatasetSpec spec;
    spec.schemes = {sig::Scheme::BPSK, sig::Scheme::QAM16};
    spec.snr_db = {6.0};
    spec.path_counts = {1, 2};
    spec.messages_per_combo = 3;
    spec.message_length = 64;
    spec.feature_length = 8;
    spec.seed = 99;
    auto a = build_dataset(spec);
    auto b = build_dataset(spec);
    REQUIRE(a.examples.size() == b.examples.size());
    for (std::size_t i = 0; i < a.examples.size(); ++i)
        CHECK(a.examples[i].feature == b.examples[i].feature);
}

TEST_CASE("linearly separable toy set reaches 100% training accuracy") {
    AmcDataset ds;
    ds.class_names = {"A", "B"};
    ds.feature_length = 16;
    Rng rng = Rng::stream(12, "toy");
    for (int i = 0; i < 40; ++i) {
        AmcExample ex;
        ex.label = i % 2;
        ex.feature.resize(16);
        for (int k = 0; k < 16; ++k) {
            double base = ex.label == 0 ? double(k) / 16.0 : 1.0 - double(k) / 16.0;
            ex.feature[k] = base + 0.02 * rng.normal();
        }
        ds.examples.push_back(ex);
    }
    AmcTrainConfig cfg;
    cfg.epochs = 200;
    cfg.learning_rate = 0.1;
    cfg.seed = 5;
    auto res = train(ds, cfg);
    CHECK(dataset_accuracy(res.model, ds) == 1.0);
    CHECK(res.loss_curve.back() < res.loss_curve.front());
}

TEST_CASE("single-class dataset is rejected") {
    AmcDataset ds;
    ds.class_names = {"A", "B"};
    ds.feature_length = 8;
    for (int i = 0; i < 10; ++i) {
        AmcExample ex;
        ex.label = 0;
        ex.feature.assign(8, 0.5);
        ds.examples.push_back(ex);
    }
    CHECK_THROWS_AS(train(ds, AmcTrainConfig{}), InputError);
}

TEST_CASE("classifier output is a simplex point and ties break low") {
    Rng rng = Rng::stream(13, "cls");
    AmcModel m = make_model(32, {"A", "B", "C"}, rng);
    std::vector<double> feature(32);
    for (auto& v : feature) v = rng.uniform();
    auto [cls, probs] = classify(m, feature);
    double sum = 0.0;
    for (double p : probs) {
        CHECK(p >= 0.0);
        sum += p;
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-9));

    // zero the final dense layer: logits all equal -> uniform -> class 0
    auto& dense = m.params.layers[3];
    std::fill(dense.weights.data.begin(), dense.weights.data.end(), 0.0);
    std::fill(dense.biases.data.begin(), dense.biases.data.end(), 0.0);
    CHECK(classify(m, feature).first == 0);

    CHECK_THROWS_AS(classify(m, std::vector<double>(31)), InputError);
}

TEST_CASE("stratified split keeps proportions per class") {
    AmcDatasetSpec spec;
    spec.schemes = {sig::Scheme::BPSK, sig::Scheme::QPSK};
    spec.snr_db = {0.0, 10.0};
    spec.path_counts = {1};
    spec.messages_per_combo = 10;
    spec.message_length = 64;
    spec.feature_length = 8;
    auto ds = build_dataset(spec);
    AmcDataset train_set, test_set;
    split_dataset(ds, 0.8, 3, train_set, test_set);
    CHECK(train_set.examples.size() == 32);
    CHECK(test_set.examples.size() == 8);
    for (std::size_t cls = 0; cls < 2; ++cls) {
        auto count = [&](const AmcDataset& d) {
            std::size_t n = 0;
            for (const auto& e : d.examples) n += e.label == cls;
            return n;
        };
        CHECK(count(train_set) == 16);
        CHECK(count(test_set) == 4);
    }
}
