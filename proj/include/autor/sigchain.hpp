#ifndef AUTOR_SIGCHAIN_HPP
#define AUTOR_SIGCHAIN_HPP

// Baseband signal model: Gray-mapped constellations, the multiplicative
// channel A*exp(j(2*pi*w*n + theta)) with multipath taps and an optional
// fractional-delay interpolator, AWGN and alpha-stable noise, hard
// demodulation and max-log LLRs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "autor/errors.hpp"
#include "autor/rng.hpp"

namespace autor::sig {

using cplx = std::complex<double>;

struct IQSequence {
    std::vector<cplx> samples;
    double sample_period = 1.0;  // seconds, informational
};

// ----------------------------------------------------------- constellations

enum class Scheme { BPSK, QPSK, PSK8, QAM16 };

struct ModulationScheme {
    Scheme id;
    std::string name;
    std::size_t bits_per_symbol;
    std::vector<cplx> constellation;  // index = bit group read MSB-first
};

inline const ModulationScheme& scheme(Scheme id) {
    static const std::vector<ModulationScheme> tables = [] {
        std::vector<ModulationScheme> t;
        {
            ModulationScheme m{Scheme::BPSK, "BPSK", 1, {cplx(1, 0), cplx(-1, 0)}};
            t.push_back(m);
        }
        {
            // (b0,b1) -> ((1-2 b0) + j (1-2 b1)) / sqrt(2)
            ModulationScheme m{Scheme::QPSK, "QPSK", 2, {}};
            double s = 1.0 / std::sqrt(2.0);
            for (int idx = 0; idx < 4; ++idx) {
                int b0 = (idx >> 1) & 1, b1 = idx & 1;
                m.constellation.emplace_back(s * (1 - 2 * b0), s * (1 - 2 * b1));
            }
            t.push_back(m);
        }
        {
            // Gray-coded angles k*pi/4 starting at 0
            ModulationScheme m{Scheme::PSK8, "8PSK", 3, {}};
            const int gray[8] = {0, 1, 3, 2, 6, 7, 5, 4};
            m.constellation.resize(8);
            for (int k = 0; k < 8; ++k) {
                double a = k * M_PI / 4.0;
                m.constellation[gray[k]] = cplx(std::cos(a), std::sin(a));
            }
            t.push_back(m);
        }
        {
            // per-axis Gray {00->-3, 01->-1, 11->+1, 10->+3} / sqrt(10)
            ModulationScheme m{Scheme::QAM16, "16QAM", 4, {}};
            auto axis = [](int b_hi, int b_lo) {
                if (b_hi == 0 && b_lo == 0) return -3.0;
                if (b_hi == 0 && b_lo == 1) return -1.0;
                if (b_hi == 1 && b_lo == 1) return 1.0;
                return 3.0;
            };
            double s = 1.0 / std::sqrt(10.0);
            for (int idx = 0; idx < 16; ++idx) {
                int b0 = (idx >> 3) & 1, b1 = (idx >> 2) & 1, b2 = (idx >> 1) & 1, b3 = idx & 1;
                m.constellation.emplace_back(s * axis(b0, b1), s * axis(b2, b3));
            }
            t.push_back(m);
        }
        return t;
    }();
    return tables[static_cast<std::size_t>(id)];
}

inline const ModulationScheme& scheme_by_name(const std::string& name) {
    for (auto id : {Scheme::BPSK, Scheme::QPSK, Scheme::PSK8, Scheme::QAM16})
        if (scheme(id).name == name) return scheme(id);
    throw InputError("unknown modulation scheme: " + name);
}

// ----------------------------------------------------------------- channel

struct Tap {
    int delay = 0;  // integer samples
    cplx gain{1.0, 0.0};
};

struct ChannelConfig {
    double amplitude = 1.0;           // A
    double phase = 0.0;               // theta, radians in [-pi, pi)
    double freq_offset = 0.0;         // w, cycles/sample
    double time_offset = 0.0;         // epsilon, fraction of a symbol in [0,1)
    std::vector<Tap> taps{{0, cplx(1.0, 0.0)}};
};

struct NoiseConfig {
    enum class Kind { Awgn, AlphaStable } kind = Kind::Awgn;
    double variance = 0.0;  // awgn: sigma^2 total per complex sample
    double alpha = 1.8;
    double beta = 0.0;
    double dispersion = 0.0;  // gamma
    double location = 0.0;    // xi
};

// ------------------------------------------------------------- operations

inline IQSequence modulate(const std::vector<int>& bits, const ModulationScheme& m) {
    if (bits.size() % m.bits_per_symbol != 0)
        throw InputError("bit count " + std::to_string(bits.size()) +
                         " not divisible by bits/symbol " + std::to_string(m.bits_per_symbol));
    IQSequence iq;
    iq.samples.reserve(bits.size() / m.bits_per_symbol);
    for (std::size_t i = 0; i < bits.size(); i += m.bits_per_symbol) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < m.bits_per_symbol; ++b) idx = (idx << 1) | (bits[i + b] & 1);
        iq.samples.push_back(m.constellation[idx]);
    }
    return iq;
}

inline IQSequence apply_channel(const IQSequence& iq, const ChannelConfig& ch) {
    for (const Tap& t : ch.taps)
        if (t.delay < 0 || static_cast<std::size_t>(t.delay) >= iq.samples.size())
            throw InputError("tap delay out of range");
    std::vector<cplx> x = iq.samples;
    if (ch.time_offset != 0.0) {
        // fractional-delay linear interpolator, zero-padded history
        std::vector<cplx> d(x.size());
        for (std::size_t n = 0; n < x.size(); ++n) {
            cplx prev = n > 0 ? x[n - 1] : cplx(0, 0);
            d[n] = (1.0 - ch.time_offset) * x[n] + ch.time_offset * prev;
        }
        x = std::move(d);
    }
    IQSequence out;
    out.sample_period = iq.sample_period;
    out.samples.assign(x.size(), cplx(0, 0));
    for (std::size_t n = 0; n < x.size(); ++n) {
        cplx rot = ch.amplitude *
                   std::exp(cplx(0.0, 2.0 * M_PI * ch.freq_offset * double(n) + ch.phase));
        cplx acc(0, 0);
        for (const Tap& t : ch.taps) {
            if (n >= static_cast<std::size_t>(t.delay)) acc += t.gain * x[n - t.delay];
        }
        out.samples[n] = rot * acc;
    }
    return out;
}

// One real-valued draw from S(alpha, beta, gamma, xi) via Chambers-Mallows-Stuck.
// Dispersion is the squared scale: alpha=2, gamma=sigma^2/2 gives N(xi, sigma^2).
inline double sample_alpha_stable(double alpha, double beta, double dispersion, double location,
                                  Rng& rng) {
    if (alpha <= 0.0 || alpha > 2.0) throw InputError("alpha must be in (0, 2]");
    if (beta < -1.0 || beta > 1.0) throw InputError("beta must be in [-1, 1]");
    if (dispersion < 0.0) throw InputError("dispersion must be nonnegative");
    double c = std::pow(dispersion, 1.0 / alpha);  // scale
    if (c == 0.0) return location;
    double u = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
    double w = rng.exponential();
    double x;
    if (std::abs(alpha - 1.0) > 1e-12) {
        double b = std::atan(beta * std::tan(M_PI * alpha / 2.0)) / alpha;
        double s = std::pow(1.0 + beta * beta * std::pow(std::tan(M_PI * alpha / 2.0), 2.0),
                            1.0 / (2.0 * alpha));
        x = s * std::sin(alpha * (u + b)) / std::pow(std::cos(u), 1.0 / alpha) *
            std::pow(std::cos(u - alpha * (u + b)) / w, (1.0 - alpha) / alpha);
        return c * x + location;
    }
    double h = M_PI / 2.0 + beta * u;
    x = (2.0 / M_PI) * (h * std::tan(u) - beta * std::log((M_PI / 2.0) * w * std::cos(u) / h));
    return c * x + location + (2.0 / M_PI) * beta * c * std::log(c);
}

// i.i.d. complex noise; alpha-stable built from independent real/imag draws.
inline std::vector<cplx> sample_noise(const NoiseConfig& cfg, std::size_t n, Rng& rng) {
    if (n < 1) throw InputError("sample count must be >= 1");
    std::vector<cplx> out(n);
    if (cfg.kind == NoiseConfig::Kind::Awgn) {
        double s = std::sqrt(cfg.variance / 2.0);  // per real dimension
        for (auto& v : out) v = cplx(rng.normal(0.0, s), rng.normal(0.0, s));
    } else {
        for (auto& v : out) {
            double re = sample_alpha_stable(cfg.alpha, cfg.beta, cfg.dispersion, cfg.location, rng);
            double im = sample_alpha_stable(cfg.alpha, cfg.beta, cfg.dispersion, cfg.location, rng);
            v = cplx(re, im);
        }
    }
    return out;
}

inline void add_noise(IQSequence& iq, const NoiseConfig& cfg, Rng& rng) {
    auto noise = sample_noise(cfg, iq.samples.size(), rng);
    for (std::size_t i = 0; i < iq.samples.size(); ++i) iq.samples[i] += noise[i];
}

inline std::vector<int> demodulate_hard(const IQSequence& iq, const ModulationScheme& m) {
    std::vector<int> bits;
    bits.reserve(iq.samples.size() * m.bits_per_symbol);
    for (const cplx& y : iq.samples) {
        std::size_t best = 0;
        double best_d = std::norm(y - m.constellation[0]);
        for (std::size_t i = 1; i < m.constellation.size(); ++i) {
            double d = std::norm(y - m.constellation[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        for (std::size_t b = m.bits_per_symbol; b-- > 0;) bits.push_back((best >> b) & 1);
    }
    return bits;
}

// Max-log LLR per bit: (min over bit=1 points - min over bit=0 points) / sigma^2.
// Positive LLR means bit 0 is more likely.
inline std::vector<double> llr(const IQSequence& iq, const ModulationScheme& m,
                               double noise_variance) {
    if (noise_variance <= 0.0) throw InputError("noise variance must be positive");
    std::vector<double> out;
    out.reserve(iq.samples.size() * m.bits_per_symbol);
    for (const cplx& y : iq.samples) {
        for (std::size_t b = 0; b < m.bits_per_symbol; ++b) {
            std::size_t shift = m.bits_per_symbol - 1 - b;
            double min0 = 1e300, min1 = 1e300;
            for (std::size_t i = 0; i < m.constellation.size(); ++i) {
                double d = std::norm(y - m.constellation[i]);
                if ((i >> shift) & 1)
                    min1 = std::min(min1, d);
                else
                    min0 = std::min(min0, d);
            }
            out.push_back((min1 - min0) / noise_variance);
        }
    }
    return out;
}

// ------------------------------------------------------------ IQ file I/O

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline void save_iq_csv(const std::string& path, const IQSequence& iq) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << "index,re,im\n";
    for (std::size_t i = 0; i < iq.samples.size(); ++i)
        f << i << "," << format_double(iq.samples[i].real()) << ","
          << format_double(iq.samples[i].imag()) << "\n";
}

inline IQSequence load_iq_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open: " + path);
    std::string line;
    if (!std::getline(f, line) || line != "index,re,im")
        throw ParseError("bad IQ CSV header in " + path);
    IQSequence iq;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string idx, re, im;
        if (!std::getline(ss, idx, ',') || !std::getline(ss, re, ',') || !std::getline(ss, im))
            throw ParseError("bad IQ CSV row: " + line);
        iq.samples.emplace_back(std::stod(re), std::stod(im));
    }
    return iq;
}

}  // namespace autor::sig

#endif
