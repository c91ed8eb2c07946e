#ifndef AUTOR_LDPC_HPP
#define AUTOR_LDPC_HPP

// Protograph LDPC codes: base-graph lifting, alist I/O, a GF(2) systematic
// encoder, classic min-sum decoding, and the unfolded neural min-sum decoder
// with per-layer shared (alpha, beta) trained iteration by iteration.
//
// LLR convention: positive => bit 0 more likely; hard bit = 1 iff LLR < 0.
// Messages are clipped to +/-LLR_CLIP between layers. Edge iteration order is
// the edge-list order (checks in row order, columns ascending within a row).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "autor/errors.hpp"
#include "autor/nn.hpp"
#include "autor/rng.hpp"
#include "autor/sigchain.hpp"

namespace autor::ldpc {

inline constexpr double LLR_CLIP = 30.0;

// ------------------------------------------------------------------ matrices

struct BaseGraph {
    std::size_t rows = 0, cols = 0, z = 0;
    std::vector<std::vector<int>> shifts;  // -1 = no edge, else shift (reduced mod z at lift)
};

inline BaseGraph load_base_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open base graph file: " + path);
    std::string line;
    BaseGraph bg;
    bool have_header = false;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        if (!have_header) {
            if (!(ss >> bg.rows >> bg.cols >> bg.z) || bg.rows == 0 || bg.cols == 0 || bg.z == 0)
                throw ParseError("bad base graph header at line " + std::to_string(lineno));
            bg.shifts.assign(bg.rows, std::vector<int>(bg.cols, -1));
            have_header = true;
            continue;
        }
        long r, c, s;
        if (!(ss >> r >> c >> s))
            throw ParseError("bad base graph entry at line " + std::to_string(lineno));
        if (r < 0 || std::size_t(r) >= bg.rows || c < 0 || std::size_t(c) >= bg.cols || s < 0)
            throw ParseError("base graph entry out of range at line " + std::to_string(lineno));
        bg.shifts[r][c] = int(s);
    }
    if (!have_header) throw ParseError("empty base graph file: " + path);
    return bg;
}

struct ParityCheckMatrix {
    std::size_t n_checks = 0, n_vars = 0;
    std::vector<std::vector<std::size_t>> row_cols;  // sorted column indices per check
    std::size_t ones() const {
        std::size_t n = 0;
        for (const auto& r : row_cols) n += r.size();
        return n;
    }
};

struct TannerGraph {
    std::size_t n_vars = 0, n_checks = 0;
    struct Edge {
        std::size_t v, c;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> var_edges, check_edges;  // edge indices
};

inline TannerGraph make_tanner(const ParityCheckMatrix& h) {
    TannerGraph g;
    g.n_vars = h.n_vars;
    g.n_checks = h.n_checks;
    g.var_edges.resize(h.n_vars);
    g.check_edges.resize(h.n_checks);
    for (std::size_t c = 0; c < h.n_checks; ++c)
        for (std::size_t v : h.row_cols[c]) {
            if (v >= h.n_vars) throw InputError("parity check column index out of range");
            g.var_edges[v].push_back(g.edges.size());
            g.check_edges[c].push_back(g.edges.size());
            g.edges.push_back({v, c});
        }
    return g;
}

inline ParityCheckMatrix lift(const BaseGraph& bg, std::size_t z) {
    if (z < 1) throw InputError("lift size must be >= 1");
    if (bg.shifts.size() != bg.rows) throw InputError("malformed base graph");
    ParityCheckMatrix h;
    h.n_checks = bg.rows * z;
    h.n_vars = bg.cols * z;
    h.row_cols.resize(h.n_checks);
    for (std::size_t r = 0; r < bg.rows; ++r) {
        if (bg.shifts[r].size() != bg.cols) throw InputError("malformed base graph row");
        for (std::size_t c = 0; c < bg.cols; ++c) {
            int s = bg.shifts[r][c];
            if (s < 0) continue;
            std::size_t sm = std::size_t(s) % z;
            // identity cyclically right-shifted by s: row i has its 1 at column (i+s) mod z
            for (std::size_t i = 0; i < z; ++i)
                h.row_cols[r * z + i].push_back(c * z + (i + sm) % z);
        }
    }
    for (auto& row : h.row_cols) std::sort(row.begin(), row.end());
    return h;
}

// --------------------------------------------------------------------- alist

inline ParityCheckMatrix load_alist(const std::string& text) {
    std::istringstream f(text);
    std::vector<std::vector<long>> lines;
    std::string line;
    std::vector<std::size_t> linenos;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<long> vals;
        long v;
        while (ss >> v) vals.push_back(v);
        if (!ss.eof()) throw ParseError("non-numeric token at line " + std::to_string(lineno));
        if (!vals.empty()) {
            lines.push_back(vals);
            linenos.push_back(lineno);
        }
    }
    auto want = [&](std::size_t idx, std::size_t count, const char* what) -> std::vector<long>& {
        if (idx >= lines.size()) throw ParseError(std::string("truncated alist: missing ") + what);
        if (lines[idx].size() != count)
            throw ParseError(std::string("bad ") + what + " at line " +
                             std::to_string(linenos[idx]));
        return lines[idx];
    };
    auto& dims = want(0, 2, "dimension line");
    if (dims[0] < 1 || dims[1] < 1) throw ParseError("alist dimensions must be positive");
    std::size_t n = std::size_t(dims[0]), m = std::size_t(dims[1]);
    auto& maxdeg = want(1, 2, "max-degree line");
    auto& coldeg = want(2, n, "column degree list");
    auto& rowdeg = want(3, m, "row degree list");
    for (long d : coldeg)
        if (d < 0 || d > maxdeg[0]) throw ParseError("column degree out of range");
    for (long d : rowdeg) {
        if (d < 1 || d > maxdeg[1])
            throw ParseError("row degree out of range (empty rows not allowed)");
    }
    ParityCheckMatrix h;
    h.n_vars = n;
    h.n_checks = m;
    h.row_cols.resize(m);
    std::size_t idx = 4;
    // per-column row lists: cross-checked against the row lists below
    std::vector<std::vector<std::size_t>> col_rows(n);
    for (std::size_t c = 0; c < n; ++c, ++idx) {
        if (idx >= lines.size()) throw ParseError("truncated alist: missing column lists");
        auto& vals = lines[idx];
        std::size_t nz = 0;
        for (long v : vals) {
            if (v == 0) continue;  // padding
            if (v < 1 || std::size_t(v) > m)
                throw ParseError("row index out of range at line " + std::to_string(linenos[idx]));
            col_rows[c].push_back(std::size_t(v - 1));
            ++nz;
        }
        if (nz != std::size_t(coldeg[c]))
            throw ParseError("column degree mismatch at line " + std::to_string(linenos[idx]));
    }
    for (std::size_t r = 0; r < m; ++r, ++idx) {
        if (idx >= lines.size()) throw ParseError("truncated alist: missing row lists");
        auto& vals = lines[idx];
        for (long v : vals) {
            if (v == 0) continue;
            if (v < 1 || std::size_t(v) > n)
                throw ParseError("column index out of range at line " +
                                 std::to_string(linenos[idx]));
            h.row_cols[r].push_back(std::size_t(v - 1));
        }
        if (h.row_cols[r].size() != std::size_t(rowdeg[r]))
            throw ParseError("row degree mismatch at line " + std::to_string(linenos[idx]));
        std::sort(h.row_cols[r].begin(), h.row_cols[r].end());
    }
    // consistency between the two index lists
    std::vector<std::vector<std::size_t>> from_rows(n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c : h.row_cols[r]) from_rows[c].push_back(r);
    for (std::size_t c = 0; c < n; ++c) {
        std::sort(col_rows[c].begin(), col_rows[c].end());
        if (col_rows[c] != from_rows[c])
            throw ParseError("column and row lists disagree for column " + std::to_string(c + 1));
    }
    return h;
}

inline std::string save_alist(const ParityCheckMatrix& h) {
    std::vector<std::vector<std::size_t>> col_rows(h.n_vars);
    for (std::size_t r = 0; r < h.n_checks; ++r)
        for (std::size_t c : h.row_cols[r]) col_rows[c].push_back(r);
    std::size_t maxc = 0, maxr = 0;
    for (const auto& v : col_rows) maxc = std::max(maxc, v.size());
    for (const auto& v : h.row_cols) maxr = std::max(maxr, v.size());
    std::ostringstream out;
    out << h.n_vars << " " << h.n_checks << "\n" << maxc << " " << maxr << "\n";
    for (std::size_t c = 0; c < h.n_vars; ++c)
        out << col_rows[c].size() << (c + 1 < h.n_vars ? " " : "\n");
    for (std::size_t r = 0; r < h.n_checks; ++r)
        out << h.row_cols[r].size() << (r + 1 < h.n_checks ? " " : "\n");
    auto emit = [&](const std::vector<std::size_t>& idxs, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i)
            out << (i < idxs.size() ? idxs[i] + 1 : 0) << (i + 1 < width ? " " : "\n");
    };
    for (const auto& v : col_rows) emit(v, maxc);
    for (const auto& v : h.row_cols) emit(v, maxr);
    return out.str();
}

// ------------------------------------------------------------------- encoder

// Systematic encoder via offline GF(2) Gaussian elimination. Message bits go
// into the free (non-pivot) columns; pivot columns carry the parity.
class Encoder {
  public:
    explicit Encoder(const ParityCheckMatrix& h) : n_vars_(h.n_vars), n_checks_(h.n_checks) {
        words_ = (n_vars_ + 63) / 64;
        std::vector<std::vector<std::uint64_t>> rows(n_checks_,
                                                     std::vector<std::uint64_t>(words_, 0));
        for (std::size_t r = 0; r < n_checks_; ++r)
            for (std::size_t c : h.row_cols[r]) rows[r][c / 64] |= 1ULL << (c % 64);
        // reduced row echelon form
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n_vars_ && rank < n_checks_; ++col) {
            std::size_t pivot = rank;
            while (pivot < n_checks_ && !(rows[pivot][col / 64] >> (col % 64) & 1)) ++pivot;
            if (pivot == n_checks_) continue;
            std::swap(rows[rank], rows[pivot]);
            for (std::size_t r = 0; r < n_checks_; ++r) {
                if (r == rank || !(rows[r][col / 64] >> (col % 64) & 1)) continue;
                for (std::size_t w = 0; w < words_; ++w) rows[r][w] ^= rows[rank][w];
            }
            pivot_cols_.push_back(col);
            ++rank;
        }
        if (rank < n_checks_)
            throw SetupError("parity check matrix is rank deficient: rank " +
                             std::to_string(rank) + " of " + std::to_string(n_checks_) + " rows");
        std::vector<bool> is_pivot(n_vars_, false);
        for (std::size_t c : pivot_cols_) is_pivot[c] = true;
        for (std::size_t c = 0; c < n_vars_; ++c)
            if (!is_pivot[c]) free_cols_.push_back(c);
        rref_ = std::move(rows);
    }

    std::size_t n() const { return n_vars_; }
    std::size_t k() const { return free_cols_.size(); }
    const std::vector<std::size_t>& message_columns() const { return free_cols_; }

    std::vector<int> encode(const std::vector<int>& message) const {
        if (message.size() != free_cols_.size())
            throw InputError("message length must be " + std::to_string(free_cols_.size()));
        std::vector<int> cw(n_vars_, 0);
        for (std::size_t i = 0; i < message.size(); ++i) {
            if (message[i] != 0 && message[i] != 1) throw InputError("message bits must be 0/1");
            cw[free_cols_[i]] = message[i];
        }
        // row r of the RREF reads: cw[pivot_r] = sum of cw over the row's free columns
        for (std::size_t r = 0; r < n_checks_; ++r) {
            int acc = 0;
            for (std::size_t i = 0; i < free_cols_.size(); ++i) {
                std::size_t c = free_cols_[i];
                acc ^= int(rref_[r][c / 64] >> (c % 64) & 1) & message[i];
            }
            cw[pivot_cols_[r]] = acc;
        }
        return cw;
    }

  private:
    std::size_t n_vars_, n_checks_, words_;
    std::vector<std::vector<std::uint64_t>> rref_;
    std::vector<std::size_t> pivot_cols_, free_cols_;
};

inline std::vector<int> syndrome(const ParityCheckMatrix& h, const std::vector<int>& bits) {
    if (bits.size() != h.n_vars) throw InputError("codeword length mismatch");
    std::vector<int> s(h.n_checks, 0);
    for (std::size_t r = 0; r < h.n_checks; ++r)
        for (std::size_t c : h.row_cols[r]) s[r] ^= bits[c] & 1;
    return s;
}

// ------------------------------------------------------------------ decoding

struct NeuralMsParams {
    std::vector<double> alpha, beta;  // one pair per hidden layer
    std::size_t layers() const { return alpha.size(); }
};

inline NeuralMsParams classic_params(std::size_t layers) {
    NeuralMsParams p;
    p.alpha.assign(layers, 1.0);
    p.beta.assign(layers, 0.0);
    return p;
}

inline void validate_params(const NeuralMsParams& p, std::size_t layers_needed) {
    if (p.alpha.size() != p.beta.size()) throw InputError("alpha/beta length mismatch");
    if (p.layers() < layers_needed)
        throw InputError("decoder has " + std::to_string(p.layers()) + " layers, need " +
                         std::to_string(layers_needed));
    for (double a : p.alpha)
        if (!std::isfinite(a) || a <= 0.0) throw InputError("alpha must be finite and > 0");
    for (double b : p.beta)
        if (!std::isfinite(b) || b < 0.0) throw InputError("beta must be finite and >= 0");
}

struct DecodeResult {
    std::vector<int> bits;
    std::vector<double> out_llr;
};

struct DecodeTrace {
    // per layer: variable-to-check and check-to-variable messages, edge-indexed
    std::vector<std::vector<double>> var_msgs, check_msgs;
};

namespace detail {
inline double clip(double x) { return std::clamp(x, -LLR_CLIP, LLR_CLIP); }
}  // namespace detail

inline DecodeResult neural_ms_decode(const std::vector<double>& llr, const TannerGraph& g,
                                     const NeuralMsParams& params, std::size_t layers,
                                     DecodeTrace* trace = nullptr) {
    if (llr.size() != g.n_vars) throw InputError("LLR length mismatch");
    validate_params(params, layers);
    std::vector<double> l(g.n_vars);
    for (std::size_t v = 0; v < g.n_vars; ++v) {
        if (std::isnan(llr[v])) throw InputError("LLR must not be NaN");
        l[v] = detail::clip(llr[v]);
    }
    std::vector<double> cmsg(g.edges.size(), 0.0), vmsg(g.edges.size(), 0.0);
    for (std::size_t layer = 0; layer < layers; ++layer) {
        const double alpha = params.alpha[layer], beta = params.beta[layer];
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            double acc = l[g.edges[e].v];
            for (std::size_t e2 : g.var_edges[g.edges[e].v])
                if (e2 != e) acc += cmsg[e2];
            vmsg[e] = detail::clip(acc);
        }
        std::vector<double> next(g.edges.size(), 0.0);
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            double sign = 1.0, mn = LLR_CLIP;
            for (std::size_t e2 : g.check_edges[g.edges[e].c]) {
                if (e2 == e) continue;
                if (vmsg[e2] < 0.0) sign = -sign;
                mn = std::min(mn, std::abs(vmsg[e2]));
            }
            next[e] = detail::clip(sign * std::max(0.0, alpha * mn - beta));
        }
        cmsg = std::move(next);
        if (trace) {
            trace->var_msgs.push_back(vmsg);
            trace->check_msgs.push_back(cmsg);
        }
    }
    DecodeResult res;
    res.out_llr.resize(g.n_vars);
    res.bits.resize(g.n_vars);
    for (std::size_t v = 0; v < g.n_vars; ++v) {
        double acc = l[v];
        for (std::size_t e : g.var_edges[v]) acc += cmsg[e];
        res.out_llr[v] = acc;
        res.bits[v] = acc < 0.0 ? 1 : 0;
    }
    return res;
}

// Plain min-sum, written independently of the neural path; serves as the
// oracle for the alpha=1, beta=0 equivalence.
inline DecodeResult classic_min_sum_decode(const std::vector<double>& llr, const TannerGraph& g,
                                           std::size_t layers, DecodeTrace* trace = nullptr) {
    if (llr.size() != g.n_vars) throw InputError("LLR length mismatch");
    std::vector<double> l(llr);
    for (auto& x : l) x = detail::clip(x);
    std::vector<double> c2v(g.edges.size(), 0.0);
    std::vector<double> v2c(g.edges.size(), 0.0);
    for (std::size_t it = 0; it < layers; ++it) {
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            double total = l[g.edges[e].v];
            for (std::size_t e2 : g.var_edges[g.edges[e].v])
                if (e2 != e) total += c2v[e2];
            v2c[e] = detail::clip(total);
        }
        std::vector<double> fresh(g.edges.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            double s = 1.0, best = LLR_CLIP;
            for (std::size_t e2 : g.check_edges[g.edges[e].c]) {
                if (e2 == e) continue;
                s *= v2c[e2] < 0.0 ? -1.0 : 1.0;
                best = std::min(best, std::abs(v2c[e2]));
            }
            fresh[e] = detail::clip(s * best);
        }
        c2v = std::move(fresh);
        if (trace) {
            trace->var_msgs.push_back(v2c);
            trace->check_msgs.push_back(c2v);
        }
    }
    DecodeResult res;
    res.out_llr.resize(g.n_vars);
    res.bits.resize(g.n_vars);
    for (std::size_t v = 0; v < g.n_vars; ++v) {
        double acc = l[v];
        for (std::size_t e : g.var_edges[v]) acc += c2v[e];
        res.out_llr[v] = acc;
        res.bits[v] = acc < 0.0 ? 1 : 0;
    }
    return res;
}

// ------------------------------------------------------------------ training

struct TrainSchedule {
    std::size_t layer_count = 10;
    std::size_t epochs_per_layer = 30;
    std::size_t batches_per_epoch = 10;
    std::size_t batch_size = 64;
    double learning_rate = 0.01;  // plain SGD on (alpha, beta)
    double ebn0_lo_db = 1.0, ebn0_hi_db = 4.0;
    std::uint64_t seed = 0;
};

struct TrainResult {
    NeuralMsParams params;
    std::vector<double> loss_per_layer;      // validation loss after each trained layer
    std::vector<std::vector<double>> epoch_loss;  // per layer, per epoch training loss
};

namespace detail {

struct Sample {
    std::vector<double> llr;
    std::vector<int> bits;
};

inline Sample make_sample(const Encoder& enc, double ebn0_lo, double ebn0_hi, bool zero_word,
                          Rng& rng) {
    Sample s;
    if (zero_word) {
        s.bits.assign(enc.n(), 0);
    } else {
        std::vector<int> msg(enc.k());
        for (auto& b : msg) b = int(rng.uniform_int(2));
        s.bits = enc.encode(msg);
    }
    double rate = double(enc.k()) / double(enc.n());
    double ebn0 = std::pow(10.0, rng.uniform(ebn0_lo, ebn0_hi) / 10.0);
    double sigma2 = 1.0 / (2.0 * rate * ebn0);
    double sd = std::sqrt(sigma2);
    s.llr.resize(enc.n());
    for (std::size_t i = 0; i < enc.n(); ++i) {
        double y = (1.0 - 2.0 * s.bits[i]) + sd * rng.normal();
        s.llr[i] = 2.0 * y / sigma2;
    }
    return s;
}

// loss and (optionally) the gradient w.r.t. the last layer's (alpha, beta)
struct ForwardLoss {
    double loss = 0.0;
    double dalpha = 0.0, dbeta = 0.0;
};

inline ForwardLoss forward_loss(const Sample& s, const TannerGraph& g,
                                const NeuralMsParams& params, std::size_t layers,
                                bool want_grad) {
    ForwardLoss out;
    std::vector<double> l(g.n_vars);
    for (std::size_t v = 0; v < g.n_vars; ++v) l[v] = clip(s.llr[v]);
    std::vector<double> cmsg(g.edges.size(), 0.0), vmsg(g.edges.size(), 0.0);
    // per-edge pieces of the last layer's check update, for the analytic grad
    std::vector<double> last_sign(g.edges.size(), 1.0), last_min(g.edges.size(), 0.0);
    std::vector<char> last_active(g.edges.size(), 0);
    for (std::size_t layer = 0; layer < layers; ++layer) {
        const double alpha = params.alpha[layer], beta = params.beta[layer];
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            double acc = l[g.edges[e].v];
            for (std::size_t e2 : g.var_edges[g.edges[e].v])
                if (e2 != e) acc += cmsg[e2];
            vmsg[e] = clip(acc);
        }
        std::vector<double> next(g.edges.size());
        const bool last = layer + 1 == layers;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            double sign = 1.0, mn = LLR_CLIP;
            for (std::size_t e2 : g.check_edges[g.edges[e].c]) {
                if (e2 == e) continue;
                if (vmsg[e2] < 0.0) sign = -sign;
                mn = std::min(mn, std::abs(vmsg[e2]));
            }
            double pre = alpha * mn - beta;
            double raw = sign * std::max(0.0, pre);
            next[e] = clip(raw);
            if (last && want_grad) {
                last_sign[e] = sign;
                last_min[e] = mn;
                // gradient passes only through an active, unclipped ReLU
                last_active[e] = pre > 0.0 && std::abs(raw) < LLR_CLIP ? 1 : 0;
            }
        }
        cmsg = std::move(next);
    }
    const double inv_n = 1.0 / double(g.n_vars);
    std::vector<double> dllr(want_grad ? g.n_vars : 0, 0.0);
    for (std::size_t v = 0; v < g.n_vars; ++v) {
        double acc = l[v];
        for (std::size_t e : g.var_edges[v]) acc += cmsg[e];
        double o = 1.0 / (1.0 + std::exp(acc));  // sigmoid(-LLR) = P(bit = 1)
        double oc = std::clamp(o, 1e-12, 1.0 - 1e-12);
        out.loss -= inv_n * (s.bits[v] * std::log(oc) + (1 - s.bits[v]) * std::log(1.0 - oc));
        if (want_grad) dllr[v] = (s.bits[v] - o) * inv_n;  // dL/dLLR_v
    }
    if (want_grad) {
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (!last_active[e]) continue;
            double up = dllr[g.edges[e].v] * last_sign[e];
            out.dalpha += up * last_min[e];
            out.dbeta -= up;
        }
    }
    return out;
}

}  // namespace detail

inline TrainResult train_iteration_by_iteration(const TannerGraph& g, const Encoder& enc,
                                                const TrainSchedule& sched) {
    if (sched.layer_count < 1 || sched.batch_size < 1 || sched.epochs_per_layer < 1)
        throw InputError("training schedule counts must be >= 1");
    TrainResult res;
    res.params = classic_params(sched.layer_count);

    // fixed validation set shared by all layers
    Rng val_rng = Rng::stream(sched.seed, "ldpc-val");
    std::vector<detail::Sample> val;
    for (std::size_t i = 0; i < 4 * sched.batch_size; ++i)
        val.push_back(detail::make_sample(enc, sched.ebn0_lo_db, sched.ebn0_hi_db, i % 2 == 0,
                                          val_rng));
    auto val_loss = [&](std::size_t layers) {
        double acc = 0.0;
        for (const auto& s : val)
            acc += detail::forward_loss(s, g, res.params, layers, false).loss;
        return acc / double(val.size());
    };

    for (std::size_t layer = 0; layer < sched.layer_count; ++layer) {
        const std::size_t depth = layer + 1;
        double init_loss = val_loss(depth);  // layer starts at (1, 0)
        double best_loss = init_loss;
        double best_alpha = res.params.alpha[layer], best_beta = res.params.beta[layer];
        std::vector<double> curve;
        for (std::size_t epoch = 0; epoch < sched.epochs_per_layer; ++epoch) {
            double epoch_loss = 0.0;
            std::size_t seen = 0;
            for (std::size_t b = 0; b < sched.batches_per_epoch; ++b) {
                Rng rng = Rng::stream(sched.seed, "ldpc-batch",
                                      (layer * sched.epochs_per_layer + epoch) * 4096 + b);
                double ga = 0.0, gb = 0.0;
                for (std::size_t i = 0; i < sched.batch_size; ++i) {
                    auto s = detail::make_sample(enc, sched.ebn0_lo_db, sched.ebn0_hi_db,
                                                 i % 2 == 0, rng);
                    auto fl = detail::forward_loss(s, g, res.params, depth, true);
                    epoch_loss += fl.loss;
                    ga += fl.dalpha;
                    gb += fl.dbeta;
                    ++seen;
                }
                double inv = 1.0 / double(sched.batch_size);
                res.params.alpha[layer] =
                    std::max(1e-3, res.params.alpha[layer] - sched.learning_rate * ga * inv);
                res.params.beta[layer] =
                    std::max(0.0, res.params.beta[layer] - sched.learning_rate * gb * inv);
            }
            epoch_loss /= double(seen);
            if (!std::isfinite(epoch_loss))
                throw TrainingError("training diverged at layer " + std::to_string(depth));
            curve.push_back(epoch_loss);
            double v = val_loss(depth);
            if (v < best_loss) {
                best_loss = v;
                best_alpha = res.params.alpha[layer];
                best_beta = res.params.beta[layer];
            }
        }
        // keep the best-on-validation parameters; never worse than the init
        res.params.alpha[layer] = best_alpha;
        res.params.beta[layer] = best_beta;
        res.loss_per_layer.push_back(best_loss);
        res.epoch_loss.push_back(std::move(curve));
    }
    return res;
}

// ---------------------------------------------------------------- evaluation

struct BerRow {
    double ebn0_db = 0.0;
    double pre_pct = 0.0, post_pct = 0.0;  // percent correct bits before/after decoding
    double bler = 0.0;
    double ci_halfwidth = 0.0;  // 95% binomial CI on the BLER
};

inline std::vector<BerRow> ber_eval(const NeuralMsParams& params, const TannerGraph& g,
                                    const Encoder& enc, const std::vector<double>& ebn0_db,
                                    std::size_t trials, std::size_t layers, std::uint64_t seed) {
    if (trials < 1) throw InputError("trials must be >= 1");
    std::vector<BerRow> table;
    double rate = double(enc.k()) / double(enc.n());
    for (double ebn0 : ebn0_db) {
        double sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebn0 / 10.0));
        double sd = std::sqrt(sigma2);
        std::size_t pre_ok = 0, post_ok = 0, block_err = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = Rng::stream(seed, "ldpc-eval",
                                  std::uint64_t(std::llround(ebn0 * 1000.0) + 100000) * 1000000 +
                                      t);
            std::vector<int> msg(enc.k());
            for (auto& b : msg) b = int(rng.uniform_int(2));
            auto cw = enc.encode(msg);
            std::vector<double> llr(enc.n());
            for (std::size_t i = 0; i < enc.n(); ++i) {
                double y = (1.0 - 2.0 * cw[i]) + sd * rng.normal();
                llr[i] = 2.0 * y / sigma2;
            }
            bool block_bad = false;
            auto dec = neural_ms_decode(llr, g, params, layers);
            for (std::size_t i = 0; i < enc.n(); ++i) {
                if ((llr[i] < 0.0 ? 1 : 0) == cw[i]) ++pre_ok;
                if (dec.bits[i] == cw[i])
                    ++post_ok;
                else
                    block_bad = true;
            }
            if (block_bad) ++block_err;
        }
        BerRow row;
        row.ebn0_db = ebn0;
        double nbits = double(trials) * double(enc.n());
        row.pre_pct = 100.0 * double(pre_ok) / nbits;
        row.post_pct = 100.0 * double(post_ok) / nbits;
        row.bler = double(block_err) / double(trials);
        row.ci_halfwidth = 1.96 * std::sqrt(row.bler * (1.0 - row.bler) / double(trials));
        table.push_back(row);
    }
    return table;
}

inline void save_ber_csv(const std::string& path, const std::vector<BerRow>& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << "ebn0_db,pre_pct,post_pct,bler,ci_halfwidth\n";
    for (const auto& r : table)
        f << sig::format_double(r.ebn0_db) << "," << sig::format_double(r.pre_pct) << ","
          << sig::format_double(r.post_pct) << "," << sig::format_double(r.bler) << ","
          << sig::format_double(r.ci_halfwidth) << "\n";
}

// ---------------------------------------------------------------- checkpoint

inline void save_neural_ms(const std::string& path, const NeuralMsParams& p) {
    nn::NetworkParams np;
    nn::LayerParams lp;
    lp.weights = nn::Array(p.alpha.size());
    lp.weights.data = p.alpha;
    lp.biases = nn::Array(p.beta.size());
    lp.biases.data = p.beta;
    np.layers.push_back(lp);
    nn::save_checkpoint(path, np);
}

inline NeuralMsParams load_neural_ms(const std::string& path) {
    auto np = nn::load_checkpoint(path);
    if (np.layers.size() != 1) throw ParseError("neural min-sum checkpoint must hold one layer");
    NeuralMsParams p;
    p.alpha = np.layers[0].weights.data;
    p.beta = np.layers[0].biases.data;
    validate_params(p, p.layers());
    return p;
}

// (7,4) Hamming parity check, used across the test-suite
inline ParityCheckMatrix hamming74() {
    ParityCheckMatrix h;
    h.n_vars = 7;
    h.n_checks = 3;
    h.row_cols = {{0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6}};
    return h;
}

inline std::string default_base_graph_path() {
#ifdef AUTOR_DATA_DIR
    return std::string(AUTOR_DATA_DIR) + "/bg2_z16.txt";
#else
    return "data/bg2_z16.txt";
#endif
}

}  // namespace autor::ldpc

#endif
