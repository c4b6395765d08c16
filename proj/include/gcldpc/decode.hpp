#ifndef GCLDPC_DECODE_HPP
#define GCLDPC_DECODE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "convcode.hpp"
#include "gf2.hpp"

namespace gcldpc {

/// Per-symbol log-likelihood ratios; positive favors bit 0. Sentinels:
/// +inf for shortened (known zero) positions, 0 for punctured ones.
using LlrStream = std::vector<double>;

inline constexpr double kShortenedLlr = std::numeric_limits<double>::infinity();
inline constexpr double kPuncturedLlr = 0.0;
inline constexpr double kLlrClip = 31.0;

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    std::uint32_t iterations = 0;
    bool converged = false;
};

/// BPSK over AWGN: 0 -> +1, 1 -> -1; llr_i = 2 y_i / sigma^2 with
/// sigma^2 = 1 / (2 R 10^(ebn0/10)).
inline double awgn_sigma2(double ebn0_db, double rate)
{
    if (rate <= 0.0 || rate > 1.0) throw std::invalid_argument("awgn_sigma2: rate must be in (0, 1]");
    return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

inline LlrStream llr_from_awgn(const std::vector<double>& y, double ebn0_db, double rate)
{
    const double s2 = awgn_sigma2(ebn0_db, rate);
    LlrStream llr(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) llr[i] = 2.0 * y[i] / s2;
    return llr;
}

namespace detail {

inline double clip(double x)
{
    if (x > kLlrClip) return kLlrClip;
    if (x < -kLlrClip) return -kLlrClip;
    return x;
}

/// Flooding sum-product core over an edge list. One iteration = check
/// update (exact tanh rule) followed by variable update. Messages are
/// clipped to +-kLlrClip; channel +-inf sentinels pass through totals.
struct BpGraph {
    std::size_t n_vars = 0;
    std::size_t n_checks = 0;
    std::vector<std::uint32_t> edge_var;            // edge -> variable
    std::vector<std::uint32_t> check_start;         // CSR over edges, by check
    std::vector<std::vector<std::uint32_t>> var_edges;

    void build(const SparseBinMatrix& h)
    {
        n_vars = h.cols();
        n_checks = h.rows();
        var_edges.assign(n_vars, {});
        check_start.assign(n_checks + 1, 0);
        edge_var.clear();
        edge_var.reserve(h.nnz());
        for (std::size_t r = 0; r < n_checks; ++r) {
            check_start[r] = static_cast<std::uint32_t>(edge_var.size());
            for (std::uint32_t c : h.row(r)) {
                var_edges[c].push_back(static_cast<std::uint32_t>(edge_var.size()));
                edge_var.push_back(c);
            }
        }
        check_start[n_checks] = static_cast<std::uint32_t>(edge_var.size());
    }

    /// Runs up to max_iter iterations; with early_stop, stops at the first
    /// iteration whose hard decisions satisfy every check.
    DecodeResult run(const LlrStream& llr, std::uint32_t max_iter, bool early_stop) const
    {
        const std::size_t n_edges = edge_var.size();
        std::vector<double> vc(n_edges), cv(n_edges, 0.0);
        for (std::size_t e = 0; e < n_edges; ++e) vc[e] = llr[edge_var[e]];

        std::vector<double> tnh(n_edges);
        std::vector<std::uint8_t> bits(n_vars, 0);
        std::vector<double> total(n_vars);

        std::uint32_t iter = 0;
        for (iter = 1; iter <= max_iter; ++iter) {
            // Check update: forward/backward partial products of tanh(m/2).
            for (std::size_t r = 0; r < n_checks; ++r) {
                const std::uint32_t lo = check_start[r], hi = check_start[r + 1];
                if (hi == lo) continue;
                for (std::uint32_t e = lo; e < hi; ++e) tnh[e] = std::tanh(0.5 * vc[e]);
                double acc = 1.0;
                for (std::uint32_t e = lo; e < hi; ++e) {
                    cv[e] = acc;  // product of tanh before e
                    acc *= tnh[e];
                }
                acc = 1.0;
                for (std::uint32_t e = hi; e-- > lo;) {
                    const double prod = cv[e] * acc;
                    acc *= tnh[e];
                    cv[e] = clip(2.0 * std::atanh(prod));
                }
            }
            // Variable update and decisions.
            for (std::size_t v = 0; v < n_vars; ++v) {
                double sum = llr[v];
                for (std::uint32_t e : var_edges[v]) sum += cv[e];
                total[v] = sum;
                bits[v] = sum < 0.0 ? 1 : 0;
                for (std::uint32_t e : var_edges[v]) {
                    const double m = sum - cv[e];
                    vc[e] = std::isinf(m) ? m : clip(m);
                }
            }
            if (early_stop && syndrome_zero(bits)) return {std::move(bits), iter, true};
        }
        const bool ok = syndrome_zero(bits);
        return {std::move(bits), max_iter, ok};
    }

    bool syndrome_zero(const std::vector<std::uint8_t>& bits) const
    {
        for (std::size_t r = 0; r < n_checks; ++r) {
            unsigned acc = 0;
            for (std::uint32_t e = check_start[r]; e < check_start[r + 1]; ++e)
                acc ^= bits[edge_var[e]];
            if (acc & 1) return false;
        }
        return true;
    }
};

}  // namespace detail

/// Reusable flooding sum-product decoder for one parity-check matrix.
class BpDecoder {
  public:
    explicit BpDecoder(const SparseBinMatrix& h) : h_(h) { graph_.build(h); }

    DecodeResult decode(const LlrStream& llr, std::uint32_t max_iter = 100,
                        bool early_stop = true) const
    {
        if (llr.size() != graph_.n_vars)
            throw std::invalid_argument("BpDecoder: LLR length mismatch");
        return graph_.run(llr, max_iter, early_stop);
    }

    const SparseBinMatrix& matrix() const { return h_; }

  private:
    SparseBinMatrix h_;
    detail::BpGraph graph_;
};

/// Flooding sum-product with the syndrome-check stopping rule, defaulting
/// to 100 iterations.
inline DecodeResult bp_decode_block(const SparseBinMatrix& h, const LlrStream& llr,
                                    std::uint32_t max_iter = 100)
{
    return BpDecoder(h).decode(llr, max_iter, true);
}

/// Continuous sliding-window pipeline decoder with I processor stages, each
/// performing one iteration on its own constraint-length segment as the
/// window slides one block per time step. The stage schedule is staggered so
/// that every message of stage k is computed from stage k-1 messages only;
/// a symbol therefore accumulates exactly I full iterations before exiting,
/// and on a terminated frame the emitted decisions coincide bit-for-bit
/// with I flooding iterations (no early stop) on the materialized window.
/// That equivalence is what this routine evaluates. The stream is treated
/// as terminated: checks past the end see shortened (+inf) symbols. There
/// is no early termination.
class PipelineDecoder {
  public:
    PipelineDecoder(const ConvCode& code, std::uint64_t n_blocks, std::uint32_t iters)
        : code_(code), n_blocks_(n_blocks), iters_(iters)
    {
        if (iters == 0) throw std::invalid_argument("PipelineDecoder: need I >= 1");
        if (n_blocks == 0) throw std::invalid_argument("PipelineDecoder: empty stream");
        // Window graph: the frame plus m_s shortened tail blocks, with every
        // check row touching them.
        const std::uint32_t c = code.c();
        const std::uint64_t total_blocks = n_blocks + code.ms();
        SparseBinMatrix h = materialize_window(code, 0, total_blocks);
        graph_.build(h);
        n_symbols_ = n_blocks * c;
        n_padded_ = total_blocks * c;
    }

    std::vector<std::uint8_t> decode(const LlrStream& llr) const
    {
        if (llr.size() != n_symbols_)
            throw std::invalid_argument("PipelineDecoder: LLR length mismatch");
        LlrStream padded(llr);
        padded.resize(n_padded_, kShortenedLlr);
        DecodeResult res = graph_.run(padded, iters_, false);
        res.bits.resize(n_symbols_);
        return std::move(res.bits);
    }

  private:
    ConvCode code_;
    std::uint64_t n_blocks_;
    std::uint32_t iters_;
    std::uint64_t n_symbols_ = 0;
    std::uint64_t n_padded_ = 0;
    detail::BpGraph graph_;
};

/// One-shot pipeline decode of a block-aligned stream.
inline std::vector<std::uint8_t> pipeline_decode(const ConvCode& code, const LlrStream& llr,
                                                 std::uint32_t iters)
{
    if (llr.size() % code.c() != 0)
        throw std::invalid_argument("pipeline_decode: stream not block-aligned");
    return PipelineDecoder(code, llr.size() / code.c(), iters).decode(llr);
}

}  // namespace gcldpc

#endif  // GCLDPC_DECODE_HPP
