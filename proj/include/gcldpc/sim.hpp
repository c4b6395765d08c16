#ifndef GCLDPC_SIM_HPP
#define GCLDPC_SIM_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "convcode.hpp"
#include "decode.hpp"
#include "gf2.hpp"
#include "rng.hpp"

namespace gcldpc {

enum class DecoderKind { block, pipeline };

/// Code under simulation: a block parity-check matrix or a convolutional
/// code decoded on terminated frames of frame_blocks blocks. rate is the
/// E_b/N_0 reference rate: true dimension over length for block codes,
/// design rate b/c for convolutional ones.
struct SimCode {
    std::string id;
    bool is_conv = false;
    SparseBinMatrix h;      // block code
    ConvCode code;          // convolutional code
    std::uint64_t frame_blocks = 0;
    double rate = 0.0;

    static SimCode block_code(std::string id, SparseBinMatrix h)
    {
        SimCode sc;
        sc.id = std::move(id);
        sc.is_conv = false;
        sc.rate = static_cast<double>(h.cols() - gf2_rank(h)) / static_cast<double>(h.cols());
        sc.h = std::move(h);
        return sc;
    }

    static SimCode conv_code(std::string id, ConvCode code, std::uint64_t frame_blocks)
    {
        SimCode sc;
        sc.id = std::move(id);
        sc.is_conv = true;
        sc.rate = static_cast<double>(code.b()) / static_cast<double>(code.c());
        sc.frame_blocks = frame_blocks;
        sc.code = std::move(code);
        return sc;
    }

    std::uint64_t frame_symbols() const
    {
        return is_conv ? frame_blocks * code.c() : h.cols();
    }
};

struct SimConfig {
    DecoderKind decoder = DecoderKind::block;
    std::uint32_t iterations = 100;  // block: max iterations; pipeline: I
    std::vector<double> snrs_db;
    std::uint64_t max_frames = 1000000;
    std::uint64_t min_bit_errors = 500;
    std::uint64_t min_frame_errors = 100;
    std::uint64_t seed = 0;
    std::uint32_t threads = 1;

    void validate() const
    {
        if (snrs_db.empty()) throw std::invalid_argument("SimConfig: SNR list is empty");
        if (max_frames == 0 || min_bit_errors == 0 || min_frame_errors == 0)
            throw std::invalid_argument("SimConfig: stop rules must be positive");
    }
};

struct SnrPoint {
    double ebn0_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double avg_iter = 0.0;
};

struct SimResult {
    std::string code_id;
    std::vector<SnrPoint> points;
};

namespace detail {

struct FrameTally {
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t iter_sum = 0;
};

}  // namespace detail

/// Seeded Monte-Carlo BER/FER over BPSK-AWGN with all-zero transmission.
/// Frame noise is keyed by (seed, snr index, frame index), and the stop rule
/// is evaluated on fixed-size batches, so the result is bit-identical for a
/// fixed seed regardless of the worker count.
inline SimResult run_ber(const SimCode& code, const SimConfig& cfg)
{
    cfg.validate();
    if (cfg.decoder == DecoderKind::pipeline && !code.is_conv)
        throw std::invalid_argument("run_ber: pipeline decoder requires a convolutional code");
    if (code.is_conv && code.frame_blocks == 0)
        throw std::invalid_argument("run_ber: convolutional code needs frame_blocks");

    const std::uint64_t n = code.frame_symbols();
    const std::uint32_t threads = std::max<std::uint32_t>(1, cfg.threads);
    constexpr std::uint64_t kBatch = 64;

    // Decoders are stateless per frame; build one per worker.
    std::unique_ptr<BpDecoder> block_dec;
    std::unique_ptr<PipelineDecoder> pipe_dec;
    SparseBinMatrix conv_window;
    if (!code.is_conv) {
        block_dec = std::make_unique<BpDecoder>(code.h);
    } else if (cfg.decoder == DecoderKind::pipeline) {
        pipe_dec = std::make_unique<PipelineDecoder>(code.code, code.frame_blocks, cfg.iterations);
    } else {
        conv_window = materialize_window(code.code, 0, code.frame_blocks);
        block_dec = std::make_unique<BpDecoder>(conv_window);
    }

    SimResult result;
    result.code_id = code.id;
    for (std::size_t si = 0; si < cfg.snrs_db.size(); ++si) {
        const double snr = cfg.snrs_db[si];
        const double sigma = std::sqrt(awgn_sigma2(snr, code.rate));
        SnrPoint pt;
        pt.ebn0_db = snr;

        auto run_frame = [&](std::uint64_t frame_idx, detail::FrameTally& tally) {
            CounterRng rng(CounterRng::derive_key(cfg.seed, si, frame_idx));
            LlrStream llr(n);
            const double scale = 2.0 / (sigma * sigma);
            for (std::uint64_t i = 0; i < n; ++i)
                llr[i] = scale * (1.0 + sigma * rng.next_gaussian());
            std::uint64_t errs = 0;
            std::uint32_t iters = cfg.iterations;
            if (pipe_dec) {
                auto bits = pipe_dec->decode(llr);
                for (std::uint8_t b : bits) errs += b;
            } else {
                auto res = block_dec->decode(llr, cfg.iterations, true);
                for (std::uint8_t b : res.bits) errs += b;
                iters = res.iterations;
            }
            tally.bit_errors += errs;
            tally.frame_errors += errs != 0;
            tally.iter_sum += iters;
        };

        while (pt.frames < cfg.max_frames &&
               (pt.bit_errors < cfg.min_bit_errors || pt.frame_errors < cfg.min_frame_errors)) {
            const std::uint64_t batch = std::min(kBatch, cfg.max_frames - pt.frames);
            std::vector<detail::FrameTally> tallies(threads);
            if (threads == 1) {
                for (std::uint64_t f = 0; f < batch; ++f) run_frame(pt.frames + f, tallies[0]);
            } else {
                std::vector<std::thread> pool;
                for (std::uint32_t w = 0; w < threads; ++w)
                    pool.emplace_back([&, w]() {
                        for (std::uint64_t f = w; f < batch; f += threads)
                            run_frame(pt.frames + f, tallies[w]);
                    });
                for (auto& th : pool) th.join();
            }
            for (const auto& t : tallies) {
                pt.bit_errors += t.bit_errors;
                pt.frame_errors += t.frame_errors;
                pt.avg_iter += static_cast<double>(t.iter_sum);
            }
            pt.frames += batch;
        }
        pt.bits = pt.frames * n;
        pt.ber = pt.frames ? static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits) : 0.0;
        pt.fer = pt.frames ? static_cast<double>(pt.frame_errors) / static_cast<double>(pt.frames) : 0.0;
        pt.avg_iter = pt.frames ? pt.avg_iter / static_cast<double>(pt.frames) : 0.0;
        result.points.push_back(pt);
    }
    return result;
}

inline void emit_csv(const SimResult& res, std::ostream& os)
{
    os << "code_id,ebn0_db,frames,bits,bit_errors,frame_errors,ber,fer,avg_iter\n";
    char buf[64];
    for (const auto& p : res.points) {
        auto g6 = [&buf](double x) {
            std::snprintf(buf, sizeof buf, "%.6g", x);
            return std::string(buf);
        };
        os << res.code_id << ',' << g6(p.ebn0_db) << ',' << p.frames << ',' << p.bits << ','
           << p.bit_errors << ',' << p.frame_errors << ',' << g6(p.ber) << ',' << g6(p.fer)
           << ',' << g6(p.avg_iter) << '\n';
    }
}

inline void emit_csv(const SimResult& res, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
    emit_csv(res, os);
}

/// SNR required to reach target_ber, by log-linear interpolation along the
/// measured curve. The curve must bracket the target.
inline double snr_at_ber(const SimResult& res, double target_ber)
{
    std::vector<std::pair<double, double>> pts;  // (snr, log10 ber)
    for (const auto& p : res.points)
        if (p.ber > 0.0) pts.emplace_back(p.ebn0_db, std::log10(p.ber));
    std::sort(pts.begin(), pts.end());
    const double target = std::log10(target_ber);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto [s0, b0] = pts[i];
        const auto [s1, b1] = pts[i + 1];
        if ((b0 - target) * (b1 - target) <= 0.0 && b0 != b1)
            return s0 + (target - b0) * (s1 - s0) / (b1 - b0);
    }
    throw std::invalid_argument("snr_at_ber: target BER not bracketed by the curve");
}

/// Convolutional gain: SNR(block at target) - SNR(conv at target).
inline double convolutional_gain(const SimResult& block, const SimResult& conv, double target_ber)
{
    return snr_at_ber(block, target_ber) - snr_at_ber(conv, target_ber);
}

}  // namespace gcldpc

#endif  // GCLDPC_SIM_HPP
