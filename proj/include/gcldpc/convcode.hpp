#ifndef GCLDPC_CONVCODE_HPP
#define GCLDPC_CONVCODE_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf2.hpp"
#include "poly.hpp"

namespace gcldpc {

struct CodeParams {
    std::uint32_t rate_num = 0;  // b
    std::uint32_t rate_den = 0;  // c
    std::uint32_t ms = 0;
    std::uint64_t nu_s = 0;
    std::uint32_t Ts = 0;
};

/// Periodically time-varying convolutional code, held as one period of the
/// sub-blocks H_i(t) of the semi-infinite parity-check matrix: block row t
/// carries H_i(t) at block column t - i, for i in [0, m_s]. Each sub-block
/// is (c - b) x c. Streams start at t = 0 with zero state, i.e. bits at
/// negative time indices are shortened.
class ConvCode {
  public:
    ConvCode() = default;

    /// blocks_per_t[t][i] = H_i(t); every t must list the same number of
    /// sub-blocks. Trailing all-zero memory levels are trimmed from m_s.
    static ConvCode from_blocks(std::uint32_t c, std::uint32_t b,
                                std::vector<std::vector<SparseBinMatrix>> blocks_per_t)
    {
        if (c == 0 || b >= c) throw std::invalid_argument("ConvCode: need 0 <= b < c");
        if (blocks_per_t.empty()) throw std::invalid_argument("ConvCode: no blocks");
        const std::size_t levels = blocks_per_t[0].size();
        if (levels == 0) throw std::invalid_argument("ConvCode: no memory levels");
        for (const auto& bt : blocks_per_t) {
            if (bt.size() != levels)
                throw std::invalid_argument("ConvCode: ragged memory levels");
            for (const auto& blk : bt)
                if (blk.rows() != c - b || blk.cols() != c)
                    throw std::invalid_argument("ConvCode: sub-block dimension mismatch");
        }
        std::size_t ms = levels - 1;
        while (ms > 0) {
            bool all_zero = true;
            for (const auto& bt : blocks_per_t)
                if (bt[ms].nnz() != 0) { all_zero = false; break; }
            if (!all_zero) break;
            --ms;
        }
        ConvCode code;
        code.c_ = c;
        code.b_ = b;
        code.ms_ = static_cast<std::uint32_t>(ms);
        code.Ts_ = static_cast<std::uint32_t>(blocks_per_t.size());
        code.blocks_.reserve(code.Ts_ * (ms + 1));
        for (auto& bt : blocks_per_t)
            for (std::size_t i = 0; i <= ms; ++i) code.blocks_.push_back(std::move(bt[i]));
        return code;
    }

    std::uint32_t c() const { return c_; }
    std::uint32_t b() const { return b_; }
    std::uint32_t ms() const { return ms_; }
    std::uint32_t Ts() const { return Ts_; }
    std::uint64_t nu_s() const { return std::uint64_t(ms_ + 1) * c_; }
    bool time_invariant() const { return Ts_ == 1; }

    CodeParams params() const { return {b_, c_, ms_, nu_s(), Ts_}; }

    /// H_i(t) with t taken mod the period.
    const SparseBinMatrix& block(std::uint64_t t, std::uint32_t i) const
    {
        return blocks_[(t % Ts_) * (ms_ + 1) + i];
    }

    bool operator==(const ConvCode& o) const
    {
        return c_ == o.c_ && b_ == o.b_ && ms_ == o.ms_ && Ts_ == o.Ts_ && blocks_ == o.blocks_;
    }

  private:
    std::uint32_t c_ = 0;
    std::uint32_t b_ = 0;
    std::uint32_t ms_ = 0;
    std::uint32_t Ts_ = 1;
    std::vector<SparseBinMatrix> blocks_;  // (t * (ms+1) + i)
};

inline CodeParams params_report(const ConvCode& code) { return code.params(); }

/// Finite sub-matrix of the semi-infinite parity-check matrix covering block
/// columns [t_start, t_start + n_blocks). All check rows whose restriction
/// to the window is nonzero are kept (entries outside the window hit
/// shortened, known-zero positions); all-zero restricted rows are dropped.
inline SparseBinMatrix materialize_window(const ConvCode& code, std::uint64_t t_start,
                                          std::uint64_t n_blocks)
{
    if (n_blocks == 0) throw std::invalid_argument("materialize_window: n_blocks must be > 0");
    const std::uint32_t c = code.c();
    const std::uint32_t cb = c - code.b();
    const std::uint64_t ncols = n_blocks * c;
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::uint64_t t = t_start; t < t_start + n_blocks + code.ms(); ++t) {
        for (std::uint32_t a = 0; a < cb; ++a) {
            std::vector<std::uint32_t> row;
            for (std::uint32_t i = 0; i <= code.ms(); ++i) {
                if (t < i) continue;  // shortened negative time indices
                const std::uint64_t vt = t - i;
                if (vt < t_start || vt >= t_start + n_blocks) continue;
                for (std::uint32_t col : code.block(t, i).row(a))
                    row.push_back(static_cast<std::uint32_t>((vt - t_start) * c + col));
            }
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }
    return SparseBinMatrix::from_rows(ncols, std::move(rows));
}

/// Time-invariant scalar expansion of a D-domain polynomial matrix: H_i is
/// the coefficient-i matrix of H(D), so D^s acts as a delay of s blocks.
inline ConvCode from_tanner_poly(const PolyMatrix& hconv)
{
    if (hconv.modulus() != 0)
        throw std::invalid_argument("from_tanner_poly: matrix still has a modulus; unwrap first");
    if (hconv.rows() >= hconv.cols())
        throw std::invalid_argument("from_tanner_poly: need more columns than rows");
    const std::uint32_t ms = hconv.max_exponent();
    const std::uint32_t c = static_cast<std::uint32_t>(hconv.cols());
    const std::uint32_t cb = static_cast<std::uint32_t>(hconv.rows());
    std::vector<SparseBinMatrix> levels(ms + 1, SparseBinMatrix(cb, c));
    for (std::size_t j = 0; j < hconv.rows(); ++j)
        for (std::size_t i = 0; i < hconv.cols(); ++i)
            for (std::uint32_t s : hconv.cell(j, i)) levels[s].set(j, i);
    return ConvCode::from_blocks(c, c - cb, {std::move(levels)});
}

struct not_systematically_encodable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Dense inverse of the trailing (c-b) x (c-b) sub-matrix of H_0(t), as row
/// supports over the parity positions. Throws if singular.
inline std::vector<std::vector<std::uint32_t>> invert_trailing(const SparseBinMatrix& h0,
                                                               std::uint32_t b)
{
    const std::size_t k = h0.rows();  // c - b
    std::vector<std::vector<std::uint8_t>> aug(k, std::vector<std::uint8_t>(2 * k, 0));
    for (std::size_t r = 0; r < k; ++r) {
        for (std::uint32_t c : h0.row(r))
            if (c >= b) aug[r][c - b] = 1;
        aug[r][k + r] = 1;
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && !aug[pivot][col]) ++pivot;
        if (pivot == k)
            throw not_systematically_encodable(
                "trailing parity sub-matrix of H_0(t) is singular");
        std::swap(aug[col], aug[pivot]);
        for (std::size_t r = 0; r < k; ++r)
            if (r != col && aug[r][col])
                for (std::size_t j = 0; j < 2 * k; ++j) aug[r][j] ^= aug[col][j];
    }
    std::vector<std::vector<std::uint32_t>> inv(k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < k; ++j)
            if (aug[r][k + j]) inv[r].push_back(static_cast<std::uint32_t>(j));
    return inv;
}

}  // namespace detail

/// Systematic encoder: every length-c output block carries the b info bits
/// followed by the c - b parity bits solved from the time-t check rows.
/// Requires the trailing (c-b) x (c-b) sub-matrix of H_0(t) to be invertible
/// for every t; otherwise signals not_systematically_encodable.
inline std::vector<std::uint8_t> encode(const ConvCode& code, const std::vector<std::uint8_t>& info)
{
    const std::uint32_t c = code.c(), b = code.b(), cb = c - b;
    if (info.size() % b != 0)
        throw std::invalid_argument("encode: info length must be a multiple of b");

    std::vector<std::vector<std::vector<std::uint32_t>>> inv(code.Ts());
    for (std::uint32_t t = 0; t < code.Ts(); ++t)
        inv[t] = detail::invert_trailing(code.block(t, 0), b);

    const std::uint64_t n_blocks = info.size() / b;
    std::vector<std::uint8_t> stream(n_blocks * c, 0);
    std::vector<std::uint8_t> syndrome(cb);
    for (std::uint64_t t = 0; t < n_blocks; ++t) {
        for (std::uint32_t k = 0; k < b; ++k) stream[t * c + k] = info[t * b + k] & 1;
        // Partial syndrome from past blocks and the info part of H_0(t).
        std::fill(syndrome.begin(), syndrome.end(), 0);
        for (std::uint32_t a = 0; a < cb; ++a) {
            unsigned acc = 0;
            for (std::uint32_t i = 0; i <= code.ms() && i <= t; ++i) {
                const std::uint64_t vt = t - i;
                for (std::uint32_t col : code.block(t, i).row(a)) {
                    if (i == 0 && col >= b) continue;  // unknown parity positions
                    acc ^= stream[vt * c + col];
                }
            }
            syndrome[a] = static_cast<std::uint8_t>(acc);
        }
        const auto& m = inv[t % code.Ts()];
        for (std::uint32_t a = 0; a < cb; ++a) {
            unsigned p = 0;
            for (std::uint32_t j : m[a]) p ^= syndrome[j];
            stream[t * c + b + a] = static_cast<std::uint8_t>(p);
        }
    }
    return stream;
}

/// True iff every fully supported check row of the semi-infinite matrix is
/// satisfied by the stream, i.e. rows at times t < n_blocks. Rows touching
/// blocks beyond the stream end are not evaluated.
inline bool is_valid_stream(const ConvCode& code, const std::vector<std::uint8_t>& stream)
{
    const std::uint32_t c = code.c(), cb = c - code.b();
    if (stream.size() % c != 0)
        throw std::invalid_argument("is_valid_stream: length must be a multiple of c");
    const std::uint64_t n_blocks = stream.size() / c;
    for (std::uint64_t t = 0; t < n_blocks; ++t)
        for (std::uint32_t a = 0; a < cb; ++a) {
            unsigned acc = 0;
            for (std::uint32_t i = 0; i <= code.ms() && i <= t; ++i)
                for (std::uint32_t col : code.block(t, i).row(a)) acc ^= stream[(t - i) * c + col];
            if (acc & 1) return false;
        }
    return true;
}

namespace detail {

/// Entry of the doubly infinite banded matrix in scalar coordinates,
/// with check rows grouped by (time, row-in-block).
inline bool scalar_entry(const ConvCode& code, std::uint64_t check_t, std::uint32_t check_a,
                         std::uint64_t var_t, std::uint32_t var_col)
{
    if (var_t > check_t || check_t - var_t > code.ms()) return false;
    return code.block(check_t, static_cast<std::uint32_t>(check_t - var_t)).at(check_a, var_col);
}

}  // namespace detail

/// Groups ell consecutive time steps into one: T_s' = T_s / ell, b' = ell*b,
/// c' = ell*c. The materialized semi-infinite matrix is unchanged.
inline ConvCode reblock(const ConvCode& code, std::uint32_t ell)
{
    if (ell == 0 || code.Ts() % ell != 0)
        throw std::invalid_argument("reblock: ell must divide the period");
    if (ell == 1) return code;
    const std::uint32_t c2 = code.c() * ell, b2 = code.b() * ell;
    const std::uint32_t cb = code.c() - code.b(), cb2 = c2 - b2;
    const std::uint32_t Ts2 = code.Ts() / ell;
    // A check in the last fine row of a coarse block can reach back
    // ceil(ms/ell) coarse blocks; trailing all-zero levels get trimmed.
    const std::uint32_t ms2 = code.ms() == 0 ? 0 : (code.ms() + ell - 1) / ell;

    // Sample deep in the periodic steady state so truncation at t = 0 does
    // not blank out high-memory sub-blocks.
    const std::uint64_t base = std::uint64_t(ms2 + 1) * Ts2 * ell;

    std::vector<std::vector<SparseBinMatrix>> blocks(Ts2);
    for (std::uint32_t t2 = 0; t2 < Ts2; ++t2) {
        blocks[t2].assign(ms2 + 1, SparseBinMatrix(cb2, c2));
        for (std::uint32_t i2 = 0; i2 <= ms2; ++i2)
            for (std::uint32_t ar = 0; ar < ell; ++ar) {
                const std::uint64_t t = base + std::uint64_t(t2) * ell + ar;
                for (std::uint32_t a = 0; a < cb; ++a)
                    for (std::uint32_t ac = 0; ac < ell; ++ac) {
                        const std::uint64_t vt_block2 = base / ell + t2 - i2;
                        const std::uint64_t vt = vt_block2 * ell + ac;
                        if (vt > t) continue;
                        if (t - vt > code.ms()) continue;
                        for (std::uint32_t col = 0; col < code.c(); ++col)
                            if (detail::scalar_entry(code, t, a, vt, col))
                                blocks[t2][i2].set(ar * cb + a, ac * code.c() + col);
                    }
            }
    }
    return ConvCode::from_blocks(c2, b2, std::move(blocks));
}

/// Re-tiles the same semi-infinite matrix with blocks a factor finer:
/// T_s' = T_s * factor, c' = c / factor. Inverse of reblock on windows.
inline ConvCode split_blocks(const ConvCode& code, std::uint32_t factor)
{
    if (factor == 0 || code.c() % factor != 0 || (code.c() - code.b()) % factor != 0)
        throw std::invalid_argument("split_blocks: factor must divide both c and c-b");
    if (factor == 1) return code;
    const std::uint32_t c2 = code.c() / factor;
    const std::uint32_t cb = code.c() - code.b();
    const std::uint32_t cb2 = cb / factor;
    const std::uint32_t b2 = c2 - cb2;
    const std::uint32_t Ts2 = code.Ts() * factor;
    const std::uint32_t ms2 = (code.ms() + 1) * factor - 1;
    const std::uint64_t base = std::uint64_t(ms2 + 1) * code.Ts();  // coarse steps of padding

    std::vector<std::vector<SparseBinMatrix>> blocks(Ts2);
    for (std::uint32_t t2 = 0; t2 < Ts2; ++t2) {
        blocks[t2].assign(ms2 + 1, SparseBinMatrix(cb2, c2));
        const std::uint64_t fine_t = base * factor + t2;
        const std::uint64_t t = fine_t / factor;        // coarse check time
        const std::uint32_t ar = fine_t % factor;       // row sub-block within coarse block
        for (std::uint32_t i2 = 0; i2 <= ms2; ++i2) {
            const std::uint64_t fine_vt = fine_t - i2;
            const std::uint64_t vt = fine_vt / factor;  // coarse variable time
            const std::uint32_t ac = fine_vt % factor;
            if (vt > t || t - vt > code.ms()) continue;
            for (std::uint32_t a = 0; a < cb2; ++a)
                for (std::uint32_t col = 0; col < c2; ++col)
                    if (detail::scalar_entry(code, t, ar * cb2 + a, vt, ac * c2 + col))
                        blocks[t2][i2].set(a, col);
        }
    }
    return ConvCode::from_blocks(c2, b2, std::move(blocks));
}

}  // namespace gcldpc

#endif  // GCLDPC_CONVCODE_HPP
