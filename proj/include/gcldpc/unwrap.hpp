#ifndef GCLDPC_UNWRAP_HPP
#define GCLDPC_UNWRAP_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "convcode.hpp"
#include "gf2.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace gcldpc {

/// Parameters of the step-size-ell diagonal cut of an m x n matrix:
/// eta = gcd(m, n); each step moves c' = ell*n/eta columns right and
/// c' - b' = ell*m/eta rows down. The cut code has syndrome former memory
/// m_s' = eta/ell - 1, period T_s' = eta/ell, and constraint length
/// nu_s' = (m_s'+1)*c' = n for every legal ell.
struct CutParams {
    std::uint64_t eta = 0;
    std::uint64_t ell = 0;
    std::uint64_t c_prime = 0;
    std::uint64_t b_prime = 0;
    std::uint64_t ms_prime = 0;
    std::uint64_t Ts_prime = 0;
    std::uint64_t nu_s_prime = 0;
};

inline CutParams cut_params(std::uint64_t rows, std::uint64_t cols, std::uint64_t ell)
{
    if (rows == 0 || cols == 0 || rows >= cols)
        throw std::invalid_argument("cut_params: need 0 < rows < cols");
    const std::uint64_t eta = std::gcd(rows, cols);
    if (ell == 0 || eta % ell != 0)
        throw std::invalid_argument("cut_params: ell must divide gcd(rows, cols)");
    CutParams p;
    p.eta = eta;
    p.ell = ell;
    p.c_prime = ell * (cols / eta);
    p.b_prime = ell * ((cols - rows) / eta);
    p.ms_prime = eta / ell - 1;
    p.Ts_prime = eta / ell;
    p.nu_s_prime = (p.ms_prime + 1) * p.c_prime;
    return p;
}

/// An ordered decomposition H = H_0 + ... + H_{|L|-1} over Z with disjoint
/// supports; one period of a JFZ unwrapping.
struct Decomposition {
    std::vector<SparseBinMatrix> parts;

    void validate() const
    {
        if (parts.empty()) throw std::invalid_argument("Decomposition: no parts");
        for (const auto& p : parts)
            if (p.rows() != parts[0].rows() || p.cols() != parts[0].cols())
                throw std::invalid_argument("Decomposition: part dimension mismatch");
        // Disjoint supports: the binary sum must carry the combined nnz.
        std::size_t nnz = 0;
        SparseBinMatrix sum(parts[0].rows(), parts[0].cols());
        for (const auto& p : parts) {
            nnz += p.nnz();
            for (std::size_t r = 0; r < p.rows(); ++r)
                for (std::uint32_t c : p.row(r)) sum.set(r, c);
        }
        if (sum.nnz() != nnz)
            throw std::invalid_argument("Decomposition: overlapping part supports");
    }

    SparseBinMatrix sum() const
    {
        SparseBinMatrix s(parts[0].rows(), parts[0].cols());
        for (const auto& p : parts)
            for (std::size_t r = 0; r < p.rows(); ++r)
                for (std::uint32_t c : p.row(r)) s.set(r, c);
        return s;
    }
};

/// Tanner unwrapping: drop the mod X^r - 1 computations. Exponent sets are
/// unchanged; the result is the time-invariant D-domain matrix with
/// m_s = max exponent.
inline PolyMatrix tanner_unwrap(const PolyMatrix& hqc)
{
    if (hqc.modulus() == 0)
        throw std::invalid_argument("tanner_unwrap: matrix has no modulus");
    std::vector<std::vector<std::uint32_t>> cells;
    cells.reserve(hqc.rows() * hqc.cols());
    for (std::size_t j = 0; j < hqc.rows(); ++j)
        for (std::size_t i = 0; i < hqc.cols(); ++i) cells.push_back(hqc.cell(j, i));
    return PolyMatrix::from_cells(hqc.rows(), hqc.cols(), 0, std::move(cells));
}

/// Wraps a D-domain polynomial vector around into the X-domain: exponents
/// are reduced mod r, coefficients folding over GF(2).
inline std::vector<std::vector<std::uint32_t>> tanner_wrap(
    const std::vector<std::vector<std::uint32_t>>& v, std::uint32_t r)
{
    if (r == 0) throw std::invalid_argument("tanner_wrap: modulus must be positive");
    std::vector<std::vector<std::uint32_t>> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<std::uint8_t> coeff(r, 0);
        for (std::uint32_t e : v[i]) coeff[e % r] ^= 1;
        for (std::uint32_t u = 0; u < r; ++u)
            if (coeff[u]) out[i].push_back(u);
    }
    return out;
}

/// Stream form of the wrap: a block-striped scalar stream (n symbols per
/// block) folds onto the n*r scalar positions of the quasi-cyclic code,
/// position i*r + u collecting all block times congruent to u mod r.
inline std::vector<std::uint8_t> tanner_wrap_stream(const std::vector<std::uint8_t>& stream,
                                                    std::size_t n, std::uint32_t r)
{
    if (n == 0 || stream.size() % n != 0)
        throw std::invalid_argument("tanner_wrap_stream: length must be a multiple of n");
    std::vector<std::uint8_t> out(n * r, 0);
    const std::size_t blocks = stream.size() / n;
    for (std::size_t t = 0; t < blocks; ++t)
        for (std::size_t i = 0; i < n; ++i)
            out[i * r + (t % r)] ^= stream[t * n + i] & 1;
    return out;
}

/// Divides each row of a D-domain matrix by D^e, e the row's minimum
/// exponent. The convolutional code is unchanged; m_s usually shrinks.
inline PolyMatrix reduce_memory(const PolyMatrix& hconv)
{
    if (hconv.modulus() != 0)
        throw std::invalid_argument("reduce_memory: expected a D-domain matrix");
    std::vector<std::vector<std::uint32_t>> cells;
    cells.reserve(hconv.rows() * hconv.cols());
    for (std::size_t j = 0; j < hconv.rows(); ++j) {
        if (hconv.row_is_empty(j))
            throw std::invalid_argument("reduce_memory: empty row");
        const std::uint32_t e = hconv.row_min_exponent(j);
        for (std::size_t i = 0; i < hconv.cols(); ++i) {
            auto cell = hconv.cell(j, i);
            for (auto& s : cell) s -= e;
            cells.push_back(std::move(cell));
        }
    }
    return PolyMatrix::from_cells(hconv.rows(), hconv.cols(), 0, std::move(cells));
}

/// Staircase partition of H: repeatedly move c' columns right, then c' - b'
/// rows down. H_0 takes everything on and below the cut (row group
/// k = floor(j / (c'-b')) keeps columns < (k+1)*c'), H_1 the upper-right
/// remainder.
inline Decomposition jfz_diagonal_cut(const SparseBinMatrix& h, std::uint64_t ell)
{
    const CutParams p = cut_params(h.rows(), h.cols(), ell);
    const std::uint64_t step_rows = p.c_prime - p.b_prime;
    SparseBinMatrix h0(h.rows(), h.cols()), h1(h.rows(), h.cols());
    for (std::size_t j = 0; j < h.rows(); ++j) {
        const std::uint64_t boundary = (j / step_rows + 1) * p.c_prime;
        for (std::uint32_t c : h.row(j)) {
            if (c < boundary)
                h0.set(j, c);
            else
                h1.set(j, c);
        }
    }
    return Decomposition{{std::move(h0), std::move(h1)}};
}

/// Random cut: each nonzero of H is assigned to H_0 or H_1 by one draw of a
/// counter-based generator, in row-major support order. Uniform per nonzero;
/// reproducible across platforms for a fixed seed.
inline Decomposition jfz_random_cut(const SparseBinMatrix& h, std::uint64_t seed)
{
    CounterRng rng(CounterRng::derive_key(seed, 0x6a667a, h.rows() ^ (h.cols() << 24)));
    SparseBinMatrix h0(h.rows(), h.cols()), h1(h.rows(), h.cols());
    for (std::size_t j = 0; j < h.rows(); ++j)
        for (std::uint32_t c : h.row(j)) {
            if (rng.next_bit())
                h1.set(j, c);
            else
                h0.set(j, c);
        }
    return Decomposition{{std::move(h0), std::move(h1)}};
}

/// JFZ unwrapping of a decomposition: the time-invariant view with one
/// m x n block per time step and H_i(t) = H_i, memory |L| - 1 (trailing
/// all-zero parts trimmed). Use split_blocks to expose the periodic
/// time-varying view of a diagonal cut.
inline ConvCode jfz_unwrap(const Decomposition& d)
{
    d.validate();
    const std::size_t m = d.parts[0].rows();
    const std::size_t n = d.parts[0].cols();
    if (m >= n) throw std::invalid_argument("jfz_unwrap: need more columns than rows");
    std::vector<std::vector<SparseBinMatrix>> blocks(1);
    blocks[0] = d.parts;
    return ConvCode::from_blocks(static_cast<std::uint32_t>(n),
                                 static_cast<std::uint32_t>(n - m), std::move(blocks));
}

/// Diagonal cut followed by JFZ unwrapping, exposed in the periodic
/// time-varying blocking of the cut: b', c', T_s' = eta/ell.
inline ConvCode jfz_diagonal_unwrap(const SparseBinMatrix& h, std::uint64_t ell)
{
    const CutParams p = cut_params(h.rows(), h.cols(), ell);
    return split_blocks(jfz_unwrap(jfz_diagonal_cut(h, ell)),
                        static_cast<std::uint32_t>(p.Ts_prime));
}

struct PaddedMatrix {
    SparseBinMatrix matrix;
    std::vector<std::uint8_t> puncture_mask;  // 1 = inserted all-zero column, untransmitted
};

/// Inserts all-zero columns so that gcd(m, n') allows a diagonal cut.
/// positions are column indices in the widened matrix; the matching
/// variable nodes are punctured (never transmitted).
inline PaddedMatrix pad_for_cut(const SparseBinMatrix& h,
                                const std::vector<std::uint32_t>& positions)
{
    const std::size_t new_cols = h.cols() + positions.size();
    std::vector<std::uint8_t> mask(new_cols, 0);
    for (std::uint32_t p : positions) {
        if (p >= new_cols) throw std::invalid_argument("pad_for_cut: position out of bounds");
        if (mask[p]) throw std::invalid_argument("pad_for_cut: duplicate position");
        mask[p] = 1;
    }
    std::vector<std::uint32_t> new_index(h.cols());
    std::size_t src = 0;
    for (std::size_t c = 0; c < new_cols; ++c)
        if (!mask[c]) new_index[src++] = static_cast<std::uint32_t>(c);

    SparseBinMatrix widened(h.rows(), new_cols);
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::uint32_t c : h.row(r)) widened.set(r, new_index[c]);
    return {std::move(widened), std::move(mask)};
}

}  // namespace gcldpc

#endif  // GCLDPC_UNWRAP_HPP
