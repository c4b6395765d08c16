#ifndef GCLDPC_POLY_HPP
#define GCLDPC_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gf2.hpp"

namespace gcldpc {

/// Matrix of binary polynomials, each cell a set of exponents. With a
/// modulus r the entries live in F2[X]/(X^r - 1) (quasi-cyclic domain);
/// without one (modulus == 0) they live in F2[D] (convolutional domain).
class PolyMatrix {
  public:
    PolyMatrix() = default;

    PolyMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus)
        : rows_(rows), cols_(cols), modulus_(modulus), cells_(rows * cols) {}

    static PolyMatrix from_cells(std::size_t rows, std::size_t cols, std::uint32_t modulus,
                                 std::vector<std::vector<std::uint32_t>> cells)
    {
        if (cells.size() != rows * cols)
            throw std::invalid_argument("PolyMatrix: cell count mismatch");
        PolyMatrix m(rows, cols, modulus);
        for (auto& cell : cells) {
            std::sort(cell.begin(), cell.end());
            if (std::adjacent_find(cell.begin(), cell.end()) != cell.end())
                throw std::invalid_argument("PolyMatrix: duplicate exponent in cell");
            if (modulus > 0 && !cell.empty() && cell.back() >= modulus)
                throw std::invalid_argument("PolyMatrix: exponent >= modulus");
        }
        m.cells_ = std::move(cells);
        return m;
    }

    /// Convenience builder for all-monomial matrices (one exponent per cell),
    /// given row-major exponents.
    static PolyMatrix monomials(std::size_t rows, std::size_t cols, std::uint32_t modulus,
                                const std::vector<std::vector<std::uint32_t>>& exps)
    {
        if (exps.size() != rows)
            throw std::invalid_argument("PolyMatrix::monomials: row count mismatch");
        std::vector<std::vector<std::uint32_t>> cells;
        cells.reserve(rows * cols);
        for (const auto& row : exps) {
            if (row.size() != cols)
                throw std::invalid_argument("PolyMatrix::monomials: column count mismatch");
            for (std::uint32_t e : row) cells.push_back({e});
        }
        return from_cells(rows, cols, modulus, std::move(cells));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// 0 means no modulus (D-domain).
    std::uint32_t modulus() const { return modulus_; }

    const std::vector<std::uint32_t>& cell(std::size_t r, std::size_t c) const
    {
        return cells_[r * cols_ + c];
    }

    void set_cell(std::size_t r, std::size_t c, std::vector<std::uint32_t> exps)
    {
        std::sort(exps.begin(), exps.end());
        if (std::adjacent_find(exps.begin(), exps.end()) != exps.end())
            throw std::invalid_argument("PolyMatrix: duplicate exponent in cell");
        if (modulus_ > 0 && !exps.empty() && exps.back() >= modulus_)
            throw std::invalid_argument("PolyMatrix: exponent >= modulus");
        cells_[r * cols_ + c] = std::move(exps);
    }

    std::uint32_t max_exponent() const
    {
        std::uint32_t m = 0;
        for (const auto& cell : cells_)
            if (!cell.empty()) m = std::max(m, cell.back());
        return m;
    }

    bool row_is_empty(std::size_t r) const
    {
        for (std::size_t c = 0; c < cols_; ++c)
            if (!cells_[r * cols_ + c].empty()) return false;
        return true;
    }

    std::uint32_t row_min_exponent(std::size_t r) const
    {
        bool any = false;
        std::uint32_t m = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            const auto& cell = cells_[r * cols_ + c];
            if (cell.empty()) continue;
            if (!any || cell.front() < m) m = cell.front();
            any = true;
        }
        if (!any) throw std::invalid_argument("PolyMatrix: empty row has no minimum exponent");
        return m;
    }

    bool operator==(const PolyMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && modulus_ == o.modulus_ && cells_ == o.cells_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::uint32_t modulus_ = 0;
    std::vector<std::vector<std::uint32_t>> cells_;
};

// Circulant convention used throughout: I_s is the s-times left-shifted
// r x r identity, [I_s]_{u,u'} = 1 iff u' = (u - s) mod r. Acting on a
// coefficient vector, I_s delays by s, matching X^s under the embedding
// below. The mirror convention yields different matrices but isomorphic
// graphs; this one is fixed so fixtures are bit-exact.

/// Scalar expansion of a quasi-cyclic polynomial matrix: each exponent s in
/// cell (j, i) contributes the circulant I_s at block (j, i). Result is
/// (rows*r) x (cols*r). Distinct exponents in one cell never collide, so the
/// expansion is duplicate-free.
inline SparseBinMatrix expand_poly(const PolyMatrix& m)
{
    const std::uint32_t r = m.modulus();
    if (r == 0) throw std::invalid_argument("expand_poly: matrix has no modulus");
    SparseBinMatrix out(m.rows() * r, m.cols() * r);
    for (std::size_t j = 0; j < m.rows(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i)
            for (std::uint32_t s : m.cell(j, i))
                for (std::uint32_t u = 0; u < r; ++u)
                    out.set(j * r + u, i * r + ((u + r - s) % r));
    return out;
}

/// Coefficient embedding of a polynomial vector: component i's coefficient
/// of X^u lands at scalar position i*r + u.
inline std::vector<std::uint8_t> expand_poly_vector(
    const std::vector<std::vector<std::uint32_t>>& v, std::uint32_t r)
{
    std::vector<std::uint8_t> out(v.size() * r, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::uint32_t e : v[i]) {
            if (e >= r) throw std::invalid_argument("expand_poly_vector: exponent >= modulus");
            out[i * r + e] ^= 1;
        }
    return out;
}

/// Syndrome of a polynomial vector against a quasi-cyclic polynomial matrix:
/// coefficient u of row j is sum_i sum_s v_i[(u - s) mod r], the schoolbook
/// product mod X^r - 1. Returns true iff the full syndrome is zero, i.e.
/// M(X) v(X)^T = 0 mod (X^r - 1). Agrees with expand_poly on the embedding
/// expand_poly_vector.
inline bool poly_syndrome_is_zero(const PolyMatrix& m,
                                  const std::vector<std::vector<std::uint32_t>>& v)
{
    const std::uint32_t r = m.modulus();
    if (r == 0) throw std::invalid_argument("poly_syndrome_is_zero: matrix has no modulus");
    if (v.size() != m.cols())
        throw std::invalid_argument("poly_syndrome_is_zero: vector length mismatch");
    std::vector<std::vector<std::uint8_t>> coeffs(v.size(), std::vector<std::uint8_t>(r, 0));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::uint32_t e : v[i]) coeffs[i][e % r] ^= 1;
    for (std::size_t j = 0; j < m.rows(); ++j)
        for (std::uint32_t u = 0; u < r; ++u) {
            unsigned parity = 0;
            for (std::size_t i = 0; i < m.cols(); ++i)
                for (std::uint32_t s : m.cell(j, i)) parity ^= coeffs[i][(u + r - s % r) % r];
            if (parity) return false;
        }
    return true;
}

}  // namespace gcldpc

#endif  // GCLDPC_POLY_HPP
