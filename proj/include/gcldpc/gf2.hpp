#ifndef GCLDPC_GF2_HPP
#define GCLDPC_GF2_HPP

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcldpc {

/// Sparse matrix over GF(2), stored as per-row sorted column indices.
/// Entries are 0/1; duplicates are rejected at construction. Immutable
/// after construction apart from the builder-style set().
class SparseBinMatrix {
  public:
    SparseBinMatrix() = default;

    SparseBinMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), support_(rows) {}

    static SparseBinMatrix from_rows(std::size_t cols,
                                     std::vector<std::vector<std::uint32_t>> support)
    {
        SparseBinMatrix m;
        m.rows_ = support.size();
        m.cols_ = cols;
        for (auto& row : support) {
            std::sort(row.begin(), row.end());
            if (std::adjacent_find(row.begin(), row.end()) != row.end())
                throw std::invalid_argument("SparseBinMatrix: duplicate entry in row");
            if (!row.empty() && row.back() >= cols)
                throw std::invalid_argument("SparseBinMatrix: column index out of range");
        }
        m.support_ = std::move(support);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const std::vector<std::uint32_t>& row(std::size_t r) const { return support_[r]; }

    bool at(std::size_t r, std::size_t c) const
    {
        const auto& s = support_[r];
        return std::binary_search(s.begin(), s.end(), static_cast<std::uint32_t>(c));
    }

    /// Sets entry (r, c) to 1. Idempotent.
    void set(std::size_t r, std::size_t c)
    {
        if (r >= rows_ || c >= cols_)
            throw std::invalid_argument("SparseBinMatrix::set: index out of range");
        auto& s = support_[r];
        auto it = std::lower_bound(s.begin(), s.end(), static_cast<std::uint32_t>(c));
        if (it == s.end() || *it != c)
            s.insert(it, static_cast<std::uint32_t>(c));
    }

    std::size_t nnz() const
    {
        std::size_t n = 0;
        for (const auto& s : support_) n += s.size();
        return n;
    }

    bool row_empty(std::size_t r) const { return support_[r].empty(); }

    SparseBinMatrix transpose() const
    {
        SparseBinMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::uint32_t c : support_[r])
                t.support_[c].push_back(static_cast<std::uint32_t>(r));
        return t;
    }

    bool operator==(const SparseBinMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && support_ == o.support_;
    }
    bool operator!=(const SparseBinMatrix& o) const { return !(*this == o); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<std::uint32_t>> support_;
};

/// Sparse matrix over the nonnegative integers; carrier for proto-matrices
/// and graph covers where parallel edges (entries > 1) are meaningful.
class SparseIntMatrix {
  public:
    SparseIntMatrix() = default;

    SparseIntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), rows_data_(rows) {}

    static SparseIntMatrix from_dense(const std::vector<std::vector<std::uint32_t>>& dense,
                                      std::size_t cols)
    {
        SparseIntMatrix m(dense.size(), cols);
        for (std::size_t r = 0; r < dense.size(); ++r) {
            if (dense[r].size() != cols)
                throw std::invalid_argument("SparseIntMatrix: ragged dense input");
            for (std::size_t c = 0; c < cols; ++c)
                if (dense[r][c] != 0) m.rows_data_[r].push_back({static_cast<std::uint32_t>(c), dense[r][c]});
        }
        return m;
    }

    static SparseIntMatrix from_bin(const SparseBinMatrix& b)
    {
        SparseIntMatrix m(b.rows(), b.cols());
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::uint32_t c : b.row(r)) m.rows_data_[r].push_back({c, 1});
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    struct Entry {
        std::uint32_t col;
        std::uint32_t value;
        bool operator==(const Entry& o) const { return col == o.col && value == o.value; }
    };

    const std::vector<Entry>& row(std::size_t r) const { return rows_data_[r]; }

    std::uint32_t at(std::size_t r, std::size_t c) const
    {
        for (const auto& e : rows_data_[r])
            if (e.col == c) return e.value;
        return 0;
    }

    void add(std::size_t r, std::size_t c, std::uint32_t v)
    {
        if (r >= rows_ || c >= cols_)
            throw std::invalid_argument("SparseIntMatrix::add: index out of range");
        if (v == 0) return;
        auto& row = rows_data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.col < col; });
        if (it != row.end() && it->col == c)
            it->value += v;
        else
            row.insert(it, {static_cast<std::uint32_t>(c), v});
    }

    std::size_t nnz() const
    {
        std::size_t n = 0;
        for (const auto& r : rows_data_) n += r.size();
        return n;
    }

    bool has_entry_above_one() const
    {
        for (const auto& r : rows_data_)
            for (const auto& e : r)
                if (e.value > 1) return true;
        return false;
    }

    /// Support as a GF(2)/graph matrix. With gf2_cancel the value is reduced
    /// mod 2 (coinciding parallel edges cancel); otherwise any nonzero count
    /// maps to a single 1.
    SparseBinMatrix as_binary(bool gf2_cancel = false) const
    {
        SparseBinMatrix b(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& e : rows_data_[r]) {
                std::uint32_t v = gf2_cancel ? (e.value & 1u) : (e.value != 0 ? 1u : 0u);
                if (v) b.set(r, e.col);
            }
        return b;
    }

    bool operator==(const SparseIntMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && rows_data_ == o.rows_data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<Entry>> rows_data_;
};

/// Row/column degree multisets of a Tanner graph, plus the (J, K) pair when
/// the graph is regular.
struct DegreeProfile {
    std::vector<std::size_t> col_degrees;  // sorted ascending, size = cols
    std::vector<std::size_t> row_degrees;  // sorted ascending, size = rows
    bool regular = false;
    std::size_t J = 0;  // uniform column degree, valid when regular
    std::size_t K = 0;  // uniform row degree, valid when regular

    bool operator==(const DegreeProfile& o) const
    {
        return col_degrees == o.col_degrees && row_degrees == o.row_degrees;
    }
};

inline DegreeProfile degree_profile(const SparseBinMatrix& m)
{
    DegreeProfile p;
    p.row_degrees.reserve(m.rows());
    std::vector<std::size_t> cd(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        p.row_degrees.push_back(m.row(r).size());
        for (std::uint32_t c : m.row(r)) ++cd[c];
    }
    p.col_degrees = std::move(cd);
    std::sort(p.col_degrees.begin(), p.col_degrees.end());
    std::sort(p.row_degrees.begin(), p.row_degrees.end());
    bool cu = !p.col_degrees.empty() && p.col_degrees.front() == p.col_degrees.back();
    bool ru = !p.row_degrees.empty() && p.row_degrees.front() == p.row_degrees.back();
    if (cu && ru) {
        p.regular = true;
        p.J = p.col_degrees.front();
        p.K = p.row_degrees.front();
    }
    return p;
}

inline DegreeProfile degree_profile(const SparseIntMatrix& m)
{
    DegreeProfile p;
    p.row_degrees.reserve(m.rows());
    std::vector<std::size_t> cd(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t rd = 0;
        for (const auto& e : m.row(r)) {
            rd += e.value;
            cd[e.col] += e.value;
        }
        p.row_degrees.push_back(rd);
    }
    p.col_degrees = std::move(cd);
    std::sort(p.col_degrees.begin(), p.col_degrees.end());
    std::sort(p.row_degrees.begin(), p.row_degrees.end());
    bool cu = !p.col_degrees.empty() && p.col_degrees.front() == p.col_degrees.back();
    bool ru = !p.row_degrees.empty() && p.row_degrees.front() == p.row_degrees.back();
    if (cu && ru) {
        p.regular = true;
        p.J = p.col_degrees.front();
        p.K = p.row_degrees.front();
    }
    return p;
}

namespace detail {

/// Word-packed copy of the rows, for elimination.
inline std::vector<std::vector<std::uint64_t>> pack_rows(const SparseBinMatrix& m)
{
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::uint32_t c : m.row(r)) rows[r][c >> 6] |= std::uint64_t(1) << (c & 63);
    return rows;
}

}  // namespace detail

/// Rank over GF(2), by word-packed Gaussian elimination.
inline std::size_t gf2_rank(const SparseBinMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto rows = detail::pack_rows(m);
    const std::size_t words = rows.empty() ? 0 : rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t bit = std::uint64_t(1) << (col & 63);
        std::size_t pivot = rank;
        while (pivot < m.rows() && !(rows[pivot][w] & bit)) ++pivot;
        if (pivot == m.rows()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != rank && (rows[r][w] & bit))
                for (std::size_t k = w; k < words; ++k) rows[r][k] ^= rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Basis of the right nullspace {v : M v^T = 0}, one support list per basis
/// vector. Nullspace dimension is cols - rank.
inline std::vector<std::vector<std::uint32_t>> gf2_nullspace_basis(const SparseBinMatrix& m)
{
    const std::size_t n = m.cols();
    auto rows = detail::pack_rows(m);
    const std::size_t words = (n + 63) / 64;
    if (rows.empty()) rows.emplace_back(words, 0);

    std::vector<std::int64_t> pivot_row_of_col(n, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t bit = std::uint64_t(1) << (col & 63);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & bit)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r][w] & bit))
                for (std::size_t k = 0; k < words; ++k) rows[r][k] ^= rows[rank][k];
        pivot_row_of_col[col] = static_cast<std::int64_t>(rank);
        ++rank;
    }

    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (pivot_row_of_col[free_col] >= 0) continue;
        std::vector<std::uint32_t> v;
        v.push_back(static_cast<std::uint32_t>(free_col));
        for (std::size_t col = 0; col < n; ++col) {
            auto pr = pivot_row_of_col[col];
            if (pr < 0) continue;
            if (rows[static_cast<std::size_t>(pr)][free_col >> 6] & (std::uint64_t(1) << (free_col & 63)))
                v.push_back(static_cast<std::uint32_t>(col));
        }
        std::sort(v.begin(), v.end());
        basis.push_back(std::move(v));
    }
    return basis;
}

inline bool is_in_nullspace(const SparseBinMatrix& m, const std::vector<std::uint8_t>& v)
{
    if (v.size() != m.cols())
        throw std::invalid_argument("is_in_nullspace: vector length mismatch");
    for (std::size_t r = 0; r < m.rows(); ++r) {
        unsigned parity = 0;
        for (std::uint32_t c : m.row(r)) parity ^= (v[c] & 1u);
        if (parity) return false;
    }
    return true;
}

inline std::vector<std::uint8_t> support_to_bits(const std::vector<std::uint32_t>& support,
                                                 std::size_t n)
{
    std::vector<std::uint8_t> v(n, 0);
    for (std::uint32_t i : support) v[i] = 1;
    return v;
}

}  // namespace gcldpc

#endif  // GCLDPC_GF2_HPP
