#ifndef GCLDPC_TESTS_SUPPORT_HPP
#define GCLDPC_TESTS_SUPPORT_HPP

// Shared fixtures and independent oracles for the test suites. The oracles
// here deliberately use different algorithms from the library paths they
// check (dense elimination, vertex-rooted cycle DFS, exhaustive ML).

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "gcldpc/gcldpc.hpp"

namespace testsup {

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// Circulant shift exponents of the (3,5)-regular quasi-cyclic family
/// first suggested by Tanner; row j, column i carries 5^j * 2^i mod 31.
inline std::vector<std::vector<std::uint32_t>> tanner_shifts()
{
    return {{1, 2, 4, 8, 16}, {5, 10, 20, 9, 18}, {25, 19, 7, 14, 28}};
}

inline gcldpc::PolyMatrix tanner_poly(std::uint32_t r)
{
    return gcldpc::PolyMatrix::monomials(3, 5, r, tanner_shifts());
}

/// Rate-1/3 quasi-cyclic toy with r = 7: [[X, X^2, X^4], [X^6, X^5, X^3]].
inline gcldpc::PolyMatrix r7_poly()
{
    return gcldpc::PolyMatrix::monomials(2, 3, 7, {{1, 2, 4}, {6, 5, 3}});
}

/// The 5 x 10 rate-1/2 (3,6)-regular block code used for the diagonal-cut
/// walkthrough.
inline gcldpc::SparseBinMatrix example1_matrix()
{
    const std::vector<std::vector<std::uint8_t>> dense = {
        {0, 0, 1, 1, 1, 0, 1, 1, 1, 0},
        {0, 1, 1, 1, 0, 1, 0, 0, 1, 1},
        {1, 1, 1, 0, 0, 1, 1, 1, 0, 0},
        {1, 0, 0, 1, 1, 0, 0, 1, 1, 1},
        {1, 1, 0, 0, 1, 1, 1, 0, 0, 1}};
    gcldpc::SparseBinMatrix h(5, 10);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 10; ++c)
            if (dense[r][c]) h.set(r, c);
    return h;
}

/// Extended Hamming [8,4,4] parity-check matrix.
inline gcldpc::SparseBinMatrix hamming84()
{
    return gcldpc::SparseBinMatrix::from_rows(
        8, {{0, 1, 2, 3, 4, 5, 6, 7}, {4, 5, 6, 7}, {2, 3, 6, 7}, {1, 3, 5, 7}});
}

/// Systematically encodable time-invariant rate-1/3 toy with m_s = 2,
/// nu_s = 9.
inline gcldpc::ConvCode toy_rate13()
{
    auto mk = [](std::vector<std::vector<std::uint32_t>> rows) {
        return gcldpc::SparseBinMatrix::from_rows(3, std::move(rows));
    };
    std::vector<std::vector<gcldpc::SparseBinMatrix>> blocks(1);
    blocks[0] = {mk({{0, 1}, {1, 2}}), mk({{0, 2}, {0}}), mk({{1}, {0, 2}})};
    return gcldpc::ConvCode::from_blocks(3, 1, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Deterministic random graphs
// ---------------------------------------------------------------------------

/// (J,K)-regular parity-check matrix by the configuration model with a
/// duplicate-repair pass; deterministic for a fixed seed.
inline gcldpc::SparseBinMatrix random_regular_ldpc(std::size_t m, std::size_t n, std::size_t J,
                                                   std::size_t K, std::uint64_t seed)
{
    if (n * J != m * K) throw std::invalid_argument("random_regular_ldpc: nJ != mK");
    const std::size_t e = n * J;
    gcldpc::CounterRng rng(gcldpc::CounterRng::derive_key(seed, 0x7265677561726c, n ^ (m << 20)));

    std::vector<std::uint32_t> perm(e);
    for (std::size_t i = 0; i < e; ++i) perm[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = e; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.next_below(i)]);

    auto var_of = [J](std::size_t socket) { return socket / J; };
    auto check_of = [K](std::uint32_t socket) { return socket / K; };

    for (std::size_t pass = 0; pass < 100000; ++pass) {
        // Find one duplicate (var, check) pair, if any.
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_seen;
        std::size_t dup_socket = e;
        for (std::size_t i = 0; i < e && dup_socket == e; ++i) {
            auto key = std::make_pair(var_of(i), check_of(perm[i]));
            auto [it, inserted] = first_seen.emplace(key, i);
            if (!inserted) dup_socket = i;
        }
        if (dup_socket == e) {
            gcldpc::SparseBinMatrix h(m, n);
            for (std::size_t i = 0; i < e; ++i)
                h.set(check_of(perm[i]), var_of(i));
            return h;
        }
        std::swap(perm[dup_socket], perm[rng.next_below(e)]);
    }
    throw std::runtime_error("random_regular_ldpc: repair did not converge");
}

/// Sparse random binary matrix with roughly density*rows*cols ones.
inline gcldpc::SparseBinMatrix random_sparse(std::size_t m, std::size_t n, double density,
                                             std::uint64_t seed)
{
    gcldpc::CounterRng rng(gcldpc::CounterRng::derive_key(seed, 0x73706172, n + (m << 24)));
    gcldpc::SparseBinMatrix h(m, n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng.next_unit() < density) h.set(r, c);
    return h;
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Dense GF(2) Gaussian elimination, independent of the packed-word path.
inline std::size_t dense_rank_oracle(const gcldpc::SparseBinMatrix& mat)
{
    std::vector<std::vector<std::uint8_t>> a(mat.rows(), std::vector<std::uint8_t>(mat.cols(), 0));
    for (std::size_t r = 0; r < mat.rows(); ++r)
        for (std::uint32_t c : mat.row(r)) a[r][c] = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < mat.cols() && rank < mat.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < mat.rows() && !a[pivot][col]) ++pivot;
        if (pivot == mat.rows()) continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = 0; r < mat.rows(); ++r)
            if (r != rank && a[r][col])
                for (std::size_t k = 0; k < mat.cols(); ++k) a[r][k] ^= a[rank][k];
        ++rank;
    }
    return rank;
}

/// Exhaustive simple-cycle counter on the bipartite Tanner graph: DFS rooted
/// at every vertex (variables and checks alike), restricted to vertices
/// above the root in a global order, each cycle halved for direction.
inline std::map<std::uint32_t, std::uint64_t> cycle_count_oracle(const gcldpc::SparseBinMatrix& h,
                                                                 std::uint32_t max_len)
{
    const std::size_t nv = h.cols(), ncheck = h.rows();
    const std::size_t n = nv + ncheck;
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::size_t r = 0; r < ncheck; ++r)
        for (std::uint32_t c : h.row(r)) {
            adj[c].push_back(static_cast<std::uint32_t>(nv + r));
            adj[nv + r].push_back(c);
        }

    std::map<std::uint32_t, std::uint64_t> doubled;
    std::vector<std::uint8_t> used(n, 0);
    std::vector<std::uint32_t> stack;

    struct Dfs {
        const std::vector<std::vector<std::uint32_t>>& adj;
        std::vector<std::uint8_t>& used;
        std::map<std::uint32_t, std::uint64_t>& doubled;
        std::uint32_t root, max_len;

        void run(std::uint32_t u, std::uint32_t depth)
        {
            for (std::uint32_t w : adj[u]) {
                if (w == root) {
                    if (depth >= 3) ++doubled[depth + 1];
                    continue;
                }
                if (w < root || used[w] || depth + 1 >= max_len) continue;
                used[w] = 1;
                run(w, depth + 1);
                used[w] = 0;
            }
        }
    };

    for (std::uint32_t root = 0; root < n; ++root) {
        Dfs dfs{adj, used, doubled, root, max_len};
        used[root] = 1;
        dfs.run(root, 0);
        used[root] = 0;
    }
    std::map<std::uint32_t, std::uint64_t> out;
    for (auto [len, cnt] : doubled)
        if (len <= max_len) out[len] = cnt / 2;
    return out;
}

/// Exhaustive maximum-likelihood decoder over an enumerated codebook,
/// correlation metric, first-found tie-break.
struct MlOracle {
    std::vector<std::vector<std::uint8_t>> codewords;

    explicit MlOracle(const gcldpc::SparseBinMatrix& h)
    {
        const auto basis = gcldpc::gf2_nullspace_basis(h);
        if (basis.size() > 20) throw std::invalid_argument("MlOracle: codebook too large");
        const std::size_t n = h.cols();
        for (std::size_t mask = 0; mask < (std::size_t(1) << basis.size()); ++mask) {
            std::vector<std::uint8_t> cw(n, 0);
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (mask & (std::size_t(1) << b))
                    for (std::uint32_t i : basis[b]) cw[i] ^= 1;
            codewords.push_back(std::move(cw));
        }
    }

    std::vector<std::uint8_t> decode(const std::vector<double>& llr) const
    {
        double best = -1e300;
        const std::vector<std::uint8_t>* best_cw = nullptr;
        for (const auto& cw : codewords) {
            double metric = 0.0;
            for (std::size_t i = 0; i < cw.size(); ++i) metric += cw[i] ? -llr[i] : llr[i];
            if (metric > best) {
                best = metric;
                best_cw = &cw;
            }
        }
        return *best_cw;
    }
};

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

/// Row supports as a sorted multiset, for row-permutation-invariant
/// comparison of matrices.
inline std::vector<std::vector<std::uint32_t>> canonical_rows(const gcldpc::SparseBinMatrix& m)
{
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) rows.push_back(m.row(r));
    std::sort(rows.begin(), rows.end());
    return rows;
}

/// Equal row spaces over GF(2): rank(A) == rank(B) == rank([A; B]).
inline bool same_row_space(const gcldpc::SparseBinMatrix& a, const gcldpc::SparseBinMatrix& b)
{
    if (a.cols() != b.cols()) return false;
    std::vector<std::vector<std::uint32_t>> stacked;
    for (std::size_t r = 0; r < a.rows(); ++r) stacked.push_back(a.row(r));
    for (std::size_t r = 0; r < b.rows(); ++r) stacked.push_back(b.row(r));
    const auto ab = gcldpc::SparseBinMatrix::from_rows(a.cols(), std::move(stacked));
    const std::size_t ra = gcldpc::gf2_rank(a), rb = gcldpc::gf2_rank(b);
    return ra == rb && gcldpc::gf2_rank(ab) == ra;
}

/// All codewords spanned by a nullspace basis (guarded to 2^20).
inline std::vector<std::vector<std::uint8_t>> enumerate_codewords(
    const gcldpc::SparseBinMatrix& h, std::size_t max_count = (1u << 20))
{
    const auto basis = gcldpc::gf2_nullspace_basis(h);
    if ((std::size_t(1) << basis.size()) > max_count)
        throw std::invalid_argument("enumerate_codewords: codebook too large");
    std::vector<std::vector<std::uint8_t>> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << basis.size()); ++mask) {
        std::vector<std::uint8_t> cw(h.cols(), 0);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (mask & (std::size_t(1) << b))
                for (std::uint32_t i : basis[b]) cw[i] ^= 1;
        out.push_back(std::move(cw));
    }
    return out;
}

}  // namespace testsup

#endif  // GCLDPC_TESTS_SUPPORT_HPP
