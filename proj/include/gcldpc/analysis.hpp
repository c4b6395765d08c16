#ifndef GCLDPC_ANALYSIS_HPP
#define GCLDPC_ANALYSIS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "convcode.hpp"
#include "gf2.hpp"

namespace gcldpc {

namespace detail {

/// Bipartite Tanner-graph adjacency: vars and checks with mutual neighbor
/// lists (column / row supports).
struct TannerAdj {
    std::vector<std::vector<std::uint32_t>> var_nb;    // variable -> checks
    std::vector<std::vector<std::uint32_t>> check_nb;  // check -> variables

    explicit TannerAdj(const SparseBinMatrix& h)
        : var_nb(h.cols()), check_nb(h.rows())
    {
        for (std::size_t r = 0; r < h.rows(); ++r)
            for (std::uint32_t c : h.row(r)) {
                check_nb[r].push_back(c);
                var_nb[c].push_back(static_cast<std::uint32_t>(r));
            }
    }
};

}  // namespace detail

/// Length of the shortest cycle of the Tanner graph (even, >= 4), or
/// nullopt for a forest. Depth-capped BFS from every vertex.
inline std::optional<std::uint32_t> girth(const SparseBinMatrix& h)
{
    if (h.rows() == 0 && h.cols() == 0) throw std::invalid_argument("girth: empty graph");
    detail::TannerAdj adj(h);
    const std::size_t nv = adj.var_nb.size(), nc = adj.check_nb.size();
    const std::size_t n = nv + nc;
    auto neighbors = [&](std::uint32_t u) -> const std::vector<std::uint32_t>& {
        return u < nv ? adj.var_nb[u] : adj.check_nb[u - nv];
    };
    auto global = [&](std::uint32_t u, std::uint32_t w) -> std::uint32_t {
        // neighbor w of u lives on the other side
        return u < nv ? w + static_cast<std::uint32_t>(nv) : w;
    };

    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::int32_t> dist(n);
    std::vector<std::int32_t> parent(n);
    std::vector<std::uint32_t> queue(n);
    for (std::uint32_t root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::size_t head = 0, tail = 0;
        dist[root] = 0;
        parent[root] = -1;
        queue[tail++] = root;
        while (head < tail) {
            const std::uint32_t u = queue[head++];
            if (best != std::numeric_limits<std::uint32_t>::max() &&
                2 * static_cast<std::uint32_t>(dist[u]) + 1 >= best)
                break;
            for (std::uint32_t wl : neighbors(u)) {
                const std::uint32_t w = global(u, wl);
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = static_cast<std::int32_t>(u);
                    queue[tail++] = w;
                } else if (static_cast<std::int32_t>(w) != parent[u]) {
                    const std::uint32_t len =
                        static_cast<std::uint32_t>(dist[u] + dist[w] + 1);
                    best = std::min(best, len);
                }
            }
        }
    }
    if (best == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
    return best;
}

/// Cycle counts per length with the normalized per-bit-node averages.
/// girth == 0 encodes a forest.
struct CycleSpectrum {
    std::uint32_t girth = 0;
    double basis = 0.0;  // bit-node count, or symbols per period for conv codes
    std::map<std::uint32_t, std::uint64_t> counts;
    std::map<std::uint32_t, double> normalized;
};

/// Exact cycle counts for even lengths in [girth, max_len] via traces of
/// powers of the directed non-backtracking edge-adjacency matrix; each
/// length-l cycle contributes 2l tailless closed walks. The method is only
/// valid below twice the girth, so max_len >= 2*girth is refused.
inline CycleSpectrum cycle_spectrum(const SparseBinMatrix& h, std::uint32_t max_len)
{
    CycleSpectrum spec;
    spec.basis = static_cast<double>(h.cols());
    auto g = girth(h);
    if (!g) return spec;  // forest: no cycles at any length
    spec.girth = *g;
    if (max_len >= 2 * *g)
        throw std::invalid_argument(
            "cycle_spectrum: max_len must be < 2*girth (trace method invalid beyond)");

    // Directed edges: 2k = var->check for undirected edge k, 2k+1 = check->var.
    detail::TannerAdj adj(h);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (var, check)
    std::vector<std::vector<std::uint32_t>> var_edges(h.cols()), check_edges(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::uint32_t c : h.row(r)) {
            var_edges[c].push_back(static_cast<std::uint32_t>(edges.size()));
            check_edges[r].push_back(static_cast<std::uint32_t>(edges.size()));
            edges.emplace_back(c, static_cast<std::uint32_t>(r));
        }
    const std::size_t ne = edges.size();
    std::vector<std::vector<std::uint32_t>> next(2 * ne);
    for (std::size_t k = 0; k < ne; ++k) {
        const auto [v, c] = edges[k];
        for (std::uint32_t k2 : check_edges[c])
            if (k2 != k) next[2 * k].push_back(2 * k2 + 1);  // v->c then c->v'
        for (std::uint32_t k2 : var_edges[v])
            if (k2 != k) next[2 * k + 1].push_back(2 * k2);  // c->v then v->c'
    }

    std::map<std::uint32_t, std::uint64_t> trace;
    std::vector<std::uint64_t> cur(2 * ne), nxt(2 * ne);
    for (std::size_t e0 = 0; e0 < 2 * ne; ++e0) {
        std::fill(cur.begin(), cur.end(), 0);
        cur[e0] = 1;
        for (std::uint32_t step = 1; step <= max_len; ++step) {
            std::fill(nxt.begin(), nxt.end(), 0);
            for (std::size_t e = 0; e < 2 * ne; ++e) {
                const std::uint64_t w = cur[e];
                if (!w) continue;
                for (std::uint32_t f : next[e]) nxt[f] += w;
            }
            cur.swap(nxt);
            if (step >= *g && step % 2 == 0) trace[step] += cur[e0];
        }
    }
    for (std::uint32_t len = *g; len <= max_len; len += 2) {
        const std::uint64_t t = trace.count(len) ? trace[len] : 0;
        spec.counts[len] = t / (2 * len);
        spec.normalized[len] = static_cast<double>(spec.counts[len]) / spec.basis;
    }
    return spec;
}

namespace detail {

/// Counts simple cycles of length <= max_len whose minimal variable node is
/// the given root, via alternating DFS that never visits a variable below
/// the root. Each cycle is seen once per direction; counts are halved.
class LeftmostCycleCounter {
  public:
    LeftmostCycleCounter(const TannerAdj& adj, std::uint32_t max_len)
        : adj_(adj), max_len_(max_len),
          var_used_(adj.var_nb.size(), 0), check_used_(adj.check_nb.size(), 0)
    {
    }

    void count_from(std::uint32_t root, std::map<std::uint32_t, std::uint64_t>& out)
    {
        root_ = root;
        counts_.assign(max_len_ / 2 + 1, 0);
        var_used_[root] = 1;
        dfs_var(root, 0);
        var_used_[root] = 0;
        for (std::uint32_t half = 2; half <= max_len_ / 2; ++half)
            if (counts_[half]) out[2 * half] += counts_[half] / 2;
    }

  private:
    void dfs_var(std::uint32_t v, std::uint32_t depth_half)
    {
        for (std::uint32_t c : adj_.var_nb[v]) {
            if (check_used_[c]) continue;
            check_used_[c] = 1;
            for (std::uint32_t w : adj_.check_nb[c]) {
                if (w == root_) {
                    if (depth_half >= 1) ++counts_[depth_half + 1];
                    continue;
                }
                if (w < root_ || var_used_[w]) continue;
                if (depth_half + 2 > max_len_ / 2) continue;
                var_used_[w] = 1;
                dfs_var(w, depth_half + 1);
                var_used_[w] = 0;
            }
            check_used_[c] = 0;
        }
    }

    const TannerAdj& adj_;
    std::uint32_t max_len_;
    std::uint32_t root_ = 0;
    std::vector<std::uint8_t> var_used_, check_used_;
    std::vector<std::uint64_t> counts_;
};

}  // namespace detail

/// Cycle spectrum of a convolutional code's bi-infinite Tanner graph:
/// counts cycles whose leftmost variable node falls in one period, taken
/// deep inside a padded window, and normalizes by the symbols per period
/// (c*T_s), giving the per-bit-node average cycle density.
inline CycleSpectrum conv_cycle_spectrum(const ConvCode& code, std::uint32_t max_len)
{
    const std::uint32_t c = code.c();
    // A cycle hop moves at most m_s blocks, so length-l cycles stay within
    // m_s*l/2 blocks of their leftmost variable; pad generously.
    const std::uint64_t pad = std::uint64_t(code.ms()) * max_len / 2 + code.ms() + 2;
    const std::uint64_t total = pad + code.Ts() + pad;
    SparseBinMatrix window = materialize_window(code, 0, total);

    CycleSpectrum spec;
    spec.basis = static_cast<double>(c) * code.Ts();
    auto g = girth(window);
    if (!g) return spec;
    spec.girth = *g;
    if (max_len >= 2 * *g)
        throw std::invalid_argument(
            "conv_cycle_spectrum: max_len must be < 2*girth (trace method bound applies)");

    detail::TannerAdj adj(window);
    detail::LeftmostCycleCounter counter(adj, max_len);
    std::map<std::uint32_t, std::uint64_t> counts;
    for (std::uint64_t t = pad; t < pad + code.Ts(); ++t)
        for (std::uint32_t k = 0; k < c; ++k)
            counter.count_from(static_cast<std::uint32_t>(t * c + k), counts);

    for (std::uint32_t len = *g; len <= max_len; len += 2) {
        const std::uint64_t n = counts.count(len) ? counts[len] : 0;
        spec.counts[len] = n;
        spec.normalized[len] = static_cast<double>(n) / spec.basis;
    }
    return spec;
}

/// Nonnegative vector indexed by variable nodes.
struct PseudoCodeword {
    std::vector<double> omega;

    bool is_zero() const
    {
        for (double w : omega)
            if (w != 0.0) return false;
        return true;
    }
};

/// Fiber-averaging projection of a cover pseudo-codeword onto the base
/// graph: omega_i = (1/M) sum over the fiber of i. fiber_map sends each
/// cover variable index to its base variable index; fibers must have
/// uniform size M.
inline PseudoCodeword project_pseudocodeword(const PseudoCodeword& cover_omega, std::size_t M,
                                             const std::vector<std::uint32_t>& fiber_map)
{
    if (M == 0 || fiber_map.size() != cover_omega.omega.size())
        throw std::invalid_argument("project_pseudocodeword: fiber map size mismatch");
    std::uint32_t n_base = 0;
    for (std::uint32_t b : fiber_map) n_base = std::max(n_base, b + 1);
    std::vector<std::size_t> fiber_size(n_base, 0);
    PseudoCodeword out;
    out.omega.assign(n_base, 0.0);
    for (std::size_t i = 0; i < fiber_map.size(); ++i) {
        out.omega[fiber_map[i]] += cover_omega.omega[i];
        ++fiber_size[fiber_map[i]];
    }
    for (std::size_t b = 0; b < n_base; ++b)
        if (fiber_size[b] != M)
            throw std::invalid_argument("project_pseudocodeword: fibers are not uniform size M");
    for (double& w : out.omega) w /= static_cast<double>(M);
    return out;
}

struct PseudoWeights {
    double awgnc = 0.0;
    double bsc = 0.0;
    double bec = 0.0;
};

/// AWGNC: (sum w)^2 / sum w^2. BEC: support size. BSC: twice the number of
/// largest entries needed to accumulate half the total mass, with
/// fractional interpolation at the crossing entry.
inline PseudoWeights pseudoweights(const PseudoCodeword& pc)
{
    double sum = 0.0, sum2 = 0.0;
    std::size_t support = 0;
    for (double w : pc.omega) {
        if (w < 0.0) throw std::invalid_argument("pseudoweights: negative entry");
        sum += w;
        sum2 += w * w;
        if (w != 0.0) ++support;
    }
    if (sum == 0.0) throw std::invalid_argument("pseudoweights: zero vector");
    PseudoWeights out;
    out.awgnc = sum * sum / sum2;
    out.bec = static_cast<double>(support);

    std::vector<double> sorted(pc.omega);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    const double target = sum / 2.0;
    double acc = 0.0, e = 0.0;
    for (double w : sorted) {
        if (acc + w >= target) {
            e += (target - acc) / w;
            break;
        }
        acc += w;
        e += 1.0;
    }
    out.bsc = 2.0 * e;
    return out;
}

/// Fundamental polytope membership: 0 <= w_i <= 1 everywhere and, for every
/// check j and every odd-cardinality subset S of its neighborhood,
/// sum_{i in S} w_i - sum_{i in N(j)\S} w_i <= |S| - 1. Row weight is
/// capped at 12 by the subset enumeration.
inline bool fundamental_polytope_contains(const SparseBinMatrix& h, const PseudoCodeword& pc)
{
    if (pc.omega.size() != h.cols())
        throw std::invalid_argument("fundamental_polytope_contains: length mismatch");
    constexpr double eps = 1e-9;
    for (double w : pc.omega)
        if (w < -eps || w > 1.0 + eps) return false;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const auto& nb = h.row(r);
        if (nb.size() > 12)
            throw std::invalid_argument("fundamental_polytope_contains: row weight exceeds 12");
        const std::uint32_t full = 1u << nb.size();
        double row_sum = 0.0;
        for (std::uint32_t i : nb) row_sum += pc.omega[i];
        for (std::uint32_t mask = 0; mask < full; ++mask) {
            if (__builtin_popcount(mask) % 2 == 0) continue;
            double s = 0.0;
            int card = 0;
            for (std::size_t k = 0; k < nb.size(); ++k)
                if (mask & (1u << k)) {
                    s += pc.omega[nb[k]];
                    ++card;
                }
            if (s - (row_sum - s) > card - 1 + eps) return false;
        }
    }
    return true;
}

/// The active part of a pseudo-codeword is its support's bit nodes with all
/// their incident edges and check nodes. True iff that subgraph contains a
/// cycle or a node of degree <= 1; false for empty support.
inline bool active_part_has_cycle(const SparseBinMatrix& h, const PseudoCodeword& pc)
{
    if (pc.omega.size() != h.cols())
        throw std::invalid_argument("active_part_has_cycle: length mismatch");
    std::vector<std::uint32_t> support;
    for (std::size_t i = 0; i < pc.omega.size(); ++i)
        if (pc.omega[i] != 0.0) support.push_back(static_cast<std::uint32_t>(i));
    if (support.empty()) return false;

    // Degrees in the active part.
    std::vector<std::size_t> check_deg(h.rows(), 0);
    SparseBinMatrix ht = h.transpose();
    for (std::uint32_t v : support) {
        if (ht.row(v).size() <= 1) return true;  // degree-<=1 bit node
        for (std::uint32_t c : ht.row(v)) ++check_deg[c];
    }
    for (std::size_t c = 0; c < h.rows(); ++c)
        if (check_deg[c] == 1) return true;  // leaf check node

    // Union-find over active nodes: an edge inside one component closes a cycle.
    const std::size_t n = h.cols() + h.rows();
    std::vector<std::uint32_t> uf(n);
    for (std::size_t i = 0; i < n; ++i) uf[i] = static_cast<std::uint32_t>(i);
    auto find = [&](std::uint32_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (std::uint32_t v : support)
        for (std::uint32_t c : ht.row(v)) {
            const std::uint32_t a = find(v), b = find(static_cast<std::uint32_t>(h.cols() + c));
            if (a == b) return true;
            uf[a] = b;
        }
    return false;
}

}  // namespace gcldpc

#endif  // GCLDPC_ANALYSIS_HPP
