#ifndef GCLDPC_COVER_HPP
#define GCLDPC_COVER_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gf2.hpp"

namespace gcldpc {

/// A permutation assignment for one part of a graph-cover construction.
/// CirculantShift(s, r) is the s-times left-shifted identity I_s (row u has
/// its 1 at column (u - s) mod r); ToeplitzShift(s) is the bi-infinite
/// analogue T_s and cannot be materialized at finite size; Explicit stores
/// the column image per row.
struct PermSpec {
    enum class Kind { circulant, toeplitz, explicit_perm, identity };

    Kind kind = Kind::identity;
    std::uint32_t shift = 0;            // circulant / toeplitz
    std::uint32_t size = 0;             // r, for the finite kinds
    std::vector<std::uint32_t> image;   // explicit_perm: row u -> column image[u]

    static PermSpec circulant(std::uint32_t s, std::uint32_t r)
    {
        if (s >= r) throw std::invalid_argument("PermSpec: circulant shift must be < r");
        PermSpec p;
        p.kind = Kind::circulant;
        p.shift = s;
        p.size = r;
        return p;
    }

    static PermSpec toeplitz(std::uint32_t s)
    {
        PermSpec p;
        p.kind = Kind::toeplitz;
        p.shift = s;
        return p;
    }

    static PermSpec identity(std::uint32_t r)
    {
        PermSpec p;
        p.kind = Kind::identity;
        p.size = r;
        return p;
    }

    static PermSpec explicit_perm(std::vector<std::uint32_t> image)
    {
        PermSpec p;
        p.kind = Kind::explicit_perm;
        p.size = static_cast<std::uint32_t>(image.size());
        std::vector<std::uint8_t> seen(image.size(), 0);
        for (std::uint32_t v : image) {
            if (v >= image.size() || seen[v])
                throw std::invalid_argument("PermSpec: explicit image is not a bijection");
            seen[v] = 1;
        }
        p.image = std::move(image);
        return p;
    }

    bool finite() const { return kind != Kind::toeplitz; }

    /// Column of the single 1 in row u.
    std::uint32_t map_row(std::uint32_t u) const
    {
        switch (kind) {
            case Kind::circulant: return (u + size - shift) % size;
            case Kind::identity: return u;
            case Kind::explicit_perm: return image[u];
            case Kind::toeplitz:
                throw std::invalid_argument("PermSpec: Toeplitz permutation is not materializable; "
                                            "use the convolutional-code machinery");
        }
        return 0;
    }
};

/// Kronecker product A_l (x) P of an integer proto-block with a finite
/// permutation. Entry values of A_l are preserved as multiplicities.
inline SparseIntMatrix kron_perm(const SparseIntMatrix& block, const PermSpec& perm)
{
    if (!perm.finite())
        throw std::invalid_argument("kron_perm: Toeplitz permutation is not materializable; "
                                    "use the convolutional-code machinery");
    const std::uint32_t r = perm.size;
    SparseIntMatrix out(block.rows() * r, block.cols() * r);
    for (std::size_t j = 0; j < block.rows(); ++j)
        for (const auto& e : block.row(j))
            for (std::uint32_t u = 0; u < r; ++u)
                out.add(j * r + u, std::size_t(e.col) * r + perm.map_row(u), e.value);
    return out;
}

enum class CoverKind { gcc1, gcc2 };

/// A proto-matrix decomposition with one permutation per part.
/// Invariants: the parts sum to the proto-matrix over Z, and all finite
/// permutations share one size r (Toeplitz parts may not be mixed in).
struct CoverSpec {
    struct Part {
        SparseIntMatrix block;
        PermSpec perm;
    };

    SparseIntMatrix proto;
    std::vector<Part> parts;
    CoverKind kind = CoverKind::gcc1;

    void validate() const
    {
        SparseIntMatrix sum(proto.rows(), proto.cols());
        bool any_finite = false, any_toeplitz = false;
        std::uint32_t r = 0;
        for (const auto& part : parts) {
            if (part.block.rows() != proto.rows() || part.block.cols() != proto.cols())
                throw std::invalid_argument("CoverSpec: part dimensions do not match proto");
            for (std::size_t j = 0; j < part.block.rows(); ++j)
                for (const auto& e : part.block.row(j)) sum.add(j, e.col, e.value);
            if (part.perm.finite()) {
                if (any_finite && part.perm.size != r)
                    throw std::invalid_argument("CoverSpec: finite permutations of mixed size");
                any_finite = true;
                r = part.perm.size;
            } else {
                any_toeplitz = true;
            }
        }
        if (any_finite && any_toeplitz)
            throw std::invalid_argument("CoverSpec: Toeplitz and finite permutations mixed");
        if (!(sum == proto))
            throw std::invalid_argument("CoverSpec: parts do not sum to the proto-matrix");
    }

    std::uint32_t cover_degree() const
    {
        for (const auto& part : parts)
            if (part.perm.finite()) return part.perm.size;
        return 0;
    }

    bool finite() const
    {
        for (const auto& part : parts)
            if (!part.perm.finite()) return false;
        return true;
    }
};

/// One single-entry part per nonzero proto entry, in row-major order.
/// The parts sum to A and carry identity permutations by default.
inline std::vector<SparseIntMatrix> per_entry_decomposition(const SparseIntMatrix& a)
{
    std::vector<SparseIntMatrix> parts;
    for (std::size_t j = 0; j < a.rows(); ++j)
        for (const auto& e : a.row(j)) {
            SparseIntMatrix part(a.rows(), a.cols());
            part.add(j, e.col, e.value);
            parts.push_back(std::move(part));
        }
    return parts;
}

/// Per-entry CoverSpec for an all-monomial circulant lifting: part (j, i)
/// carries the circulant I_{shifts[j][i]}.
inline CoverSpec circulant_cover_spec(const std::vector<std::vector<std::uint32_t>>& shifts,
                                      std::uint32_t r, CoverKind kind)
{
    const std::size_t rows = shifts.size();
    const std::size_t cols = rows ? shifts[0].size() : 0;
    CoverSpec spec;
    spec.kind = kind;
    spec.proto = SparseIntMatrix(rows, cols);
    for (std::size_t j = 0; j < rows; ++j) {
        if (shifts[j].size() != cols)
            throw std::invalid_argument("circulant_cover_spec: ragged shift matrix");
        for (std::size_t i = 0; i < cols; ++i) {
            spec.proto.add(j, i, 1);
            CoverSpec::Part part;
            part.block = SparseIntMatrix(rows, cols);
            part.block.add(j, i, 1);
            part.perm = PermSpec::circulant(shifts[j][i] % r, r);
            spec.parts.push_back(std::move(part));
        }
    }
    return spec;
}

/// Result of a graph-cover construction. The matrix is kept over Z so that
/// coinciding shifted identities show up as multiplicities; parallel_edges
/// flags them (they weaken the final Tanner graph). as_binary() on the
/// matrix collapses to GF(2) support, or cancels mod 2 on request.
struct CoverResult {
    SparseIntMatrix matrix;
    bool parallel_edges = false;
    CoverKind kind = CoverKind::gcc1;
    std::uint32_t cover_degree = 0;
    std::size_t proto_rows = 0;
    std::size_t proto_cols = 0;

    /// Canonical projection of a cover variable-node index onto its base
    /// variable node: index div r for GCC1, index mod n_A for GCC2.
    std::size_t project_var(std::size_t idx) const
    {
        return kind == CoverKind::gcc1 ? idx / cover_degree : idx % proto_cols;
    }

    std::size_t project_check(std::size_t idx) const
    {
        return kind == CoverKind::gcc1 ? idx / cover_degree : idx % proto_rows;
    }

    std::vector<std::uint32_t> var_fiber_map() const
    {
        std::vector<std::uint32_t> f(matrix.cols());
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = static_cast<std::uint32_t>(project_var(i));
        return f;
    }
};

namespace detail {

inline CoverResult gcc_impl(const CoverSpec& spec, CoverKind kind)
{
    spec.validate();
    if (spec.kind != kind)
        throw std::invalid_argument("graph-cover construction: CoverSpec kind mismatch");
    if (!spec.finite())
        throw std::invalid_argument("graph-cover construction: Toeplitz permutations cannot be "
                                    "materialized; hand the CoverSpec to the unwrap machinery");
    const std::uint32_t r = spec.cover_degree();
    if (r == 0) throw std::invalid_argument("graph-cover construction: no parts");

    CoverResult res;
    res.kind = kind;
    res.cover_degree = r;
    res.proto_rows = spec.proto.rows();
    res.proto_cols = spec.proto.cols();
    res.matrix = SparseIntMatrix(spec.proto.rows() * r, spec.proto.cols() * r);
    for (const auto& part : spec.parts) {
        for (std::size_t j = 0; j < part.block.rows(); ++j)
            for (const auto& e : part.block.row(j))
                for (std::uint32_t u = 0; u < r; ++u) {
                    const std::uint32_t up = part.perm.map_row(u);
                    if (kind == CoverKind::gcc1)
                        res.matrix.add(j * r + u, std::size_t(e.col) * r + up, e.value);
                    else
                        res.matrix.add(std::size_t(u) * spec.proto.rows() + j,
                                       std::size_t(up) * spec.proto.cols() + e.col, e.value);
                }
    }
    res.parallel_edges = res.matrix.has_entry_above_one();
    return res;
}

}  // namespace detail

/// GCC1: B = sum_l (A_l (x) P_l).
inline CoverResult gcc1(const CoverSpec& spec) { return detail::gcc_impl(spec, CoverKind::gcc1); }

/// GCC2: B = sum_l (P_l (x) A_l), the copy-and-permute construction.
inline CoverResult gcc2(const CoverSpec& spec) { return detail::gcc_impl(spec, CoverKind::gcc2); }

/// Checks that (cover, projection) is a graph cover of base: the projection
/// must map every cover vertex's neighborhood bijectively onto its image's
/// neighborhood, and all fibers must share one size M. Both matrices are
/// simple Tanner graphs. A non-surjective projection is an error.
inline bool validate_cover(const SparseBinMatrix& base, const SparseBinMatrix& cover,
                           const std::vector<std::uint32_t>& var_projection,
                           const std::vector<std::uint32_t>& check_projection)
{
    if (var_projection.size() != cover.cols() || check_projection.size() != cover.rows())
        throw std::invalid_argument("validate_cover: projection size mismatch");

    std::vector<std::size_t> var_fiber(base.cols(), 0), check_fiber(base.rows(), 0);
    for (std::uint32_t v : var_projection) {
        if (v >= base.cols()) throw std::invalid_argument("validate_cover: projection out of range");
        ++var_fiber[v];
    }
    for (std::uint32_t c : check_projection) {
        if (c >= base.rows()) throw std::invalid_argument("validate_cover: projection out of range");
        ++check_fiber[c];
    }
    for (std::size_t v = 0; v < base.cols(); ++v)
        if (var_fiber[v] == 0) throw std::invalid_argument("validate_cover: projection not surjective");
    for (std::size_t c = 0; c < base.rows(); ++c)
        if (check_fiber[c] == 0) throw std::invalid_argument("validate_cover: projection not surjective");

    const std::size_t m = var_fiber[0];
    for (std::size_t v = 0; v < base.cols(); ++v)
        if (var_fiber[v] != m) return false;
    for (std::size_t c = 0; c < base.rows(); ++c)
        if (check_fiber[c] != m) return false;

    const SparseBinMatrix base_t = base.transpose();
    const SparseBinMatrix cover_t = cover.transpose();

    // Check-node neighborhoods.
    for (std::size_t cr = 0; cr < cover.rows(); ++cr) {
        const auto& nb = cover.row(cr);
        const auto& base_nb = base.row(check_projection[cr]);
        if (nb.size() != base_nb.size()) return false;
        std::vector<std::uint32_t> image;
        image.reserve(nb.size());
        for (std::uint32_t v : nb) image.push_back(var_projection[v]);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
        if (image != base_nb) return false;
    }
    // Variable-node neighborhoods.
    for (std::size_t cv = 0; cv < cover.cols(); ++cv) {
        const auto& nb = cover_t.row(cv);
        const auto& base_nb = base_t.row(var_projection[cv]);
        if (nb.size() != base_nb.size()) return false;
        std::vector<std::uint32_t> image;
        image.reserve(nb.size());
        for (std::uint32_t c : nb) image.push_back(check_projection[c]);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
        if (image != base_nb) return false;
    }
    return true;
}

}  // namespace gcldpc

#endif  // GCLDPC_COVER_HPP
