#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <numeric>

#include "gcldpc/gcldpc.hpp"
#include "support.hpp"

using namespace gcldpc;

namespace {

/// Brute-force bipartite graph isomorphism: backtrack over a check-node
/// bijection and compare the induced variable-neighborhood multisets.
bool graphs_isomorphic(const SparseBinMatrix& a, const SparseBinMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.nnz() != b.nnz()) return false;
    const std::size_t m = a.rows();
    std::vector<std::uint32_t> sigma(m);
    std::vector<std::uint8_t> used(m, 0);

    auto vars_match = [&]() {
        const SparseBinMatrix at = a.transpose(), bt = b.transpose();
        std::vector<std::vector<std::uint32_t>> na, nb;
        for (std::size_t v = 0; v < a.cols(); ++v) {
            std::vector<std::uint32_t> img;
            for (std::uint32_t c : at.row(v)) img.push_back(sigma[c]);
            std::sort(img.begin(), img.end());
            na.push_back(std::move(img));
            nb.push_back(bt.row(v));
        }
        std::sort(na.begin(), na.end());
        std::sort(nb.begin(), nb.end());
        return na == nb;
    };

    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == m) return vars_match();
        for (std::uint32_t j = 0; j < m; ++j) {
            if (used[j] || a.row(i).size() != b.row(j).size()) continue;
            used[j] = 1;
            sigma[i] = j;
            if (place(i + 1)) return true;
            used[j] = 0;
        }
        return false;
    };
    return place(0);
}

CoverSpec random_explicit_spec(const SparseIntMatrix& proto, std::uint32_t r, CoverKind kind,
                               std::uint64_t seed)
{
    CounterRng rng(CounterRng::derive_key(seed, 0xc0e3, r));
    CoverSpec spec;
    spec.kind = kind;
    spec.proto = proto;
    for (std::size_t j = 0; j < proto.rows(); ++j)
        for (const auto& e : proto.row(j)) {
            CoverSpec::Part part;
            part.block = SparseIntMatrix(proto.rows(), proto.cols());
            part.block.add(j, e.col, e.value);
            std::vector<std::uint32_t> image(r);
            std::iota(image.begin(), image.end(), 0);
            for (std::size_t i = r; i > 1; --i)
                std::swap(image[i - 1], image[rng.next_below(i)]);
            part.perm = PermSpec::explicit_perm(std::move(image));
            spec.parts.push_back(std::move(part));
        }
    return spec;
}

}  // namespace

TEST_CASE("kron_perm")
{
    SECTION("1x1 proto with a circulant shift is a single-cycle permutation")
    {
        SparseIntMatrix a(1, 1);
        a.add(0, 0, 1);
        const SparseIntMatrix out = kron_perm(a, PermSpec::circulant(2, 5));
        REQUIRE(out.rows() == 5);
        REQUIRE(out.cols() == 5);
        for (std::uint32_t u = 0; u < 5; ++u) REQUIRE(out.at(u, (u + 3) % 5) == 1);
        REQUIRE(out.nnz() == 5);
    }
    SECTION("single-entry 2x3 block at (0,0) with I_1, r = 7")
    {
        SparseIntMatrix a(2, 3);
        a.add(0, 0, 1);
        const SparseIntMatrix out = kron_perm(a, PermSpec::circulant(1, 7));
        REQUIRE(out.rows() == 14);
        REQUIRE(out.cols() == 21);
        REQUIRE(out.nnz() == 7);
        for (std::uint32_t u = 0; u < 7; ++u) REQUIRE(out.at(u, (u + 6) % 7) == 1);
    }
    SECTION("entry 2 is preserved as a parallel-edge multiplicity")
    {
        SparseIntMatrix a(1, 1);
        a.add(0, 0, 2);
        const SparseIntMatrix out = kron_perm(a, PermSpec::identity(2));
        REQUIRE(out.at(0, 0) == 2);
        REQUIRE(out.at(1, 1) == 2);
        const auto prof = degree_profile(out);
        REQUIRE(prof.col_degrees == std::vector<std::size_t>{2, 2});
    }
    SECTION("Toeplitz permutations cannot be materialized")
    {
        SparseIntMatrix a(1, 1);
        a.add(0, 0, 1);
        REQUIRE_THROWS_AS(kron_perm(a, PermSpec::toeplitz(1)), std::invalid_argument);
    }
}

TEST_CASE("gcc1")
{
    SECTION("r=7 per-entry circulant cover equals the polynomial expansion")
    {
        const CoverSpec spec = circulant_cover_spec({{1, 2, 4}, {6, 5, 3}}, 7, CoverKind::gcc1);
        const CoverResult res = gcc1(spec);
        REQUIRE_FALSE(res.parallel_edges);
        REQUIRE(res.matrix.as_binary() == expand_poly(testsup::r7_poly()));
    }
    SECTION("single identity part gives r disconnected copies")
    {
        CoverSpec spec;
        spec.kind = CoverKind::gcc1;
        spec.proto = SparseIntMatrix::from_dense({{1, 1, 1}, {1, 1, 1}}, 3);
        spec.parts.push_back({spec.proto, PermSpec::identity(4)});
        const SparseBinMatrix b = gcc1(spec).matrix.as_binary();
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::uint32_t u = 0; u < 4; ++u)
                    for (std::uint32_t up = 0; up < 4; ++up)
                        REQUIRE(b.at(j * 4 + u, i * 4 + up) == (u == up));
    }
    SECTION("Tanner 3x5 proto at r=31 is 93x155 with uniform column degree 3")
    {
        const CoverSpec spec = circulant_cover_spec(testsup::tanner_shifts(), 31, CoverKind::gcc1);
        const SparseBinMatrix b = gcc1(spec).matrix.as_binary();
        REQUIRE(b.rows() == 93);
        REQUIRE(b.cols() == 155);
        const auto prof = degree_profile(b);
        REQUIRE(prof.regular);
        REQUIRE(prof.J == 3);
        REQUIRE(prof.K == 5);
    }
}

TEST_CASE("gcc2")
{
    SECTION("r=7 cover is block-circulant in the single-entry blocks")
    {
        const std::vector<std::vector<std::uint32_t>> shifts = {{1, 2, 4}, {6, 5, 3}};
        const CoverSpec spec = circulant_cover_spec(shifts, 7, CoverKind::gcc2);
        const SparseBinMatrix bb = gcc2(spec).matrix.as_binary();
        REQUIRE(bb.rows() == 14);
        REQUIRE(bb.cols() == 21);
        // Block (u, u') holds the single 1 of A_{j,i} iff u' = (u - s_{j,i}) mod 7.
        for (std::uint32_t u = 0; u < 7; ++u)
            for (std::uint32_t up = 0; up < 7; ++up)
                for (std::size_t j = 0; j < 2; ++j)
                    for (std::size_t i = 0; i < 3; ++i) {
                        const bool expected = up == (u + 7 - shifts[j][i]) % 7;
                        REQUIRE(bb.at(u * 2 + j, up * 3 + i) == expected);
                    }
        // Every block row sums to the proto-matrix row weight.
        for (std::uint32_t u = 0; u < 7; ++u)
            for (std::size_t j = 0; j < 2; ++j) {
                std::size_t row_ones = 0;
                for (std::uint32_t up = 0; up < 7; ++up)
                    for (std::size_t i = 0; i < 3; ++i)
                        row_ones += bb.at(u * 2 + j, up * 3 + i) ? 1 : 0;
                REQUIRE(row_ones == 3);
            }
    }
    SECTION("single identity part is block-diagonal")
    {
        CoverSpec spec;
        spec.kind = CoverKind::gcc2;
        spec.proto = SparseIntMatrix::from_dense({{1, 0, 1}, {0, 1, 1}}, 3);
        spec.parts.push_back({spec.proto, PermSpec::identity(3)});
        const SparseBinMatrix b = gcc2(spec).matrix.as_binary();
        for (std::uint32_t u = 0; u < 3; ++u)
            for (std::uint32_t up = 0; up < 3; ++up)
                for (std::size_t j = 0; j < 2; ++j)
                    for (std::size_t i = 0; i < 3; ++i)
                        REQUIRE(b.at(u * 2 + j, up * 3 + i) ==
                                (u == up && spec.proto.at(j, i) == 1));
    }
    SECTION("random explicit perms replicate the proto degree profile r-fold")
    {
        const auto proto = SparseIntMatrix::from_dense({{1, 1, 0}, {0, 1, 1}}, 3);
        const CoverSpec spec = random_explicit_spec(proto, 5, CoverKind::gcc2, 7);
        const auto prof = degree_profile(gcc2(spec).matrix.as_binary());
        const auto base = degree_profile(proto);
        std::vector<std::size_t> expected_cols, expected_rows;
        for (std::size_t d : base.col_degrees) expected_cols.insert(expected_cols.end(), 5, d);
        for (std::size_t d : base.row_degrees) expected_rows.insert(expected_rows.end(), 5, d);
        std::sort(expected_cols.begin(), expected_cols.end());
        std::sort(expected_rows.begin(), expected_rows.end());
        REQUIRE(prof.col_degrees == expected_cols);
        REQUIRE(prof.row_degrees == expected_rows);
    }
    SECTION("kind mismatch is rejected")
    {
        const CoverSpec spec = circulant_cover_spec({{1}}, 3, CoverKind::gcc1);
        REQUIRE_THROWS_AS(gcc2(spec), std::invalid_argument);
    }
}

TEST_CASE("CoverSpec validation")
{
    SECTION("parts must sum to the proto-matrix")
    {
        CoverSpec spec;
        spec.kind = CoverKind::gcc1;
        spec.proto = SparseIntMatrix::from_dense({{1, 1}}, 2);
        CoverSpec::Part part;
        part.block = SparseIntMatrix::from_dense({{1, 0}}, 2);
        part.perm = PermSpec::identity(3);
        spec.parts.push_back(part);
        REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
    }
    SECTION("mixed Toeplitz and finite perms are rejected")
    {
        CoverSpec spec;
        spec.kind = CoverKind::gcc1;
        spec.proto = SparseIntMatrix::from_dense({{1, 1}}, 2);
        CoverSpec::Part p0, p1;
        p0.block = SparseIntMatrix::from_dense({{1, 0}}, 2);
        p0.perm = PermSpec::identity(3);
        p1.block = SparseIntMatrix::from_dense({{0, 1}}, 2);
        p1.perm = PermSpec::toeplitz(1);
        spec.parts = {p0, p1};
        REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
    }
}

TEST_CASE("per_entry_decomposition")
{
    SECTION("2x3 all-ones gives six single-one parts")
    {
        const auto a = SparseIntMatrix::from_dense({{1, 1, 1}, {1, 1, 1}}, 3);
        const auto parts = per_entry_decomposition(a);
        REQUIRE(parts.size() == 6);
        SparseIntMatrix sum(2, 3);
        for (const auto& p : parts) {
            REQUIRE(p.nnz() == 1);
            for (std::size_t j = 0; j < 2; ++j)
                for (const auto& e : p.row(j)) sum.add(j, e.col, e.value);
        }
        REQUIRE(sum == a);
    }
    SECTION("zero matrix gives no parts")
    {
        REQUIRE(per_entry_decomposition(SparseIntMatrix(2, 2)).empty());
    }
    SECTION("an entry of 3 stays in one part")
    {
        auto a = SparseIntMatrix(1, 2);
        a.add(0, 1, 3);
        const auto parts = per_entry_decomposition(a);
        REQUIRE(parts.size() == 1);
        REQUIRE(parts[0].at(0, 1) == 3);
    }
}

TEST_CASE("validate_cover")
{
    const CoverSpec spec = circulant_cover_spec({{1, 2, 4}, {6, 5, 3}}, 7, CoverKind::gcc1);
    const CoverResult res = gcc1(spec);
    const SparseBinMatrix base = spec.proto.as_binary();
    const SparseBinMatrix cover = res.matrix.as_binary();

    std::vector<std::uint32_t> var_proj(cover.cols()), check_proj(cover.rows());
    for (std::size_t i = 0; i < cover.cols(); ++i)
        var_proj[i] = static_cast<std::uint32_t>(res.project_var(i));
    for (std::size_t i = 0; i < cover.rows(); ++i)
        check_proj[i] = static_cast<std::uint32_t>(res.project_check(i));

    SECTION("canonical projection of a GCC1 cover validates")
    {
        REQUIRE(validate_cover(base, cover, var_proj, check_proj));
    }
    SECTION("identity projection of a 1-cover validates")
    {
        std::vector<std::uint32_t> vi(base.cols()), ci(base.rows());
        std::iota(vi.begin(), vi.end(), 0);
        std::iota(ci.begin(), ci.end(), 0);
        REQUIRE(validate_cover(base, base, vi, ci));
    }
    SECTION("deleting one edge breaks the neighborhood bijection")
    {
        std::vector<std::vector<std::uint32_t>> rows;
        for (std::size_t r = 0; r < cover.rows(); ++r) rows.push_back(cover.row(r));
        rows[0].erase(rows[0].begin());
        const auto damaged = SparseBinMatrix::from_rows(cover.cols(), std::move(rows));
        REQUIRE_FALSE(validate_cover(base, damaged, var_proj, check_proj));
    }
    SECTION("non-surjective projection is an error")
    {
        std::vector<std::uint32_t> bad = var_proj;
        for (auto& v : bad) v = 0;
        REQUIRE_THROWS_AS(validate_cover(base, cover, bad, check_proj), std::invalid_argument);
    }
}

TEST_CASE("GCC1 and GCC2 build isomorphic graphs")
{
    SECTION("identical degree multisets and cycle spectra on the r=7 cover")
    {
        const CoverSpec s1 = circulant_cover_spec({{1, 2, 4}, {6, 5, 3}}, 7, CoverKind::gcc1);
        const CoverSpec s2 = circulant_cover_spec({{1, 2, 4}, {6, 5, 3}}, 7, CoverKind::gcc2);
        const SparseBinMatrix b1 = gcc1(s1).matrix.as_binary();
        const SparseBinMatrix b2 = gcc2(s2).matrix.as_binary();
        REQUIRE(degree_profile(b1) == degree_profile(b2));
        const auto g1 = girth(b1), g2 = girth(b2);
        REQUIRE(g1.has_value());
        REQUIRE(g1 == g2);
        const auto sp1 = cycle_spectrum(b1, 2 * *g1 - 2);
        const auto sp2 = cycle_spectrum(b2, 2 * *g2 - 2);
        REQUIRE(sp1.counts == sp2.counts);
    }
    SECTION("full brute-force isomorphism at desk scale (n_A * r = 12)")
    {
        const std::vector<std::vector<std::uint32_t>> shifts = {{0, 1, 2}, {3, 2, 1}};
        const SparseBinMatrix b1 =
            gcc1(circulant_cover_spec(shifts, 4, CoverKind::gcc1)).matrix.as_binary();
        const SparseBinMatrix b2 =
            gcc2(circulant_cover_spec(shifts, 4, CoverKind::gcc2)).matrix.as_binary();
        REQUIRE(graphs_isomorphic(b1, b2));
    }
}

TEST_CASE("covers never decrease girth")
{
    std::size_t tested = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SparseBinMatrix proto = testsup::random_sparse(3, 5, 0.6, 500 + seed);
        if (proto.nnz() < 6) continue;
        const CoverSpec spec =
            random_explicit_spec(SparseIntMatrix::from_bin(proto), 4, CoverKind::gcc1, 900 + seed);
        const SparseBinMatrix cover = gcc1(spec).matrix.as_binary();
        const auto gb = girth(proto);
        const auto gc = girth(cover);
        if (gb) {
            if (gc) REQUIRE(*gc >= *gb);
        } else {
            REQUIRE_FALSE(gc.has_value());
        }
        ++tested;
    }
    REQUIRE(tested >= 5);
}
