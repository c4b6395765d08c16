#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "gcldpc/gcldpc.hpp"
#include "support.hpp"

using namespace gcldpc;

TEST_CASE("gf2_rank on fixtures")
{
    SECTION("Tanner r=31 matrix has rank 91, so k = 64")
    {
        const SparseBinMatrix h = expand_poly(testsup::tanner_poly(31));
        REQUIRE(h.cols() == 155);
        REQUIRE(h.rows() == 93);
        REQUIRE(gf2_rank(h) == 91);
    }
    SECTION("all-zero matrix")
    {
        REQUIRE(gf2_rank(SparseBinMatrix(4, 9)) == 0);
    }
    SECTION("random matrices match the dense elimination oracle")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const SparseBinMatrix m = testsup::random_sparse(10, 20, 0.3, seed);
            REQUIRE(gf2_rank(m) == testsup::dense_rank_oracle(m));
        }
    }
    SECTION("rank equals rank of the transpose")
    {
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            const SparseBinMatrix m = testsup::random_sparse(13, 17, 0.25, seed);
            REQUIRE(gf2_rank(m) == gf2_rank(m.transpose()));
        }
    }
}

TEST_CASE("expand_poly")
{
    SECTION("r=7 two-row monomial matrix: block of shifted identities")
    {
        const SparseBinMatrix b = expand_poly(testsup::r7_poly());
        REQUIRE(b.rows() == 14);
        REQUIRE(b.cols() == 21);
        // Block (j, i) is I_s with row u holding its 1 at column (u - s) mod 7.
        const std::vector<std::vector<std::uint32_t>> shifts = {{1, 2, 4}, {6, 5, 3}};
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::uint32_t u = 0; u < 7; ++u)
                    for (std::uint32_t up = 0; up < 7; ++up) {
                        const bool expected = up == (u + 7 - shifts[j][i]) % 7;
                        REQUIRE(b.at(j * 7 + u, i * 7 + up) == expected);
                    }
    }
    SECTION("single zero-exponent entry is the identity")
    {
        const PolyMatrix m = PolyMatrix::from_cells(1, 1, 3, {{0}});
        const SparseBinMatrix b = expand_poly(m);
        for (std::uint32_t u = 0; u < 3; ++u)
            for (std::uint32_t up = 0; up < 3; ++up) REQUIRE(b.at(u, up) == (u == up));
    }
    SECTION("binomial entry matches the polynomial-times-vector oracle")
    {
        const PolyMatrix m = PolyMatrix::from_cells(1, 1, 4, {{0, 1}});
        const SparseBinMatrix b = expand_poly(m);
        const auto prof = degree_profile(b);
        REQUIRE(prof.regular);
        REQUIRE(prof.J == 2);
        // Schoolbook product (1 + X) v(X) mod X^4 - 1 against the matrix action.
        for (std::uint32_t bits = 0; bits < 16; ++bits) {
            std::vector<std::uint8_t> v(4), prod(4);
            for (std::uint32_t u = 0; u < 4; ++u) v[u] = (bits >> u) & 1;
            for (std::uint32_t u = 0; u < 4; ++u) prod[u] = v[u] ^ v[(u + 3) % 4];
            for (std::uint32_t u = 0; u < 4; ++u) {
                unsigned acc = 0;
                for (std::uint32_t up = 0; up < 4; ++up)
                    if (b.at(u, up)) acc ^= v[up];
                REQUIRE(acc == prod[u]);
            }
        }
    }
    SECTION("column degree equals the exponent count of the polynomial column")
    {
        const PolyMatrix m =
            PolyMatrix::from_cells(2, 2, 5, {{0, 2}, {1}, {}, {0, 3, 4}});
        const SparseBinMatrix b = expand_poly(m);
        const SparseBinMatrix bt = b.transpose();
        for (std::size_t i = 0; i < 2; ++i) {
            std::size_t expected = m.cell(0, i).size() + m.cell(1, i).size();
            for (std::uint32_t u = 0; u < 5; ++u)
                REQUIRE(bt.row(i * 5 + u).size() == expected);
        }
    }
    SECTION("exponent >= r is rejected")
    {
        REQUIRE_THROWS_AS(PolyMatrix::from_cells(1, 1, 3, {{3}}), std::invalid_argument);
    }
    SECTION("expansion commutes with polynomial evaluation, exhaustively")
    {
        const PolyMatrix m = PolyMatrix::from_cells(1, 2, 3, {{1}, {0, 2}});
        const SparseBinMatrix b = expand_poly(m);
        for (std::uint32_t bits = 0; bits < (1u << 6); ++bits) {
            std::vector<std::vector<std::uint32_t>> v(2);
            for (std::uint32_t k = 0; k < 6; ++k)
                if (bits & (1u << k)) v[k / 3].push_back(k % 3);
            const auto scalar = expand_poly_vector(v, 3);
            REQUIRE(poly_syndrome_is_zero(m, v) == is_in_nullspace(b, scalar));
        }
    }
}

TEST_CASE("is_in_nullspace")
{
    const SparseBinMatrix h = expand_poly(testsup::tanner_poly(31));
    SECTION("zero vector is always a codeword")
    {
        REQUIRE(is_in_nullspace(h, std::vector<std::uint8_t>(155, 0)));
    }
    SECTION("every nullspace basis vector is a codeword")
    {
        const auto basis = gf2_nullspace_basis(h);
        REQUIRE(basis.size() == 64);
        for (const auto& supp : basis)
            REQUIRE(is_in_nullspace(h, support_to_bits(supp, 155)));
    }
    SECTION("unit vector e_0 is not (column 0 has weight 3)")
    {
        std::vector<std::uint8_t> e0(155, 0);
        e0[0] = 1;
        REQUIRE_FALSE(is_in_nullspace(h, e0));
    }
    SECTION("length mismatch is an error")
    {
        REQUIRE_THROWS_AS(is_in_nullspace(h, std::vector<std::uint8_t>(10, 0)),
                          std::invalid_argument);
    }
}

TEST_CASE("degree_profile")
{
    SECTION("Tanner r=31 matrix is (3,5)-regular")
    {
        const auto p = degree_profile(expand_poly(testsup::tanner_poly(31)));
        REQUIRE(p.regular);
        REQUIRE(p.J == 3);
        REQUIRE(p.K == 5);
    }
    SECTION("the 5x10 cut example is (3,6)-regular")
    {
        const auto p = degree_profile(testsup::example1_matrix());
        REQUIRE(p.regular);
        REQUIRE(p.J == 3);
        REQUIRE(p.K == 6);
    }
    SECTION("empty matrix gives empty multisets")
    {
        const auto p = degree_profile(SparseBinMatrix(0, 0));
        REQUIRE(p.col_degrees.empty());
        REQUIRE(p.row_degrees.empty());
        REQUIRE_FALSE(p.regular);
    }
}

TEST_CASE("alist round trip is bit-exact")
{
    auto roundtrip = [](const SparseBinMatrix& m) {
        std::ostringstream os1;
        write_alist(m, os1);
        std::istringstream is(os1.str());
        const SparseBinMatrix back = read_alist(is);
        REQUIRE(back == m);
        std::ostringstream os2;
        write_alist(back, os2);
        REQUIRE(os1.str() == os2.str());
    };
    roundtrip(expand_poly(testsup::r7_poly()));
    roundtrip(testsup::example1_matrix());
    roundtrip(testsup::random_sparse(7, 12, 0.3, 42));
    roundtrip(SparseBinMatrix(3, 5));  // empty support
}

TEST_CASE("proto text round trip")
{
    auto roundtrip = [](const PolyMatrix& m) {
        std::ostringstream os;
        write_proto(m, os);
        std::istringstream is(os.str());
        REQUIRE(read_proto(is) == m);
    };
    roundtrip(testsup::tanner_poly(31));
    roundtrip(PolyMatrix::from_cells(2, 2, 0, {{0, 5}, {}, {3}, {1, 2, 7}}));
    roundtrip(PolyMatrix::from_cells(1, 3, 9, {{}, {8}, {0, 4}}));
}
