#ifndef GCLDPC_IO_HPP
#define GCLDPC_IO_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "convcode.hpp"
#include "cover.hpp"
#include "gf2.hpp"
#include "poly.hpp"
#include "unwrap.hpp"

namespace gcldpc {

// ---------------------------------------------------------------------------
// alist (MacKay layout): "n m", "max_col_deg max_row_deg", per-column
// degrees, per-row degrees, then 1-indexed neighbor lists, zero-padded to
// the maximum degree. The writer emits exactly this form, bit-exact.
// ---------------------------------------------------------------------------

inline void write_alist(const SparseBinMatrix& h, std::ostream& os)
{
    const std::size_t n = h.cols(), m = h.rows();
    SparseBinMatrix ht = h.transpose();
    std::size_t maxc = 0, maxr = 0;
    for (std::size_t c = 0; c < n; ++c) maxc = std::max(maxc, ht.row(c).size());
    for (std::size_t r = 0; r < m; ++r) maxr = std::max(maxr, h.row(r).size());

    os << n << ' ' << m << '\n' << maxc << ' ' << maxr << '\n';
    for (std::size_t c = 0; c < n; ++c) os << ht.row(c).size() << (c + 1 < n ? ' ' : '\n');
    if (n == 0) os << '\n';
    for (std::size_t r = 0; r < m; ++r) os << h.row(r).size() << (r + 1 < m ? ' ' : '\n');
    if (m == 0) os << '\n';
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t k = 0; k < maxc; ++k) {
            const std::size_t v = k < ht.row(c).size() ? ht.row(c)[k] + 1 : 0;
            os << v << (k + 1 < maxc ? ' ' : '\n');
        }
        if (maxc == 0) os << '\n';
    }
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t k = 0; k < maxr; ++k) {
            const std::size_t v = k < h.row(r).size() ? h.row(r)[k] + 1 : 0;
            os << v << (k + 1 < maxr ? ' ' : '\n');
        }
        if (maxr == 0) os << '\n';
    }
}

inline void write_alist(const SparseBinMatrix& h, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_alist: cannot open " + path);
    write_alist(h, os);
}

namespace detail {

inline std::uint64_t next_uint(std::istream& is, const char* what)
{
    long long v;
    if (!(is >> v) || v < 0)
        throw std::runtime_error(std::string("alist parse error: expected ") + what);
    return static_cast<std::uint64_t>(v);
}

inline SparseBinMatrix read_alist_lists(std::istream& is, std::size_t n, std::size_t m,
                                        const std::vector<std::size_t>& cdeg,
                                        const std::vector<std::size_t>& rdeg,
                                        std::size_t ccount_per_col, std::size_t rcount_per_row)
{
    SparseBinMatrix h(m, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t k = ccount_per_col ? ccount_per_col : cdeg[c];
        std::size_t seen = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t v = next_uint(is, "column neighbor");
            if (v == 0) continue;
            if (v > m) throw std::runtime_error("alist parse error: check index out of range");
            h.set(v - 1, c);
            ++seen;
        }
        if (seen != cdeg[c]) throw std::runtime_error("alist parse error: column degree mismatch");
    }
    // Row lists are redundant; read and cross-check.
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t k = rcount_per_row ? rcount_per_row : rdeg[r];
        std::size_t seen = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t v = next_uint(is, "row neighbor");
            if (v == 0) continue;
            if (v > n) throw std::runtime_error("alist parse error: variable index out of range");
            if (!h.at(r, v - 1)) throw std::runtime_error("alist parse error: inconsistent lists");
            ++seen;
        }
        if (seen != rdeg[r]) throw std::runtime_error("alist parse error: row degree mismatch");
    }
    return h;
}

}  // namespace detail

/// Reads the zero-padded form (as written by write_alist) from a stream,
/// consuming exactly the matrix's tokens.
inline SparseBinMatrix read_alist(std::istream& is)
{
    const std::size_t n = detail::next_uint(is, "n");
    const std::size_t m = detail::next_uint(is, "m");
    const std::size_t maxc = detail::next_uint(is, "max col degree");
    const std::size_t maxr = detail::next_uint(is, "max row degree");
    std::vector<std::size_t> cdeg(n), rdeg(m);
    for (auto& d : cdeg) d = detail::next_uint(is, "column degree");
    for (auto& d : rdeg) d = detail::next_uint(is, "row degree");
    return detail::read_alist_lists(is, n, m, cdeg, rdeg, maxc, maxr);
}

/// Reads an alist file, accepting both the zero-padded and the unpadded
/// variant.
inline SparseBinMatrix read_alist_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_alist_file: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::size_t n = detail::next_uint(ss, "n");
    const std::size_t m = detail::next_uint(ss, "m");
    const std::size_t maxc = detail::next_uint(ss, "max col degree");
    const std::size_t maxr = detail::next_uint(ss, "max row degree");
    std::vector<std::size_t> cdeg(n), rdeg(m);
    std::size_t nnz = 0;
    for (auto& d : cdeg) { d = detail::next_uint(ss, "column degree"); nnz += d; }
    for (auto& d : rdeg) d = detail::next_uint(ss, "row degree");

    // Count the remaining integer tokens to tell padded from unpadded.
    const std::streampos rest = ss.tellg();
    std::size_t tokens = 0;
    {
        long long tmp;
        while (ss >> tmp) ++tokens;
    }
    ss.clear();
    ss.seekg(rest);
    if (tokens == n * maxc + m * maxr)
        return detail::read_alist_lists(ss, n, m, cdeg, rdeg, maxc, maxr);
    if (tokens == 2 * nnz)
        return detail::read_alist_lists(ss, n, m, cdeg, rdeg, 0, 0);
    throw std::runtime_error("read_alist_file: token count matches neither padded nor unpadded form");
}

// ---------------------------------------------------------------------------
// proto text format for PolyMatrix: header "rows cols modulus" with "-" for
// the D-domain, then one line per row; each cell is "-" (zero polynomial)
// or comma-separated exponents.
// ---------------------------------------------------------------------------

inline void write_proto(const PolyMatrix& m, std::ostream& os)
{
    os << m.rows() << ' ' << m.cols() << ' ';
    if (m.modulus() == 0)
        os << '-';
    else
        os << m.modulus();
    os << '\n';
    for (std::size_t j = 0; j < m.rows(); ++j) {
        for (std::size_t i = 0; i < m.cols(); ++i) {
            const auto& cell = m.cell(j, i);
            if (cell.empty()) {
                os << '-';
            } else {
                for (std::size_t k = 0; k < cell.size(); ++k)
                    os << cell[k] << (k + 1 < cell.size() ? "," : "");
            }
            os << (i + 1 < m.cols() ? ' ' : '\n');
        }
    }
}

inline void write_proto(const PolyMatrix& m, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_proto: cannot open " + path);
    write_proto(m, os);
}

inline PolyMatrix read_proto(std::istream& is)
{
    std::size_t rows, cols;
    std::string mod_tok;
    if (!(is >> rows >> cols >> mod_tok))
        throw std::runtime_error("proto parse error: bad header");
    std::uint32_t modulus = 0;
    if (mod_tok != "-") {
        try {
            modulus = static_cast<std::uint32_t>(std::stoul(mod_tok));
        } catch (...) {
            throw std::runtime_error("proto parse error: bad modulus");
        }
        if (modulus == 0) throw std::runtime_error("proto parse error: modulus must be positive");
    }
    std::vector<std::vector<std::uint32_t>> cells;
    cells.reserve(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        std::string tok;
        if (!(is >> tok)) throw std::runtime_error("proto parse error: missing cell");
        std::vector<std::uint32_t> cell;
        if (tok != "-") {
            std::stringstream cs(tok);
            std::string part;
            while (std::getline(cs, part, ',')) {
                try {
                    cell.push_back(static_cast<std::uint32_t>(std::stoul(part)));
                } catch (...) {
                    throw std::runtime_error("proto parse error: bad exponent '" + part + "'");
                }
            }
            if (cell.empty()) throw std::runtime_error("proto parse error: empty cell token");
        }
        cells.push_back(std::move(cell));
    }
    return PolyMatrix::from_cells(rows, cols, modulus, std::move(cells));
}

inline PolyMatrix read_proto_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_proto_file: cannot open " + path);
    return read_proto(is);
}

// ---------------------------------------------------------------------------
// ConvCode manifest: "convcode c b m_s T_s" followed by the T_s*(m_s+1)
// sub-blocks, each introduced by "block t i" and serialized as an alist.
// ---------------------------------------------------------------------------

inline void write_convcode(const ConvCode& code, std::ostream& os)
{
    os << "convcode " << code.c() << ' ' << code.b() << ' ' << code.ms() << ' ' << code.Ts()
       << '\n';
    for (std::uint32_t t = 0; t < code.Ts(); ++t)
        for (std::uint32_t i = 0; i <= code.ms(); ++i) {
            os << "block " << t << ' ' << i << '\n';
            write_alist(code.block(t, i), os);
        }
}

inline void write_convcode(const ConvCode& code, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_convcode: cannot open " + path);
    write_convcode(code, os);
}

inline ConvCode read_convcode(std::istream& is)
{
    std::string magic;
    if (!(is >> magic) || magic != "convcode")
        throw std::runtime_error("convcode parse error: bad magic");
    const std::uint32_t c = static_cast<std::uint32_t>(detail::next_uint(is, "c"));
    const std::uint32_t b = static_cast<std::uint32_t>(detail::next_uint(is, "b"));
    const std::uint32_t ms = static_cast<std::uint32_t>(detail::next_uint(is, "m_s"));
    const std::uint32_t Ts = static_cast<std::uint32_t>(detail::next_uint(is, "T_s"));
    std::vector<std::vector<SparseBinMatrix>> blocks(Ts);
    for (std::uint32_t t = 0; t < Ts; ++t) {
        blocks[t].reserve(ms + 1);
        for (std::uint32_t i = 0; i <= ms; ++i) {
            std::string kw;
            std::uint64_t tt, ii;
            if (!(is >> kw) || kw != "block")
                throw std::runtime_error("convcode parse error: expected block header");
            tt = detail::next_uint(is, "block t");
            ii = detail::next_uint(is, "block i");
            if (tt != t || ii != i)
                throw std::runtime_error("convcode parse error: block out of order");
            SparseBinMatrix blk = read_alist(is);
            if (blk.rows() != c - b || blk.cols() != c)
                throw std::runtime_error("convcode parse error: block dimension mismatch");
            blocks[t].push_back(std::move(blk));
        }
    }
    return ConvCode::from_blocks(c, b, std::move(blocks));
}

inline ConvCode read_convcode_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_convcode_file: cannot open " + path);
    return read_convcode(is);
}

// ---------------------------------------------------------------------------
// Decomposition manifest: "decomposition k" then k parts as alists.
// ---------------------------------------------------------------------------

inline void write_decomposition(const Decomposition& d, std::ostream& os)
{
    os << "decomposition " << d.parts.size() << '\n';
    for (std::size_t k = 0; k < d.parts.size(); ++k) {
        os << "part " << k << '\n';
        write_alist(d.parts[k], os);
    }
}

inline Decomposition read_decomposition(std::istream& is)
{
    std::string magic;
    if (!(is >> magic) || magic != "decomposition")
        throw std::runtime_error("decomposition parse error: bad magic");
    const std::size_t k = detail::next_uint(is, "part count");
    Decomposition d;
    for (std::size_t i = 0; i < k; ++i) {
        std::string kw;
        if (!(is >> kw) || kw != "part")
            throw std::runtime_error("decomposition parse error: expected part header");
        detail::next_uint(is, "part index");
        d.parts.push_back(read_alist(is));
    }
    d.validate();
    return d;
}

// ---------------------------------------------------------------------------
// CoverSpec parts file: "parts <count> <rows> <cols>", then per part any
// number of "cell j i value" lines closed by one "perm ..." line:
//   perm circulant <s> <r> | perm toeplitz <s> | perm identity <r>
//   | perm explicit <image...> (r values)
// ---------------------------------------------------------------------------

inline CoverSpec read_parts_file(const std::string& path, CoverKind kind)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_parts_file: cannot open " + path);
    std::string kw;
    if (!(is >> kw) || kw != "parts") throw std::runtime_error("parts parse error: bad magic");
    const std::size_t count = detail::next_uint(is, "part count");
    const std::size_t rows = detail::next_uint(is, "rows");
    const std::size_t cols = detail::next_uint(is, "cols");

    CoverSpec spec;
    spec.kind = kind;
    spec.proto = SparseIntMatrix(rows, cols);
    for (std::size_t k = 0; k < count; ++k) {
        CoverSpec::Part part;
        part.block = SparseIntMatrix(rows, cols);
        bool have_perm = false;
        while (is >> kw) {
            if (kw == "cell") {
                const std::size_t j = detail::next_uint(is, "cell row");
                const std::size_t i = detail::next_uint(is, "cell col");
                const std::uint32_t v =
                    static_cast<std::uint32_t>(detail::next_uint(is, "cell value"));
                part.block.add(j, i, v);
                spec.proto.add(j, i, v);
            } else if (kw == "perm") {
                std::string kindtok;
                if (!(is >> kindtok)) throw std::runtime_error("parts parse error: missing perm kind");
                if (kindtok == "circulant") {
                    const std::uint32_t s = static_cast<std::uint32_t>(detail::next_uint(is, "shift"));
                    const std::uint32_t r = static_cast<std::uint32_t>(detail::next_uint(is, "size"));
                    part.perm = PermSpec::circulant(s, r);
                } else if (kindtok == "toeplitz") {
                    part.perm = PermSpec::toeplitz(
                        static_cast<std::uint32_t>(detail::next_uint(is, "shift")));
                } else if (kindtok == "identity") {
                    part.perm = PermSpec::identity(
                        static_cast<std::uint32_t>(detail::next_uint(is, "size")));
                } else if (kindtok == "explicit") {
                    const std::uint32_t r = static_cast<std::uint32_t>(detail::next_uint(is, "size"));
                    std::vector<std::uint32_t> image(r);
                    for (auto& x : image)
                        x = static_cast<std::uint32_t>(detail::next_uint(is, "image"));
                    part.perm = PermSpec::explicit_perm(std::move(image));
                } else {
                    throw std::runtime_error("parts parse error: unknown perm kind " + kindtok);
                }
                have_perm = true;
                break;
            } else {
                throw std::runtime_error("parts parse error: unexpected token " + kw);
            }
        }
        if (!have_perm) throw std::runtime_error("parts parse error: part without perm");
        spec.parts.push_back(std::move(part));
    }
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// Pseudo-codeword vector file: whitespace-separated entries, decimal or a/b.
// ---------------------------------------------------------------------------

inline std::vector<double> read_vector_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_vector_file: cannot open " + path);
    std::vector<double> v;
    std::string tok;
    while (is >> tok) {
        const auto slash = tok.find('/');
        try {
            if (slash == std::string::npos) {
                v.push_back(std::stod(tok));
            } else {
                const double num = std::stod(tok.substr(0, slash));
                const double den = std::stod(tok.substr(slash + 1));
                if (den == 0.0) throw std::runtime_error("zero denominator");
                v.push_back(num / den);
            }
        } catch (...) {
            throw std::runtime_error("vector parse error: bad entry '" + tok + "'");
        }
    }
    return v;
}

inline std::string cut_params_report(const CutParams& p)
{
    std::ostringstream os;
    os << "eta=" << p.eta << " ell=" << p.ell << " b_prime=" << p.b_prime
       << " c_prime=" << p.c_prime << " ms_prime=" << p.ms_prime << " Ts_prime=" << p.Ts_prime
       << " nu_s_prime=" << p.nu_s_prime;
    return os.str();
}

}  // namespace gcldpc

#endif  // GCLDPC_IO_HPP
