// Command-line surface for the graph-cover LDPC convolutional code library:
// construction, unwrapping, memory reduction, cycle / pseudo-codeword
// analysis, and seeded BER simulation. Every output is accompanied by a
// <output>.run.json manifest recording the invocation for reproducibility.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcldpc/gcldpc.hpp"

namespace {

using nlohmann::json;

struct RunManifest {
    std::string subcommand;
    std::vector<std::string> inputs;
    json params = json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::string> outputs;

    void write() const
    {
        for (const auto& out : outputs) {
            json j;
            j["subcommand"] = subcommand;
            j["inputs"] = inputs;
            j["params"] = params;
            if (seed) j["seed"] = *seed;
            j["outputs"] = outputs;
            std::ofstream os(out + ".run.json", std::ios::binary);
            if (!os) throw std::runtime_error("cannot write manifest for " + out);
            os << j.dump(2) << '\n';
        }
    }
};

gcldpc::PolyMatrix load_poly(const std::string& path, std::uint32_t r_override)
{
    gcldpc::PolyMatrix m = gcldpc::read_proto_file(path);
    if (r_override == 0) return m;
    std::vector<std::vector<std::uint32_t>> cells;
    cells.reserve(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.rows(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) cells.push_back(m.cell(j, i));
    return gcldpc::PolyMatrix::from_cells(m.rows(), m.cols(), r_override, std::move(cells));
}

bool file_is_convcode(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string tok;
    is >> tok;
    return tok == "convcode";
}

int cmd_construct(const std::string& proto_path, const std::string& parts_path,
                  std::uint32_t r, const std::string& kind, bool gf2_cancel,
                  const std::string& out)
{
    gcldpc::SparseBinMatrix result;
    bool parallel = false;
    if (kind == "qc") {
        result = gcldpc::expand_poly(load_poly(proto_path, r));
    } else {
        const gcldpc::CoverKind ck =
            kind == "gcc1" ? gcldpc::CoverKind::gcc1 : gcldpc::CoverKind::gcc2;
        gcldpc::CoverSpec spec;
        if (!parts_path.empty()) {
            spec = gcldpc::read_parts_file(parts_path, ck);
        } else {
            // Per-entry circulant cover from the proto file's exponents.
            gcldpc::PolyMatrix m = load_poly(proto_path, r);
            if (m.modulus() == 0)
                throw std::runtime_error("construct: need --r or a modulus in the proto file");
            spec.kind = ck;
            spec.proto = gcldpc::SparseIntMatrix(m.rows(), m.cols());
            for (std::size_t j = 0; j < m.rows(); ++j)
                for (std::size_t i = 0; i < m.cols(); ++i)
                    for (std::uint32_t s : m.cell(j, i)) {
                        spec.proto.add(j, i, 1);
                        gcldpc::CoverSpec::Part part;
                        part.block = gcldpc::SparseIntMatrix(m.rows(), m.cols());
                        part.block.add(j, i, 1);
                        part.perm = gcldpc::PermSpec::circulant(s, m.modulus());
                        spec.parts.push_back(std::move(part));
                    }
        }
        gcldpc::CoverResult cover =
            ck == gcldpc::CoverKind::gcc1 ? gcldpc::gcc1(spec) : gcldpc::gcc2(spec);
        parallel = cover.parallel_edges;
        result = cover.matrix.as_binary(gf2_cancel);
    }
    if (parallel)
        std::cerr << "warning: construction produced parallel edges"
                  << (gf2_cancel ? " (cancelled mod 2)" : " (collapsed to single edges)")
                  << "; parallel edges weaken the final Tanner graph\n";
    gcldpc::write_alist(result, out);
    std::cout << "wrote " << out << " (" << result.rows() << " x " << result.cols() << ", "
              << result.nnz() << " ones)\n";
    return 0;
}

int cmd_unwrap(const std::string& input, bool tanner, bool jfz_diag, bool jfz_random,
               std::uint64_t ell, std::optional<std::uint64_t> seed, const std::string& out)
{
    gcldpc::ConvCode code;
    if (tanner) {
        code = gcldpc::from_tanner_poly(gcldpc::tanner_unwrap(gcldpc::read_proto_file(input)));
    } else {
        gcldpc::SparseBinMatrix h = gcldpc::read_alist_file(input);
        if (jfz_diag) {
            const gcldpc::CutParams p = gcldpc::cut_params(h.rows(), h.cols(), ell);
            std::cout << gcldpc::cut_params_report(p) << '\n';
            code = gcldpc::jfz_diagonal_unwrap(h, ell);
        } else {
            if (!seed)
                throw std::runtime_error("unwrap --jfz-random: --seed is required "
                                         "(no hidden entropy)");
            code = gcldpc::jfz_unwrap(gcldpc::jfz_random_cut(h, *seed));
        }
    }
    gcldpc::write_convcode(code, out);
    const auto p = code.params();
    std::cout << "wrote " << out << ": R=" << p.rate_num << '/' << p.rate_den
              << " m_s=" << p.ms << " nu_s=" << p.nu_s << " T_s=" << p.Ts << '\n';
    return 0;
}

int cmd_reduce(const std::string& input, const std::string& out)
{
    gcldpc::PolyMatrix m = gcldpc::read_proto_file(input);
    if (m.modulus() != 0) m = gcldpc::tanner_unwrap(m);
    const gcldpc::PolyMatrix reduced = gcldpc::reduce_memory(m);
    gcldpc::write_proto(reduced, out);
    std::cout << "wrote " << out << ": m_s " << m.max_exponent() << " -> "
              << reduced.max_exponent() << '\n';
    return 0;
}

int cmd_analyze(const std::string& input, std::uint32_t max_len, const std::string& out)
{
    gcldpc::CycleSpectrum spec;
    if (file_is_convcode(input)) {
        const gcldpc::ConvCode code = gcldpc::read_convcode_file(input);
        // Probe the girth on a window to pick the default length range.
        if (max_len == 0) {
            gcldpc::CycleSpectrum probe = gcldpc::conv_cycle_spectrum(code, 2);
            if (probe.girth == 0) {
                std::cout << "girth=inf\n";
                std::ofstream os(out, std::ios::binary);
                os << "length,count,normalized_avg\n";
                return 0;
            }
            max_len = 2 * probe.girth - 2;
        }
        spec = gcldpc::conv_cycle_spectrum(code, max_len);
    } else {
        const gcldpc::SparseBinMatrix h = gcldpc::read_alist_file(input);
        auto g = gcldpc::girth(h);
        if (!g) {
            std::cout << "girth=inf\n";
            std::ofstream os(out, std::ios::binary);
            os << "length,count,normalized_avg\n";
            return 0;
        }
        if (max_len == 0) max_len = 2 * *g - 2;
        spec = gcldpc::cycle_spectrum(h, max_len);
    }
    std::cout << "girth=" << spec.girth << '\n';
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + out);
    os << "length,count,normalized_avg\n";
    char buf[64];
    for (const auto& [len, count] : spec.counts) {
        std::snprintf(buf, sizeof buf, "%.6g", spec.normalized.at(len));
        os << len << ',' << count << ',' << buf << '\n';
        std::cout << "N_" << len << "=" << buf << '\n';
    }
    return 0;
}

int cmd_pseudoweight(const std::string& omega_path, const std::string& alist_path,
                     const std::string& out)
{
    const gcldpc::SparseBinMatrix h = gcldpc::read_alist_file(alist_path);
    gcldpc::PseudoCodeword pc{gcldpc::read_vector_file(omega_path)};
    if (pc.omega.size() != h.cols())
        throw std::runtime_error("pseudoweight: vector length does not match the matrix");
    const gcldpc::PseudoWeights w = gcldpc::pseudoweights(pc);
    std::ostringstream report;
    char buf[64];
    auto g6 = [&buf](double x) {
        std::snprintf(buf, sizeof buf, "%.6g", x);
        return std::string(buf);
    };
    report << "awgnc=" << g6(w.awgnc) << '\n';
    report << "bsc=" << g6(w.bsc) << '\n';
    report << "bec=" << g6(w.bec) << '\n';
    report << "in_polytope=" << (gcldpc::fundamental_polytope_contains(h, pc) ? "true" : "false")
           << '\n';
    report << "active_part_has_cycle="
           << (gcldpc::active_part_has_cycle(h, pc) ? "true" : "false") << '\n';
    std::cout << report.str();
    if (!out.empty()) {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + out);
        os << report.str();
    }
    return 0;
}

std::map<std::string, std::string> read_kv_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed_flag,
                 std::uint32_t threads_flag, const std::string& out_flag, json& manifest_params)
{
    auto kv = read_kv_config(config_path);
    auto need = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw std::runtime_error("simulate: config key '" + k + "' missing");
        return it->second;
    };
    auto get = [&](const std::string& k, const std::string& dflt) {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    };

    const std::string code_path = need("code");
    gcldpc::SimConfig cfg;
    cfg.iterations = static_cast<std::uint32_t>(std::stoul(get("iterations", "100")));
    cfg.max_frames = std::stoull(get("max_frames", "1000000"));
    cfg.min_bit_errors = std::stoull(get("min_bit_errors", "500"));
    cfg.min_frame_errors = std::stoull(get("min_frame_errors", "100"));
    {
        std::stringstream ss(need("snrs_db"));
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.snrs_db.push_back(std::stod(tok));
    }
    if (seed_flag)
        cfg.seed = *seed_flag;
    else if (kv.count("seed"))
        cfg.seed = std::stoull(kv["seed"]);
    else
        throw std::runtime_error("simulate: a seed is required (config 'seed' or --seed); "
                                 "no hidden entropy");
    cfg.threads = threads_flag ? threads_flag
                               : static_cast<std::uint32_t>(std::stoul(get("threads", "1")));

    const std::string decoder = get("decoder", "");
    gcldpc::SimCode code;
    if (file_is_convcode(code_path)) {
        gcldpc::ConvCode cc = gcldpc::read_convcode_file(code_path);
        std::uint64_t frame_blocks;
        if (kv.count("frame_blocks")) {
            frame_blocks = std::stoull(kv["frame_blocks"]);
        } else {
            // Terminated frames of >= 20 constraint lengths, whole periods.
            frame_blocks = 20ull * (cc.ms() + 1);
            if (frame_blocks % cc.Ts()) frame_blocks += cc.Ts() - frame_blocks % cc.Ts();
        }
        cfg.decoder = (decoder.empty() || decoder == "pipeline") ? gcldpc::DecoderKind::pipeline
                                                                 : gcldpc::DecoderKind::block;
        code = gcldpc::SimCode::conv_code(get("code_id", code_path), std::move(cc), frame_blocks);
    } else {
        if (decoder == "pipeline")
            throw std::runtime_error("simulate: pipeline decoder requires a convolutional code");
        cfg.decoder = gcldpc::DecoderKind::block;
        code = gcldpc::SimCode::block_code(get("code_id", code_path),
                                           gcldpc::read_alist_file(code_path));
    }

    const std::string out = out_flag.empty() ? get("out", "ber.csv") : out_flag;
    const gcldpc::SimResult res = gcldpc::run_ber(code, cfg);
    gcldpc::emit_csv(res, out);
    std::cout << "wrote " << out << '\n';
    gcldpc::emit_csv(res, std::cout);

    manifest_params["config"] = config_path;
    manifest_params["code"] = code_path;
    manifest_params["decoder"] = cfg.decoder == gcldpc::DecoderKind::pipeline ? "pipeline" : "block";
    manifest_params["iterations"] = cfg.iterations;
    manifest_params["threads"] = cfg.threads;
    manifest_params["seed"] = cfg.seed;
    manifest_params["out"] = out;
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"graph-cover LDPC convolutional code toolkit"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "expand a proto/polynomial matrix to an alist");
    std::string c_proto, c_parts, c_kind = "qc", c_out = "out.alist";
    std::uint32_t c_r = 0;
    bool c_cancel = false;
    construct->add_option("--proto", c_proto, "proto text file");
    construct->add_option("--parts", c_parts, "explicit decomposition + permutation file");
    construct->add_option("--r", c_r, "circulant size override");
    construct->add_option("--kind", c_kind, "qc | gcc1 | gcc2")
        ->check(CLI::IsMember({"qc", "gcc1", "gcc2"}));
    construct->add_option("--out", c_out, "output alist path");
    construct->add_flag("--gf2-cancel", c_cancel, "cancel coinciding parallel edges mod 2");

    // unwrap
    auto* unwrap = app.add_subcommand("unwrap", "derive a convolutional code from a block code");
    std::string u_input, u_out = "code.ccm";
    bool u_tanner = false, u_diag = false, u_random = false;
    std::uint64_t u_ell = 1;
    std::optional<std::uint64_t> u_seed;
    unwrap->add_option("input", u_input, "alist (JFZ) or proto file (Tanner)")->required();
    unwrap->add_flag("--tanner", u_tanner, "Tanner unwrapping of a polynomial matrix");
    unwrap->add_flag("--jfz-diagonal", u_diag, "diagonal-cut JFZ unwrapping");
    unwrap->add_flag("--jfz-random", u_random, "random-cut JFZ unwrapping");
    unwrap->add_option("--ell", u_ell, "diagonal-cut step multiplier");
    unwrap->add_option("--seed", u_seed, "random-cut seed");
    unwrap->add_option("--out", u_out, "output code manifest");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "divide each row by its minimum power of D");
    std::string r_input, r_out = "reduced.proto";
    reduce->add_option("input", r_input, "D-domain proto file")->required();
    reduce->add_option("--out", r_out, "output proto file");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "girth and cycle spectrum");
    std::string a_input, a_out = "spectrum.csv";
    std::uint32_t a_maxlen = 0;
    analyze->add_option("input", a_input, "alist or convcode manifest")->required();
    analyze->add_option("--max-len", a_maxlen, "largest cycle length (default 2*girth - 2)");
    analyze->add_option("--out", a_out, "output CSV");

    // pseudoweight
    auto* pw = app.add_subcommand("pseudoweight", "pseudo-weights and polytope membership");
    std::string p_omega, p_alist, p_out;
    pw->add_option("--omega", p_omega, "vector file (decimals or a/b)")->required();
    pw->add_option("--alist", p_alist, "parity-check alist")->required();
    pw->add_option("--out", p_out, "optional report path");

    // simulate
    auto* sim = app.add_subcommand("simulate", "seeded Monte-Carlo BER over BPSK-AWGN");
    std::string s_config, s_out;
    std::optional<std::uint64_t> s_seed;
    std::uint32_t s_threads = 0;
    sim->add_option("--config", s_config, "key=value config file")->required();
    sim->add_option("--seed", s_seed, "seed override");
    sim->add_option("--threads", s_threads, "worker count (result is thread-count independent)");
    sim->add_option("--out", s_out, "output CSV override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        RunManifest manifest;
        if (construct->parsed()) {
            manifest = {"construct", {c_proto, c_parts}, {{"kind", c_kind}, {"r", c_r}},
                        std::nullopt, {c_out}};
            const int rc = cmd_construct(c_proto, c_parts, c_r, c_kind, c_cancel, c_out);
            manifest.write();
            return rc;
        }
        if (unwrap->parsed()) {
            const int mode_flags = int(u_tanner) + int(u_diag) + int(u_random);
            if (mode_flags != 1)
                throw std::runtime_error(
                    "unwrap: choose exactly one of --tanner, --jfz-diagonal, --jfz-random");
            manifest = {"unwrap",
                        {u_input},
                        {{"tanner", u_tanner}, {"jfz_diagonal", u_diag}, {"jfz_random", u_random},
                         {"ell", u_ell}},
                        u_seed,
                        {u_out}};
            const int rc = cmd_unwrap(u_input, u_tanner, u_diag, u_random, u_ell, u_seed, u_out);
            manifest.write();
            return rc;
        }
        if (reduce->parsed()) {
            manifest = {"reduce", {r_input}, json::object(), std::nullopt, {r_out}};
            const int rc = cmd_reduce(r_input, r_out);
            manifest.write();
            return rc;
        }
        if (analyze->parsed()) {
            manifest = {"analyze", {a_input}, {{"max_len", a_maxlen}}, std::nullopt, {a_out}};
            const int rc = cmd_analyze(a_input, a_maxlen, a_out);
            manifest.write();
            return rc;
        }
        if (pw->parsed()) {
            manifest = {"pseudoweight", {p_omega, p_alist}, json::object(), std::nullopt,
                        p_out.empty() ? std::vector<std::string>{} : std::vector<std::string>{p_out}};
            const int rc = cmd_pseudoweight(p_omega, p_alist, p_out);
            manifest.write();
            return rc;
        }
        if (sim->parsed()) {
            json params;
            const int rc = cmd_simulate(s_config, s_seed, s_threads, s_out, params);
            manifest = {"simulate", {s_config}, params, s_seed, {params["out"]}};
            manifest.write();
            return rc;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
