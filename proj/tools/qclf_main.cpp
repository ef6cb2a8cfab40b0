// qclf - construction, certification and simulation workbench for
// column-weight-2 quasi-cyclic LDPC code pairs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qclf/construct.hpp"
#include "qclf/gf.hpp"
#include "qclf/girth.hpp"
#include "qclf/qc_matrix.hpp"
#include "qclf/quantum.hpp"
#include "qclf/sim.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

int env_jobs() {
    const char* v = std::getenv("QCLF_JOBS");
    if (!v) return 0;
    int j = std::atoi(v);
    return j > 0 ? j : 0;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw qclf::param_error("cannot open " + path + " for writing");
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw qclf::param_error("cannot read " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// out.json -> out.x.json / out.z.json
std::string side_path(const std::string& path, char side) {
    auto dot = path.rfind('.');
    std::string tag = std::string(".") + side;
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

void print_metadata(const std::string& command, const nlohmann::json& params) {
    nlohmann::json meta;
    meta["artifact"] = "qclf";
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["params"] = params;
    std::cout << meta.dump() << "\n";
}

qclf::QcBlockMatrix load_descriptor(const std::string& path) {
    return qclf::parse_block_json(read_file(path));
}

struct CommonParams {
    int L = 0;
    std::int64_t P = 0;
    int base = 2;
    int nc = 1;
};

std::pair<qclf::QcBlockMatrix, qclf::QcBlockMatrix> build_pair(const CommonParams& cp) {
    if (cp.nc > 1) return qclf::build_sc_pair(cp.L, cp.P, cp.base, cp.nc);
    return qclf::build_orthogonal_pair(cp.L, cp.P, cp.base);
}

int cmd_construct(const CommonParams& cp, bool pair, int nb_e, std::uint64_t seed,
                  const std::string& out_json, const std::string& out_alist,
                  const std::string& out_nb) {
    if (cp.L == 4)
        std::cerr << "warning: L = 4 always contains an 8-cycle; girth-12 guarantees need L >= 6\n";
    if (nb_e > 0 && !pair) throw qclf::param_error("--nb-e needs --pair");
    if (nb_e > 0 && out_nb.empty()) throw qclf::param_error("--nb-e needs --out-nb PATH");
    nlohmann::json params{{"L", cp.L}, {"P", cp.P},       {"base", cp.base},
                          {"nc", cp.nc}, {"pair", pair}, {"nb_e", nb_e}};
    if (nb_e > 0) params["seed"] = seed;
    print_metadata("construct", params);

    if (!pair) {
        qclf::QcBlockMatrix h = qclf::build_classical(cp.L, cp.P, cp.base);
        std::string js = qclf::write_block_json(h);
        if (!out_json.empty())
            write_file(out_json, js);
        else
            std::cout << js;
        if (!out_alist.empty()) write_file(out_alist, qclf::write_alist(qclf::expand(h)));
        return 0;
    }

    auto [hx, hz] = build_pair(cp);
    if (!out_json.empty()) {
        write_file(side_path(out_json, 'x'), qclf::write_block_json(hx));
        write_file(side_path(out_json, 'z'), qclf::write_block_json(hz));
    } else if (out_alist.empty() && out_nb.empty()) {
        std::cout << qclf::write_block_json(hx);
        std::cout << qclf::write_block_json(hz);
    }
    if (!out_alist.empty()) {
        write_file(side_path(out_alist, 'x'), qclf::write_alist(qclf::expand(hx)));
        write_file(side_path(out_alist, 'z'), qclf::write_alist(qclf::expand(hz)));
    }
    if (nb_e > 0) {
        qclf::FieldSpec spec = qclf::FieldSpec::standard(nb_e);
        auto [gx, gz] = cp.nc > 1
                            ? qclf::build_sc_pair_nb(cp.L, cp.P, cp.base, cp.nc, spec, seed)
                            : qclf::extend_to_nb(hx, hz, spec, seed);
        write_file(side_path(out_nb, 'x'), qclf::write_gf_alist(gx, spec.primitive_poly));
        write_file(side_path(out_nb, 'z'), qclf::write_gf_alist(gz, spec.primitive_poly));
        nlohmann::json meta{{"e", spec.e}, {"primitive_poly", spec.primitive_poly}, {"seed", seed}};
        write_file(out_nb + ".meta.json", meta.dump() + "\n");
    }
    return 0;
}

int cmd_girth(const std::string& in, const CommonParams& cp, int cap, bool strict, bool oracle,
              int jobs) {
    qclf::QcBlockMatrix m;
    nlohmann::json params{{"cap", cap}, {"strict", strict}, {"oracle", oracle}};
    if (!in.empty()) {
        m = load_descriptor(in);
        params["in"] = in;
    } else {
        if (cp.L == 0 || cp.P == 0) throw qclf::param_error("need --in or --L/--P");
        m = cp.nc > 1 ? qclf::build_sc_pair(cp.L, cp.P, cp.base, cp.nc).first
                      : qclf::build_classical(cp.L, cp.P, cp.base);
        params["L"] = cp.L;
        params["P"] = cp.P;
        params["base"] = cp.base;
        params["nc"] = cp.nc;
    }
    print_metadata("girth", params);

    qclf::GirthResult g = qclf::girth(m, cap, strict);
    if (g.exact)
        std::cout << "girth: " << g.length << "\n";
    else
        std::cout << "girth: > " << g.length << " (no cycle of length <= " << g.length
                  << " found)\n";
    if (g.certificate)
        std::cout << "certificate: " << qclf::certificate_to_json(*g.certificate) << "\n";

    if (oracle) {
        auto bfs = qclf::girth_bfs_oracle(qclf::expand(m), jobs);
        if (bfs)
            std::cout << "oracle: " << *bfs << "\n";
        else
            std::cout << "oracle: acyclic\n";
        bool agree;
        if (g.exact)
            agree = bfs && g.length == *bfs;
        else
            agree = !bfs || *bfs > g.length;  // a floor must not contradict the oracle
        std::cout << "oracle-agreement: " << (agree ? "yes" : "NO") << "\n";
        if (!agree) return 1;
    }
    return 0;
}

int cmd_search_min_p(const std::vector<int>& Ls, int base, std::int64_t p_lo,
                     std::int64_t p_hi_opt, int jobs, const std::string& out_csv) {
    nlohmann::json params{{"L", Ls}, {"base", base}, {"min_p", p_lo}, {"jobs", jobs}};
    print_metadata("search-min-p", params);
    std::ostringstream csv;
    csv << "L,base,p_lo,p_hi,p_min\n";
    bool all_found = true;
    for (int L : Ls) {
        std::int64_t hi = p_hi_opt > 0 ? p_hi_opt : qclf::bound_p0(L, base);
        auto got = qclf::min_p_search(L, base, p_lo, hi, jobs);
        std::cout << "L=" << L << " base=" << base << " p0=" << qclf::bound_p0(L, base)
                  << " p0_base_n=" << qclf::bound_p0_base_n(L, base) << " range=[" << p_lo << ","
                  << hi << "] p_min=";
        if (got)
            std::cout << *got << "\n";
        else {
            std::cout << "none-in-range\n";
            all_found = false;
        }
        csv << L << ',' << base << ',' << p_lo << ',' << hi << ','
            << (got ? std::to_string(*got) : std::string("none")) << '\n';
    }
    if (!out_csv.empty()) {
        std::ofstream os(out_csv, std::ios::app);
        if (!os) throw qclf::param_error("cannot open " + out_csv);
        os << csv.str();
    }
    return all_found ? 0 : 1;
}

int cmd_verify(const std::string& in_x, const std::string& in_z, const CommonParams& cp,
               bool orth, bool iso, bool geq, bool ext, bool full_viol, int jobs) {
    bool from_files = !in_x.empty();
    if (from_files && in_z.empty()) throw qclf::param_error("--in-x needs --in-z");
    if (!from_files && (cp.L == 0 || cp.P == 0))
        throw qclf::param_error("need --in-x/--in-z or --L/--P");
    if (!orth && !iso && !geq && !ext) {
        orth = geq = true;
        if (!from_files) iso = ext = true;
    }
    if (from_files && (iso || ext))
        throw qclf::param_error(
            "--isomorphism and --extension-condition need construction parameters (--L/--P)");

    nlohmann::json params{{"orthogonality", orth},
                          {"isomorphism", iso},
                          {"girth_equal", geq},
                          {"extension_condition", ext}};
    if (from_files) {
        params["in_x"] = in_x;
        params["in_z"] = in_z;
    } else {
        params["L"] = cp.L;
        params["P"] = cp.P;
        params["base"] = cp.base;
        params["nc"] = cp.nc;
    }
    print_metadata("verify", params);

    qclf::QcBlockMatrix bx, bz;
    if (from_files) {
        bx = load_descriptor(in_x);
        bz = load_descriptor(in_z);
    } else {
        auto pr = build_pair(cp);
        bx = std::move(pr.first);
        bz = std::move(pr.second);
    }

    bool all_ok = true;
    if (orth) {
        auto rep = qclf::check_orthogonal(qclf::expand(bx), qclf::expand(bz), jobs);
        if (rep.ok) {
            std::cout << "orthogonality: PASS\n";
        } else {
            all_ok = false;
            std::size_t show = full_viol ? rep.violations.size()
                                         : std::min<std::size_t>(rep.violations.size(), 100);
            std::cout << "orthogonality: FAIL (" << rep.violations.size()
                      << " nonzero product entries";
            if (show < rep.violations.size()) std::cout << ", showing " << show;
            std::cout << ")\n";
            for (std::size_t i = 0; i < show; ++i)
                std::cout << "  (" << rep.violations[i].first << "," << rep.violations[i].second
                          << ")\n";
        }
    }
    if (iso) {
        try {
            auto w = qclf::isomorphism_witness(cp.L, cp.P, cp.base, cp.nc);
            std::cout << "isomorphism: PASS (row constant " << w.row_const << ", column constant "
                      << w.col_const << (w.matches_stated_constants ? "" : "; " + w.note)
                      << ")\n";
        } catch (const std::exception& e) {
            all_ok = false;
            std::cout << "isomorphism: FAIL (" << e.what() << ")\n";
        }
    }
    if (geq) {
        bool eq = qclf::girth_equal_check(bx, bz);
        std::cout << "girth-equal: " << (eq ? "PASS" : "FAIL") << "\n";
        all_ok = all_ok && eq;
    }
    if (ext) {
        auto bad = qclf::check_extension_condition(cp.L, cp.P, cp.base);
        if (bad.empty()) {
            std::cout << "extension-condition: PASS\n";
        } else {
            all_ok = false;
            std::cout << "extension-condition: FAIL (" << bad.size() << " collisions)\n";
            for (const auto& v : bad)
                std::cout << "  l=" << v.l << " l'=" << v.l_prime << " k=" << v.k
                          << " k'=" << v.k_prime << "\n";
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_simulate(const std::string& in_x, const std::string& in_z, const CommonParams& cp,
                 int nb_e, const std::vector<double>& p_grid, std::int64_t trials,
                 std::uint64_t seed, bool seed_given, bool require_seed, const std::string& mode,
                 const std::string& success, int max_iters, double clip, int jobs,
                 const std::string& out_csv) {
    if (require_seed && !seed_given)
        throw qclf::param_error("--require-seed is set but no --seed was given");
    if (p_grid.empty()) throw qclf::param_error("--p-grid must list at least one value");

    qclf::FerParams fp;
    fp.base = cp.base;
    fp.n_c = cp.nc;
    fp.p_grid = p_grid;
    fp.trials = trials;
    fp.seed = seed;
    fp.qary = mode == "qary";
    if (!fp.qary && mode != "binary") throw qclf::param_error("--mode must be binary or qary");
    fp.syndrome_success = success == "syndrome";
    if (!fp.syndrome_success && success != "exact")
        throw qclf::param_error("--success must be exact or syndrome");
    fp.max_iters = max_iters;
    fp.clip = clip;
    fp.jobs = jobs;
    fp.e = fp.qary ? (nb_e > 0 ? nb_e : 2) : 1;

    nlohmann::json params{{"p_grid", p_grid},   {"trials", trials},   {"seed", seed},
                          {"mode", mode},       {"success", success}, {"max_iters", max_iters},
                          {"clip", clip},       {"nb_e", fp.e}};
    std::vector<qclf::FerRecord> records;
    if (!in_x.empty()) {
        if (in_z.empty()) throw qclf::param_error("--in-x needs --in-z");
        params["in_x"] = in_x;
        params["in_z"] = in_z;
        print_metadata("simulate", params);
        qclf::QcBlockMatrix bx = load_descriptor(in_x);
        qclf::QcBlockMatrix bz = load_descriptor(in_z);
        fp.L = bx.block_cols;
        fp.P = bx.modulus;
        records = qclf::fer_experiment(bx, bz, fp);
    } else {
        if (cp.L == 0 || cp.P == 0) throw qclf::param_error("need --in-x/--in-z or --L/--P");
        fp.L = cp.L;
        fp.P = cp.P;
        params["L"] = cp.L;
        params["P"] = cp.P;
        params["base"] = cp.base;
        params["nc"] = cp.nc;
        print_metadata("simulate", params);
        records = qclf::fer_experiment(fp);
    }

    std::string csv = qclf::fer_csv(records);
    if (!out_csv.empty())
        write_file(out_csv, csv);
    else
        std::cout << csv;
    // summary with timings (stdout only; the CSV stays byte-reproducible)
    for (const auto& r : records)
        std::cerr << "p=" << r.p << " fer=" << r.fer << " (" << r.failures << "/" << r.trials
                  << ", ci95 +/- " << r.ci95 << ", " << r.wall_time << "s)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qclf: quasi-cyclic LDPC pair construction, certification and simulation"};
    app.require_subcommand(1);
    int default_jobs = env_jobs();

    // construct
    auto* c = app.add_subcommand("construct", "build matrices and write descriptors");
    CommonParams ccp;
    bool c_pair = false;
    int c_nb_e = 0;
    std::uint64_t c_seed = 1;
    std::string c_out_json, c_out_alist, c_out_nb;
    c->add_option("--L", ccp.L, "block columns (even)")->required();
    c->add_option("--P", ccp.P, "circulant size")->required();
    c->add_option("--base", ccp.base, "exponent base (default 2)");
    c->add_option("--nc", ccp.nc, "coupling number (default 1)");
    c->add_flag("--pair", c_pair, "emit the orthogonal pair instead of one matrix");
    c->add_option("--nb-e", c_nb_e, "also emit GF(2^e) matrices with this degree");
    c->add_option("--seed", c_seed, "label seed for --nb-e");
    c->add_option("--out-json", c_out_json, "descriptor output path (.x/.z inserted for pairs)");
    c->add_option("--out-alist", c_out_alist, "expanded alist output path");
    c->add_option("--out-nb", c_out_nb, "valued alist output path for --nb-e");

    // girth
    auto* g = app.add_subcommand("girth", "certify the shortest cycle length");
    CommonParams gcp;
    std::string g_in;
    int g_cap = 12, g_jobs = default_jobs;
    bool g_strict = false, g_oracle = false;
    g->add_option("--in", g_in, "JSON block descriptor");
    g->add_option("--L", gcp.L, "block columns");
    g->add_option("--P", gcp.P, "circulant size");
    g->add_option("--base", gcp.base, "exponent base");
    g->add_option("--nc", gcp.nc, "coupling number");
    g->add_option("--cap", g_cap, "search cap (even, <= 12)");
    g->add_flag("--strict", g_strict, "also enumerate parity-excluded path lengths");
    g->add_flag("--oracle", g_oracle, "cross-check against the BFS oracle");
    g->add_option("--jobs", g_jobs, "worker threads (default QCLF_JOBS)");

    // search-min-p
    auto* s = app.add_subcommand("search-min-p", "smallest P certifying girth 12");
    std::vector<int> s_L;
    int s_base = 2, s_jobs = default_jobs;
    std::int64_t s_lo = 2, s_hi = 0;
    std::string s_csv;
    s->add_option("--L", s_L, "block columns, comma separated for a table")
        ->required()
        ->delimiter(',');
    s->add_option("--base", s_base, "exponent base");
    s->add_option("--min-p", s_lo, "scan start (default 2)");
    s->add_option("--max-p", s_hi, "scan end (default: the 2^(L+1)-type bound)");
    s->add_option("--jobs", s_jobs, "worker threads (default QCLF_JOBS)");
    s->add_option("--out-csv", s_csv, "append results to this CSV");

    // verify
    auto* v = app.add_subcommand("verify", "pair checks; exit 0 iff all pass");
    CommonParams vcp;
    std::string v_in_x, v_in_z;
    bool v_orth = false, v_iso = false, v_geq = false, v_ext = false, v_full = false;
    int v_jobs = default_jobs;
    v->add_option("--in-x", v_in_x, "X-side JSON descriptor");
    v->add_option("--in-z", v_in_z, "Z-side JSON descriptor");
    v->add_option("--L", vcp.L, "block columns");
    v->add_option("--P", vcp.P, "circulant size");
    v->add_option("--base", vcp.base, "exponent base");
    v->add_option("--nc", vcp.nc, "coupling number");
    v->add_flag("--orthogonality", v_orth, "GF(2) product check");
    v->add_flag("--isomorphism", v_iso, "row/column permutation witness");
    v->add_flag("--girth-equal", v_geq, "equal certified girth");
    v->add_flag("--extension-condition", v_ext, "field-extension condition");
    v->add_flag("--full-violations", v_full, "print every violation, not the first 100");
    v->add_option("--jobs", v_jobs, "worker threads (default QCLF_JOBS)");

    // simulate
    auto* m = app.add_subcommand("simulate", "depolarizing-channel Monte Carlo");
    CommonParams mcp;
    std::string m_in_x, m_in_z, m_mode = "binary", m_success = "exact", m_csv;
    std::vector<double> m_grid;
    std::int64_t m_trials = 1000;
    std::uint64_t m_seed = 1;
    bool m_require_seed = false;
    int m_nb_e = 0, m_iters = 50, m_jobs = default_jobs;
    double m_clip = 30.0;
    m->add_option("--in-x", m_in_x, "X-side JSON descriptor");
    m->add_option("--in-z", m_in_z, "Z-side JSON descriptor");
    m->add_option("--L", mcp.L, "block columns");
    m->add_option("--P", mcp.P, "circulant size");
    m->add_option("--base", mcp.base, "exponent base");
    m->add_option("--nc", mcp.nc, "coupling number");
    m->add_option("--nb-e", m_nb_e, "field degree for qary mode (<= 4)");
    m->add_option("--p-grid", m_grid, "error probabilities")->required()->delimiter(',');
    m->add_option("--trials", m_trials, "Monte-Carlo trials per point");
    auto* seed_opt = m->add_option("--seed", m_seed, "master seed");
    m->add_flag("--require-seed", m_require_seed, "fail unless --seed is explicit");
    m->add_option("--mode", m_mode, "binary (default) or qary");
    m->add_option("--success", m_success, "exact (default) or syndrome accounting");
    m->add_option("--max-iters", m_iters, "decoder iteration cap");
    m->add_option("--clip", m_clip, "LLR clip magnitude");
    m->add_option("--jobs", m_jobs, "worker threads (default QCLF_JOBS)");
    m->add_option("--out-csv", m_csv, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c->parsed())
            return cmd_construct(ccp, c_pair, c_nb_e, c_seed, c_out_json, c_out_alist, c_out_nb);
        if (g->parsed()) return cmd_girth(g_in, gcp, g_cap, g_strict, g_oracle, g_jobs);
        if (s->parsed()) return cmd_search_min_p(s_L, s_base, s_lo, s_hi, s_jobs, s_csv);
        if (v->parsed())
            return cmd_verify(v_in_x, v_in_z, vcp, v_orth, v_iso, v_geq, v_ext, v_full, v_jobs);
        if (m->parsed())
            return cmd_simulate(m_in_x, m_in_z, mcp, m_nb_e, m_grid, m_trials, m_seed,
                                seed_opt->count() > 0, m_require_seed, m_mode, m_success, m_iters,
                                m_clip, m_jobs, m_csv);
    } catch (const qclf::param_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qclf::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
