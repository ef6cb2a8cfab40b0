// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qclf/construct.hpp"
#include "qclf/gf.hpp"
#include "qclf/girth.hpp"
#include "qclf/quantum.hpp"
#include "qclf/sim.hpp"

using namespace qclf;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%2d] %-24s %s%s%s\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

bool table1_minima(std::string& detail) {
    const std::vector<std::pair<int, std::int64_t>> expected{
        {6, 49}, {8, 138}, {10, 281}, {12, 355}, {14, 609}, {16, 821}};
    std::ostringstream os;
    bool ok = true;
    for (auto [L, want] : expected) {
        auto got = min_p_search(L, 2, 2, bound_p0(L));
        bool hit = got && *got == want;
        if (!hit) ok = false;
        os << "L=" << L << ":" << (got ? std::to_string(*got) : std::string("none"))
           << (hit ? "" : "(!)") << " ";
    }
    detail = os.str();
    return ok;
}

bool figure_grids(std::string& detail) {
    auto [hx, hz] = build_orthogonal_pair(6, 49);
    const std::vector<std::vector<std::int64_t>> want_x{{1, 2, 4, 8, 16, 32},
                                                        {4, 1, 2, 32, 8, 16}};
    const std::vector<std::vector<std::int64_t>> want_z{{41, 17, 33, 48, 45, 47},
                                                        {33, 41, 17, 47, 48, 45}};
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 6; ++l)
            if (hx.shift_at(j, l) != want_x[j][l] || hz.shift_at(j, l) != want_z[j][l]) {
                detail = "exponent grids deviate from the reference example";
                return false;
            }
    detail = "both exponent grids match";
    return true;
}

bool girth12_at_p0(std::string& detail) {
    std::ostringstream os;
    for (int L : {6, 8, 10}) {
        std::int64_t P = std::int64_t(1) << (L + 1);
        auto g = girth(build_classical(L, P));
        auto bfs = girth_bfs_oracle(expand(build_classical(L, P)));
        os << "L=" << L << ":" << g.length << "/" << (bfs ? *bfs : -1) << " ";
        if (!g.exact || g.length != 12 || !bfs || *bfs != 12) {
            detail = os.str();
            return false;
        }
    }
    detail = os.str() + "(certifier/oracle)";
    return true;
}

bool l4_eight_cycle(std::string& detail) {
    const std::vector<std::pair<int, int>> prop_path{{0, 0}, {0, 2}, {1, 2}, {1, 1},
                                                     {0, 1}, {0, 3}, {1, 3}, {1, 0}};
    for (std::int64_t P : {std::int64_t(10), std::int64_t(49), std::int64_t(1000)}) {
        auto h = build_classical(4, P);
        if (!find_cycle(h, 4)) {
            detail = "no 8-cycle certificate at P=" + std::to_string(P);
            return false;
        }
        if (alternating_shift(h, BlockPath::from_pairs(prop_path)) != 0) {
            detail = "reference path shift nonzero at P=" + std::to_string(P);
            return false;
        }
    }
    detail = "certificates found, reference path closes at P=10,49,1000";
    return true;
}

bool half_lemmas(std::string& detail) {
    for (int L : {6, 8, 10}) {
        std::int64_t p4 = std::int64_t(1) << (L / 2);
        std::int64_t p8 = std::int64_t(1) << (L / 2 + 1);
        if (find_cycle(build_classical_half(L, p4), 2)) {
            detail = "4-cycle at L=" + std::to_string(L) + ", P=" + std::to_string(p4);
            return false;
        }
        if (find_cycle(build_classical_half(L, p8), 4)) {
            detail = "8-cycle at L=" + std::to_string(L) + ", P=" + std::to_string(p8);
            return false;
        }
    }
    detail = "no 4-cycles at 2^(L/2), no 8-cycles at 2^(L/2+1)";
    return true;
}

std::vector<std::pair<int, std::int64_t>> quantum_param_set() {
    std::vector<std::pair<int, std::int64_t>> set;
    const std::vector<std::pair<int, std::int64_t>> pmin{{6, 49}, {8, 138}, {10, 281}};
    for (auto [L, pm] : pmin) {
        set.emplace_back(L, pm);
        set.emplace_back(L, 64);
        set.emplace_back(L, std::int64_t(1) << (L + 1));
    }
    return set;
}

bool orthogonality_suite(std::string& detail) {
    int count = 0;
    for (auto [L, P] : quantum_param_set()) {
        auto [hx, hz] = build_orthogonal_pair(L, P);
        if (!check_orthogonal(expand(hx), expand(hz)).ok) {
            detail = "nonzero product at L=" + std::to_string(L) + ", P=" + std::to_string(P);
            return false;
        }
        ++count;
    }
    for (int nc : {2, 3}) {
        auto [hx, hz] = build_sc_pair(6, 4160, 2, nc);
        if (!check_orthogonal(expand(hx), expand(hz)).ok) {
            detail = "nonzero product for coupled pair n_c=" + std::to_string(nc);
            return false;
        }
        ++count;
    }
    detail = std::to_string(count) + " pairs all orthogonal";
    return true;
}

bool isomorphism_suite(std::string& detail) {
    int count = 0;
    auto involution = [](const std::vector<std::int64_t>& perm) {
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (perm[perm[i]] != static_cast<std::int64_t>(i)) return false;
        return true;
    };
    try {
        for (auto [L, P] : quantum_param_set()) {
            auto w = isomorphism_witness(L, P);
            if (!involution(w.row_perm) || !involution(w.col_perm)) {
                detail = "witness not an involution at L=" + std::to_string(L) +
                         ", P=" + std::to_string(P);
                return false;
            }
            ++count;
        }
        for (int nc : {2, 3}) {
            auto w = isomorphism_witness(6, 4160, 2, nc);
            if (!involution(w.row_perm) || !involution(w.col_perm)) {
                detail = "coupled witness not an involution, n_c=" + std::to_string(nc);
                return false;
            }
            ++count;
        }
    } catch (const std::exception& e) {
        detail = e.what();
        return false;
    }
    detail = std::to_string(count) + " verified two-way witnesses, all involutions";
    return true;
}

bool extension_suite(std::string& detail) {
    const std::vector<std::pair<int, std::int64_t>> set{{6, 49}, {8, 138}, {6, 128}};
    for (auto [L, P] : set) {
        if (!check_extension_condition(L, P).empty()) {
            detail = "condition fails at L=" + std::to_string(L) + ", P=" + std::to_string(P);
            return false;
        }
        auto [hx, hz] = build_orthogonal_pair(L, P);
        for (int e : {2, 4, 8}) {
            GfField f(FieldSpec::standard(e));
            for (std::uint64_t seed : {1u, 2u, 3u}) {
                try {
                    auto [gx, gz] = extend_to_nb(hx, hz, f.spec(), seed);
                    if (gx.support() != expand(hx) || gz.support() != expand(hz)) {
                        detail = "support changed during extension";
                        return false;
                    }
                    if (!check_orthogonal_gfq(gx, gz, f).ok) {
                        detail = "GF(2^" + std::to_string(e) + ") product nonzero";
                        return false;
                    }
                } catch (const std::exception& ex) {
                    detail = ex.what();
                    return false;
                }
            }
        }
    }
    detail = "3 pairs x e in {2,4,8} x 3 seeds extended and verified";
    return true;
}

bool sc_girth(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (int nc : {2, 3}) {
        auto [hx, hz] = build_sc_pair(6, 4160, 2, nc);
        os << "n_c=" << nc << ": ";
        for (int n = 2; n <= 5; ++n) {
            auto spans = count_certificates_by_span(hx, n, 6);
            for (auto [span, cnt] : spans) {
                if (cnt != 0) {
                    ok = false;
                    os << 2 * n << "-cycles(" << span_name(span) << ")=" << cnt << " ";
                }
            }
        }
        auto twelve = find_cycle(hx, 6);
        if (!twelve) {
            ok = false;
            os << "no 12-cycle ";
        }
        (void)hz;
    }
    // control build with identical exponents in every section
    auto [cx, cz] = build_sc_pair_control(6, 4160, 2, 2);
    auto control_spans = count_certificates_by_span(cx, 4, 6);
    if (control_spans[SpanClass::adjacent_sections] > 0) {
        os << "| control: adjacent-section 8-cycles present as expected ("
           << control_spans[SpanClass::adjacent_sections] << ")";
    } else {
        os << "| control: no adjacent 8-cycle appeared (observation only)";
    }
    (void)cz;
    if (!ok) {
        auto cert = find_cycle(build_sc_pair(6, 4160, 2, 2).first, 4);
        os << " | counterexample " << (cert ? certificate_to_json(*cert) : "none")
           << " | odd sections scale every shift by 2^L=64 and P=4160=64*65, so the cycle "
              "test collapses to sums mod 65; girth 12 does hold at odd P (e.g. 4161) and at "
              "P >= 2^(2L+1)";
    }
    detail = os.str();
    return ok;
}

bool oracle_equivalence(std::string& detail) {
    long checked = 0;
    for (int L : {4, 6, 8}) {
        for (std::int64_t P = 5; P <= 80; ++P) {
            auto m = build_classical(L, P);
            auto alg = girth(m);
            auto bfs = girth_bfs_oracle(expand(m));
            if (!alg.exact || !bfs || alg.length != *bfs) {
                detail = "mismatch at L=" + std::to_string(L) + ", P=" + std::to_string(P) +
                         ": certifier " + std::to_string(alg.length) + ", oracle " +
                         (bfs ? std::to_string(*bfs) : std::string("none"));
                return false;
            }
            ++checked;
        }
    }
    detail = std::to_string(checked) + " matrices, certifier == oracle";
    return true;
}

bool decoder_properties(std::string& detail) {
    std::ostringstream os;

    // fer(0) == 0
    FerParams zero;
    zero.L = 8;
    zero.P = 138;
    zero.p_grid = {0.0};
    zero.trials = 10000;
    zero.seed = 1;
    auto z = fer_experiment(zero);
    if (z[0].failures != 0) {
        detail = "noiseless channel produced failures";
        return false;
    }
    os << "fer(0)=0; ";

    // single-symbol injections
    auto [bx, bz] = build_orthogonal_pair(8, 138);
    auto hx = expand(bx), hz = expand(bz);
    BinaryBpDecoder dec_x(hx), dec_z(hz);
    DetRng rng(42);
    const int injections = 10000;
    int recovered = 0;
    for (int t = 0; t < injections; ++t) {
        std::int64_t qubit = static_cast<std::int64_t>(rng.next() % hx.ncols);
        int kind = static_cast<int>(rng.next() % 3);  // X, Y, Z
        PauliError err;
        err.x.assign(hx.ncols, 0);
        err.z.assign(hx.ncols, 0);
        if (kind != 2) err.x[qubit] = 1;
        if (kind != 0) err.z[qubit] = 1;
        auto syn = syndrome(hx, hz, err);
        auto dz = dec_x.decode(syn.s_x, 0.05);
        auto dx = dec_z.decode(syn.s_z, 0.05);
        bool exact = dz.converged && dx.converged;
        for (std::int64_t i = 0; i < hx.ncols && exact; ++i)
            exact = dx.estimate[i] == err.x[i] && dz.estimate[i] == err.z[i];
        recovered += exact ? 1 : 0;
    }
    double rate = static_cast<double>(recovered) / injections;
    os << "single-symbol " << recovered << "/" << injections << "; ";
    if (rate < 0.999) {
        detail = os.str() + "single-symbol recovery below 99.9%";
        return false;
    }

    // monotone FER over the grid, up to confidence-interval overlap
    FerParams grid;
    grid.L = 8;
    grid.P = 138;
    grid.p_grid = {0.001, 0.003, 0.01, 0.03};
    grid.trials = 10000;
    grid.seed = 2;
    auto recs = fer_experiment(grid);
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        double lo_i = recs[i].fer - recs[i].ci95;
        double hi_j = recs[i + 1].fer + recs[i + 1].ci95;
        if (lo_i > hi_j) {
            detail = os.str() + "fer decreased beyond CI overlap between p=" +
                     std::to_string(recs[i].p) + " and p=" + std::to_string(recs[i + 1].p);
            return false;
        }
        os << "fer(" << recs[i].p << ")=" << recs[i].fer << " ";
    }
    os << "fer(" << recs.back().p << ")=" << recs.back().fer << "; ";
    if (recs.front().fer + recs.front().ci95 >= recs.back().fer - recs.back().ci95) {
        detail = os.str() + "endpoint intervals are not disjoint";
        return false;
    }

    // byte-identical reruns
    FerParams small = grid;
    small.p_grid = {0.001, 0.01};
    small.trials = 500;
    if (fer_csv(fer_experiment(small)) != fer_csv(fer_experiment(small))) {
        detail = os.str() + "same-seed CSV bytes differ";
        return false;
    }
    os << "seeded CSV reproducible";
    detail = os.str();
    return true;
}

}  // namespace

int main() {
    std::string d;
    report(1, "table-1-minima", table1_minima(d), d);
    report(2, "figure-grids", figure_grids(d), d);
    report(3, "girth-12-at-p0", girth12_at_p0(d), d);
    report(4, "l4-eight-cycle", l4_eight_cycle(d), d);
    report(5, "half-lemmas", half_lemmas(d), d);
    report(6, "orthogonality-suite", orthogonality_suite(d), d);
    report(7, "isomorphism-suite", isomorphism_suite(d), d);
    report(8, "field-extension", extension_suite(d), d);
    report(9, "sc-girth", sc_girth(d), d);
    report(10, "oracle-equivalence", oracle_equivalence(d), d);
    report(11, "decoder-properties", decoder_properties(d), d);

    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
