#include "qclf/girth.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qclf/construct.hpp"

namespace qclf {

std::vector<std::pair<int, int>> BlockPath::block_sequence() const {
    std::vector<std::pair<int, int>> seq;
    int n = half_length();
    seq.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
        seq.emplace_back(rows[i], cols[i]);
        seq.emplace_back(rows[i], cols[(i + 1) % n]);
    }
    return seq;
}

BlockPath BlockPath::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.size() % 2 != 0) throw param_error("block path needs an even number of blocks");
    BlockPath p;
    int n = static_cast<int>(pairs.size()) / 2;
    if (n == 0) return p;
    for (int i = 0; i < n; ++i) {
        const auto& f = pairs[2 * i];
        const auto& g = pairs[2 * i + 1];
        const auto& next = pairs[(2 * i + 2) % (2 * n)];
        if (f.first != g.first)
            throw param_error("block path: column move must stay in the same block row");
        if (f.second == g.second)
            throw param_error("block path: consecutive column indices must differ");
        if (g.second != next.second)
            throw param_error("block path: row move must stay in the same block column");
        if (g.first == next.first)
            throw param_error("block path: consecutive row indices must differ");
        p.rows.push_back(f.first);
        p.cols.push_back(f.second);
    }
    return p;
}

std::int64_t alternating_shift(const QcBlockMatrix& m, const BlockPath& path) {
    int n = path.half_length();
    std::int64_t b = 0;
    for (int i = 0; i < n; ++i) {
        int j = path.rows[i];
        b += m.shift_at(j, path.cols[i]) - m.shift_at(j, path.cols[(i + 1) % n]);
    }
    return ((b % m.modulus) + m.modulus) % m.modulus;
}

std::string certificate_to_json(const CycleCertificate& cert) {
    std::ostringstream os;
    os << "{\"length\":" << 2 * cert.half_length << ",\"path\":[";
    auto seq = cert.path.block_sequence();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        os << '[' << seq[i].first << ',' << seq[i].second << ']';
        if (i + 1 < seq.size()) os << ',';
    }
    os << "],\"b_star\":" << cert.b_star << "}";
    return os.str();
}

namespace {

// Walk the path in the expansion starting at intra-index 0 and require all
// variable and check nodes to be distinct, so the certificate corresponds to
// a simple cycle rather than a repeated shorter one.
bool walk_is_simple(const QcBlockMatrix& m, const std::vector<int>& rows,
                    const std::vector<int>& cols) {
    int n = static_cast<int>(rows.size());
    const std::int64_t p = m.modulus;
    std::vector<std::pair<int, std::int64_t>> vnodes, cnodes;
    vnodes.reserve(n);
    cnodes.reserve(n);
    std::int64_t x = 0;
    for (int i = 0; i < n; ++i) {
        int j = rows[i];
        vnodes.emplace_back(cols[i], x);
        std::int64_t r = (x + m.shift_at(j, cols[i])) % p;
        cnodes.emplace_back(j, r);
        x = ((r - m.shift_at(j, cols[(i + 1) % n])) % p + p) % p;
    }
    if (x != 0) return false;
    std::sort(vnodes.begin(), vnodes.end());
    if (std::adjacent_find(vnodes.begin(), vnodes.end()) != vnodes.end()) return false;
    std::sort(cnodes.begin(), cnodes.end());
    return std::adjacent_find(cnodes.begin(), cnodes.end()) == cnodes.end();
}

// Lexicographically smallest of the 2n equivalent traversals (n rotations,
// both directions) of a closed path.
std::pair<std::vector<int>, std::vector<int>> canonical_form(const std::vector<int>& rows,
                                                             const std::vector<int>& cols) {
    int n = static_cast<int>(rows.size());
    std::pair<std::vector<int>, std::vector<int>> best{rows, cols};
    auto consider = [&](const std::vector<int>& r, const std::vector<int>& c) {
        for (int k = 0; k < n; ++k) {
            std::vector<int> rr(n), cc(n);
            for (int i = 0; i < n; ++i) {
                rr[i] = r[(i + k) % n];
                cc[i] = c[(i + k) % n];
            }
            if (std::make_pair(rr, cc) < best) best = {std::move(rr), std::move(cc)};
        }
    };
    consider(rows, cols);
    // Reversed traversal, re-anchored so a column move still comes first:
    // rows reverse, columns keep l_0 and reverse the rest.
    std::vector<int> rrev(n), crev(n);
    for (int i = 0; i < n; ++i) rrev[i] = rows[n - 1 - i];
    crev[0] = cols[0];
    for (int i = 1; i < n; ++i) crev[i] = cols[n - i];
    consider(rrev, crev);
    return best;
}

bool is_canonical(const std::vector<int>& rows, const std::vector<int>& cols) {
    return canonical_form(rows, cols) == std::make_pair(rows, cols);
}

// DFS over closed alternating block paths of half-length n. The visitor
// receives (rows, cols, b_star) for each closed path and returns true to
// stop the enumeration.
template <typename Visitor>
void enumerate_paths(const QcBlockMatrix& m, int n, Visitor&& visit) {
    const int J = m.block_rows, L = m.block_cols;
    const std::int64_t p = m.modulus;
    std::vector<int> rows(n), cols(n);
    bool stop = false;

    auto dfs = [&](auto&& self, int i, std::int64_t bstar) -> void {
        if (stop) return;
        // choose l_{i+1}; the closing step forces l_n = l_0
        for (int l1 = 0; l1 < L && !stop; ++l1) {
            if (l1 == cols[i]) continue;
            if (i == n - 1 && l1 != cols[0]) continue;
            if (!m.block(rows[i], l1)) continue;
            std::int64_t b2 = (bstar + m.shift_at(rows[i], cols[i]) - m.shift_at(rows[i], l1)) % p;
            if (i == n - 1) {
                // closing row move back to (j_0, l_0) needs distinct rows
                if (rows[i] != rows[0]) {
                    std::int64_t bmod = ((b2 % p) + p) % p;
                    if (visit(rows, cols, bmod)) stop = true;
                }
                continue;
            }
            for (int j1 = 0; j1 < J && !stop; ++j1) {
                if (j1 == rows[i]) continue;
                if (!m.block(j1, l1)) continue;
                rows[i + 1] = j1;
                cols[i + 1] = l1;
                self(self, i + 1, b2);
            }
        }
    };

    for (int j0 = 0; j0 < J && !stop; ++j0) {
        for (int l0 = 0; l0 < L && !stop; ++l0) {
            if (!m.block(j0, l0)) continue;
            rows[0] = j0;
            cols[0] = l0;
            dfs(dfs, 0, 0);
        }
    }
}

void check_n(int n) {
    if (n < 2 || n > 6) throw param_error("cycle half-length must be in [2, 6]");
}

// Rows j, j' are adjacent when some block column is populated in both. When
// this adjacency graph is bipartite, every closed path has even half-length,
// so the odd half-lengths need no enumeration.
bool row_adjacency_bipartite(const QcBlockMatrix& m) {
    const int J = m.block_rows;
    std::vector<std::vector<int>> adj(J);
    for (int a = 0; a < J; ++a) {
        for (int b = a + 1; b < J; ++b) {
            bool share = false;
            for (int l = 0; l < m.block_cols && !share; ++l)
                share = m.block(a, l).has_value() && m.block(b, l).has_value();
            if (share) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        }
    }
    std::vector<int> color(J, -1);
    for (int s = 0; s < J; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (color[v] == -1) {
                    color[v] = color[u] ^ 1;
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

std::optional<CycleCertificate> find_cycle(const QcBlockMatrix& m, int n) {
    check_n(n);
    std::optional<CycleCertificate> found;
    enumerate_paths(m, n, [&](const std::vector<int>& rows, const std::vector<int>& cols,
                              std::int64_t bstar) {
        if (bstar != 0) return false;
        if (!walk_is_simple(m, rows, cols)) return false;
        if (!is_canonical(rows, cols)) return false;
        found = CycleCertificate{BlockPath{rows, cols}, n, 0};
        return true;
    });
    return found;
}

std::vector<CycleCertificate> find_all_cycles(const QcBlockMatrix& m, int n) {
    check_n(n);
    std::vector<CycleCertificate> out;
    enumerate_paths(m, n, [&](const std::vector<int>& rows, const std::vector<int>& cols,
                              std::int64_t bstar) {
        if (bstar == 0 && walk_is_simple(m, rows, cols) && is_canonical(rows, cols))
            out.push_back(CycleCertificate{BlockPath{rows, cols}, n, 0});
        return false;
    });
    return out;
}

long count_cycle_certificates(const QcBlockMatrix& m, int n) {
    return static_cast<long>(find_all_cycles(m, n).size());
}

GirthResult girth(const QcBlockMatrix& m, int cap, bool strict) {
    if (cap < 4 || cap % 2 != 0 || cap > 12)
        throw param_error("girth cap must be an even value in [4, 12]");
    const bool full_qc = m.full() && m.block_rows >= 2 && m.block_cols >= 3;
    const bool even_only = !strict && row_adjacency_bipartite(m);

    int n_hi = std::min(cap / 2, 5);
    for (int n = 2; n <= n_hi; ++n) {
        if (even_only && (n % 2 != 0)) continue;
        if (auto cert = find_cycle(m, n)) return GirthResult{2 * n, true, std::move(cert)};
    }
    if (cap < 12) return GirthResult{cap, false, std::nullopt};
    if (full_qc) {
        // No cycle of length <= 10; the length-12 upper bound for fully
        // populated grids with J >= 2, L >= 3 settles the value.
        return GirthResult{12, true, std::nullopt};
    }
    if (auto cert = find_cycle(m, 6)) return GirthResult{12, true, std::move(cert)};
    return GirthResult{cap, false, std::nullopt};
}

namespace {

constexpr int kNoCycle = std::numeric_limits<int>::max();

// Shortest cycle containing candidates seen from one BFS root. best_bound
// prunes levels that cannot improve on the best cycle found so far.
int bfs_from_root(const std::vector<int>& adj_off, const std::vector<int>& adj,
                  int root, int best_bound, std::vector<int>& dist, std::vector<int>& parent,
                  std::vector<int>& touched) {
    int best = kNoCycle;
    touched.clear();
    std::queue<int> q;
    dist[root] = 0;
    parent[root] = -1;
    touched.push_back(root);
    q.push(root);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (2 * dist[u] + 1 >= std::min(best, best_bound)) break;
        for (int k = adj_off[u]; k < adj_off[u + 1]; ++k) {
            int w = adj[k];
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                touched.push_back(w);
                q.push(w);
            } else if (w != parent[u]) {
                best = std::min(best, dist[u] + dist[w] + 1);
            }
        }
    }
    for (int t : touched) dist[t] = -1;
    return best;
}

struct TannerCsr {
    std::vector<int> off;
    std::vector<int> adj;
    int nchecks = 0;
    int nvars = 0;
};

TannerCsr tanner_graph(const SparseBinaryMatrix& m) {
    if (m.nrows + m.ncols > std::numeric_limits<int>::max() / 2)
        throw param_error("matrix too large for the BFS oracle");
    TannerCsr g;
    g.nchecks = static_cast<int>(m.nrows);
    g.nvars = static_cast<int>(m.ncols);
    int total = g.nchecks + g.nvars;
    std::vector<int> deg(total, 0);
    for (const auto& [r, c] : m.entries) {
        ++deg[static_cast<int>(r)];
        ++deg[g.nchecks + static_cast<int>(c)];
    }
    g.off.assign(total + 1, 0);
    for (int i = 0; i < total; ++i) g.off[i + 1] = g.off[i] + deg[i];
    g.adj.resize(g.off[total]);
    std::vector<int> fill(g.off.begin(), g.off.end() - 1);
    for (const auto& [r, c] : m.entries) {
        int u = static_cast<int>(r), v = g.nchecks + static_cast<int>(c);
        g.adj[fill[u]++] = v;
        g.adj[fill[v]++] = u;
    }
    return g;
}

}  // namespace

std::optional<int> girth_bfs_oracle_serial(const SparseBinaryMatrix& m) {
    if (m.entries.empty()) return std::nullopt;
    TannerCsr g = tanner_graph(m);
    int total = g.nchecks + g.nvars;
    std::vector<int> dist(total, -1), parent(total, -1), touched;
    int best = kNoCycle;
    // Every cycle alternates between the two sides, so variable roots suffice.
    for (int v = g.nchecks; v < total; ++v) {
        best = std::min(best, bfs_from_root(g.off, g.adj, v, best, dist, parent, touched));
        if (best == 4) break;  // nothing shorter exists in a simple bipartite graph
    }
    if (best == kNoCycle) return std::nullopt;
    return best;
}

std::optional<int> girth_bfs_oracle(const SparseBinaryMatrix& m, int jobs) {
    if (m.entries.empty()) return std::nullopt;
    TannerCsr g = tanner_graph(m);
    int total = g.nchecks + g.nvars;
    std::atomic<int> best{kNoCycle};
#ifdef _OPENMP
    int nthreads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
    {
        std::vector<int> dist(total, -1), parent(total, -1), touched;
#pragma omp for schedule(dynamic, 16)
        for (int v = g.nchecks; v < total; ++v) {
            int bound = best.load(std::memory_order_relaxed);
            if (bound == 4) continue;
            int got = bfs_from_root(g.off, g.adj, v, bound, dist, parent, touched);
            int cur = best.load(std::memory_order_relaxed);
            while (got < cur && !best.compare_exchange_weak(cur, got)) {
            }
        }
    }
#else
    (void)jobs;
    return girth_bfs_oracle_serial(m);
#endif
    int b = best.load();
    if (b == kNoCycle) return std::nullopt;
    return b;
}

bool classical_girth_is_12(int L, std::int64_t P, int base) {
    QcBlockMatrix h = build_classical(L, P, base);
    // For the 2-row grid the alternating sum of a closed path telescopes to
    // +/- differences of D[l] = shift(0,l) - shift(1,l): a 4-cycle needs
    // D[l0] == D[l1], an 8-cycle D[l0] - D[l1] + D[l2] - D[l3] == 0 with
    // cyclically consecutive-distinct columns. Odd half-lengths cannot close
    // on two rows, and no cycle of length <= 10 forces girth exactly 12.
    std::vector<std::int64_t> d(L);
    for (int l = 0; l < L; ++l)
        d[l] = ((h.shift_at(0, l) - h.shift_at(1, l)) % P + P) % P;
    for (int a = 0; a < L; ++a)
        for (int b = a + 1; b < L; ++b)
            if (d[a] == d[b]) return false;
    for (int l0 = 0; l0 < L; ++l0)
        for (int l1 = 0; l1 < L; ++l1) {
            if (l1 == l0) continue;
            std::int64_t s01 = d[l0] - d[l1];
            for (int l2 = 0; l2 < L; ++l2) {
                if (l2 == l1) continue;
                for (int l3 = 0; l3 < L; ++l3) {
                    if (l3 == l2 || l3 == l0) continue;
                    if ((s01 + d[l2] - d[l3]) % P == 0) return false;
                }
            }
        }
    return true;
}

std::optional<std::int64_t> min_p_search_serial(int L, int base, std::int64_t p_lo,
                                                std::int64_t p_hi) {
    if (p_lo < 2) throw param_error("min-P search needs p_lo >= 2");
    for (std::int64_t P = p_lo; P <= p_hi; ++P)
        if (classical_girth_is_12(L, P, base)) return P;
    return std::nullopt;
}

std::optional<std::int64_t> min_p_search(int L, int base, std::int64_t p_lo, std::int64_t p_hi,
                                         int jobs) {
    if (p_lo < 2) throw param_error("min-P search needs p_lo >= 2");
#ifdef _OPENMP
    if (p_hi < p_lo) return std::nullopt;
    int nthreads = jobs > 0 ? jobs : omp_get_max_threads();
    std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
    std::int64_t span = p_hi - p_lo + 1;
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
    for (std::int64_t i = 0; i < span; ++i) {
        std::int64_t P = p_lo + i;
        if (P >= best.load(std::memory_order_relaxed)) continue;
        if (classical_girth_is_12(L, P, base)) {
            std::int64_t cur = best.load(std::memory_order_relaxed);
            while (P < cur && !best.compare_exchange_weak(cur, P)) {
            }
        }
    }
    std::int64_t b = best.load();
    if (b == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
    return b;
#else
    (void)jobs;
    return min_p_search_serial(L, base, p_lo, p_hi);
#endif
}

SpanClass classify_span(const CycleCertificate& cert, int section_cols) {
    if (section_cols <= 0) throw param_error("section width must be positive");
    std::vector<int> secs;
    for (int l : cert.path.cols) secs.push_back(l / section_cols);
    std::sort(secs.begin(), secs.end());
    secs.erase(std::unique(secs.begin(), secs.end()), secs.end());
    if (secs.size() == 1) return SpanClass::within_section;
    if (secs.size() == 2 && secs[1] - secs[0] == 1) return SpanClass::adjacent_sections;
    return SpanClass::non_adjacent;
}

const char* span_name(SpanClass s) {
    switch (s) {
        case SpanClass::within_section: return "within-section";
        case SpanClass::adjacent_sections: return "adjacent-sections";
        default: return "non-adjacent";
    }
}

std::map<SpanClass, long> count_certificates_by_span(const QcBlockMatrix& m, int n,
                                                     int section_cols) {
    std::map<SpanClass, long> counts{{SpanClass::within_section, 0},
                                     {SpanClass::adjacent_sections, 0},
                                     {SpanClass::non_adjacent, 0}};
    for (const auto& cert : find_all_cycles(m, n)) ++counts[classify_span(cert, section_cols)];
    return counts;
}

}  // namespace qclf
