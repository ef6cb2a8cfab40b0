#ifndef QCLF_GIRTH_HPP
#define QCLF_GIRTH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qclf/qc_matrix.hpp"

namespace qclf {

/// Closed alternating block path: column move, row move, ..., closing on the
/// starting block. Stored as the row and column block index sequences
/// (j_0..j_{n-1}, l_0..l_{n-1}); the traversal visits (j_i, l_i), (j_i, l_{i+1}).
struct BlockPath {
    std::vector<int> rows;
    std::vector<int> cols;

    int half_length() const { return static_cast<int>(rows.size()); }

    // Full 2n-block visiting order [(j_0,l_0),(j_0,l_1),(j_1,l_1),...].
    std::vector<std::pair<int, int>> block_sequence() const;

    // Build from the explicit 2n-pair visiting order; validates the
    // alternating move pattern and consecutive-distinct constraints.
    static BlockPath from_pairs(const std::vector<std::pair<int, int>>& pairs);

    bool operator==(const BlockPath&) const = default;
};

/// Net shift of the composed mapping along the path:
/// b* = sum_i (shift(j_i, l_i) - shift(j_i, l_{i+1})) mod P.
std::int64_t alternating_shift(const QcBlockMatrix& m, const BlockPath& path);

/// Witness for a length-2n cycle: b* == 0 and the walked cycle is simple.
struct CycleCertificate {
    BlockPath path;
    int half_length = 0;
    std::int64_t b_star = 0;  // always 0 mod P for a valid certificate
};

std::string certificate_to_json(const CycleCertificate& cert);

/// First cycle certificate of half-length n (cycle length 2n), or nullopt.
/// Paths are enumerated over non-empty blocks, canonicalized up to
/// rotation/reflection, and checked for simplicity in the expansion.
/// Requires 2 <= n <= 6.
std::optional<CycleCertificate> find_cycle(const QcBlockMatrix& m, int n);

/// All canonical certificates of half-length n.
std::vector<CycleCertificate> find_all_cycles(const QcBlockMatrix& m, int n);
long count_cycle_certificates(const QcBlockMatrix& m, int n);

struct GirthResult {
    int length = 0;    // cycle length, or the cap when not exact
    bool exact = true; // false means "no cycle of length <= cap found"
    std::optional<CycleCertificate> certificate;
};

/// Shortest cycle length via the alternating-shift certificates.
/// For full grids with J >= 2, L >= 3 the length-12 upper bound makes the
/// result exact at cap 12 without enumerating 12-cycles; banded matrices get
/// an explicit 12-cycle search and otherwise report AtLeast(cap).
/// strict additionally enumerates the odd half-lengths that the row-adjacency
/// parity argument rules out.
GirthResult girth(const QcBlockMatrix& m, int cap = 12, bool strict = false);

/// Exact Tanner-graph girth by BFS shortest-cycle search from every variable
/// node. nullopt for forests. The default entry point runs the roots in
/// parallel; the serial variant is the reference implementation.
std::optional<int> girth_bfs_oracle(const SparseBinaryMatrix& m, int jobs = 0);
std::optional<int> girth_bfs_oracle_serial(const SparseBinaryMatrix& m);

/// Smallest P in [p_lo, p_hi] with girth(build_classical(L, P, base)) == 12,
/// or nullopt. Scans candidates in parallel; the result is the true minimum
/// regardless of scheduling.
std::optional<std::int64_t> min_p_search(int L, int base, std::int64_t p_lo, std::int64_t p_hi,
                                         int jobs = 0);
std::optional<std::int64_t> min_p_search_serial(int L, int base, std::int64_t p_lo,
                                                std::int64_t p_hi);

/// Girth-12 test specialized to the full 2-row construction (the kernel of
/// min_p_search). Equivalent to girth(build_classical(L,P,base)).length == 12.
bool classical_girth_is_12(int L, std::int64_t P, int base = 2);

/// Section span of a certificate in a matrix whose block columns group into
/// sections of width section_cols.
enum class SpanClass { within_section, adjacent_sections, non_adjacent };
SpanClass classify_span(const CycleCertificate& cert, int section_cols);
const char* span_name(SpanClass s);

std::map<SpanClass, long> count_certificates_by_span(const QcBlockMatrix& m, int n,
                                                     int section_cols);

}  // namespace qclf

#endif
