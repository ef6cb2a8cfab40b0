#ifndef QCLF_CONSTRUCT_HPP
#define QCLF_CONSTRUCT_HPP

#include <cstdint>
#include <utility>

#include "qclf/qc_matrix.hpp"

namespace qclf {

struct ConstructionParams {
    int L = 6;                // block columns of the full matrix, even
    std::int64_t P = 2;       // circulant size
    int base = 2;             // exponent base n
    int coupling = 1;         // n_c; 1 means uncoupled
};

void validate_params(const ConstructionParams& p);

// Column-weight-2 half construction: 2 x (L/2) grid with
// block (j,l) = base^((l-j) mod L/2) mod P.
QcBlockMatrix build_classical_half(int L, std::int64_t P, int base = 2);

// Full classical matrix [H, H']: left half exponents base^((l-j) mod L/2),
// right half base^(((l-L/2-j) mod L/2) + L/2), reduced mod P.
QcBlockMatrix build_classical(int L, std::int64_t P, int base = 2);

// CSS pair. X side equals build_classical; Z side uses the negated shifts
// with the half-swapped index pattern, so that X * Z^T = 0 over GF(2).
std::pair<QcBlockMatrix, QcBlockMatrix> build_orthogonal_pair(int L, std::int64_t P, int base = 2);

// Spatially coupled pair: (n_c+1) block rows by n_c*L block columns with
// section i_c occupying block rows {i_c, i_c+1}. Even sections use exponent
// offsets {0, L/2}, odd sections {L, 3L/2}; the Z side stacks sections
// bottom-up. Blocks outside the band are empty.
std::pair<QcBlockMatrix, QcBlockMatrix> build_sc_pair(int L, std::int64_t P, int base, int n_c);

// Same banded layout but every section uses the even-section exponents.
// Kept for demonstrating the adjacent-section 8-cycles that the per-section
// variation removes.
std::pair<QcBlockMatrix, QcBlockMatrix> build_sc_pair_control(int L, std::int64_t P, int base, int n_c);

// Circulant-size thresholds. For base 2 these follow the stated theorem
// values 2^(L+1) and 2^L(2^L+1); for base n > 2 the generalized values
// 2n^(L-1) and 2n^(L-1)(n^L+1). Throws on 64-bit overflow.
std::int64_t bound_p0(int L, int base = 2);
std::int64_t bound_p1(int L, int base = 2);

// The generalized-base formulas evaluated for every base, including 2
// (where they disagree with the base-2 theorem values above; the CLI
// reports both so callers can probe which P actually certify girth 12).
std::int64_t bound_p0_base_n(int L, int base);
std::int64_t bound_p1_base_n(int L, int base);

}  // namespace qclf

#endif
