#ifndef QCLF_GF_HPP
#define QCLF_GF_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "qclf/qc_matrix.hpp"

namespace qclf {

struct FieldSpec {
    int e = 1;                    // extension degree, 1..16
    std::uint32_t primitive_poly = 0x3;  // reduction polynomial, bit e set

    // Lexicographically smallest primitive polynomial of each degree.
    static FieldSpec standard(int e);
};

/// GF(2^e) arithmetic over log/antilog tables. The reduction polynomial is
/// checked for degree and irreducibility at construction; tables are built
/// on a multiplicative generator so non-primitive irreducible polynomials
/// work too.
class GfField {
  public:
    explicit GfField(const FieldSpec& spec);

    int degree() const { return e_; }
    std::uint32_t order() const { return q_; }
    std::uint32_t poly() const { return poly_; }
    const FieldSpec& spec() const { return spec_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;

  private:
    FieldSpec spec_;
    int e_;
    std::uint32_t poly_;
    std::uint32_t q_;
    std::vector<std::uint16_t> log_;
    std::vector<std::uint16_t> exp_;
};

std::uint32_t gf_add(std::uint32_t a, std::uint32_t b, const GfField& f);
std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, const GfField& f);
std::uint32_t gf_inv(std::uint32_t a, const GfField& f);

/// Sparse matrix over GF(2^e); entries are (row, col, nonzero value),
/// sorted by coordinate.
struct GfMatrix {
    std::int64_t nrows = 0;
    std::int64_t ncols = 0;
    int e = 1;
    std::vector<std::tuple<std::int64_t, std::int64_t, std::uint16_t>> entries;

    SparseBinaryMatrix support() const;
};

struct ExtensionViolation {
    int l = 0, l_prime = 0, k = 0, k_prime = 0;
};

/// Pairwise-distinctness condition on the composed shifts
/// base^((l-k) mod L/2) + base^(((k'-l) mod L/2) + L/2) mod P over
/// l != l', k, k' in {0,1}. Empty result means the pair extends.
std::vector<ExtensionViolation> check_extension_condition(int L, std::int64_t P, int base = 2);

/// Replace the 1-entries of an orthogonal pair by nonzero GF(2^e) labels so
/// the product over GF(2^e) stays zero. Labels are produced from seeded row
/// and column factors, every overlap pairing is re-verified, and the result
/// is deterministic in the seed. Refuses pairs whose overlap multiplicities
/// are not all in {0, 2}.
std::pair<GfMatrix, GfMatrix> extend_to_nb(const QcBlockMatrix& hx, const QcBlockMatrix& hz,
                                           const FieldSpec& spec, std::uint64_t seed);

/// Sectionwise extension of the spatially coupled pair: each section is
/// extended independently and placed into the banded layout.
std::pair<GfMatrix, GfMatrix> build_sc_pair_nb(int L, std::int64_t P, int base, int n_c,
                                               const FieldSpec& spec, std::uint64_t seed);

struct GfOrthogonalityReport {
    bool ok = true;
    std::vector<std::tuple<std::int64_t, std::int64_t, std::uint16_t>> violations;
};

GfOrthogonalityReport check_orthogonal_gfq(const GfMatrix& a, const GfMatrix& b,
                                           const GfField& f);

// Valued alist variant: per-row "col:val" pairs, hex values, 1-based columns.
std::string write_gf_alist(const GfMatrix& m, std::uint32_t poly);
GfMatrix parse_gf_alist(const std::string& text, std::uint32_t* poly_out = nullptr);

}  // namespace qclf

#endif
