#ifndef QCLF_QC_MATRIX_HPP
#define QCLF_QC_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qclf {

// Parameter/usage errors. The CLI maps these to exit code 2.
struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed input files. Message carries the offending line number.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Affine shift x -> x + shift (mod modulus), the mapping behind a
/// circulant permutation matrix.
struct PermMapping {
    std::int64_t shift = 0;
    std::int64_t modulus = 1;

    PermMapping() = default;
    PermMapping(std::int64_t s, std::int64_t p);

    static PermMapping identity(std::int64_t p) { return PermMapping(0, p); }

    std::int64_t apply(std::int64_t x) const;
    bool is_identity() const { return shift == 0; }

    bool operator==(const PermMapping&) const = default;
};

PermMapping compose(const PermMapping& f, const PermMapping& g);
PermMapping invert(const PermMapping& f);

/// J x L grid of optional shift exponents over a common circulant size P.
/// Empty blocks are all-zero P x P blocks (used by the coupled layouts).
struct QcBlockMatrix {
    int block_rows = 0;
    int block_cols = 0;
    std::int64_t modulus = 1;
    std::vector<std::optional<std::int64_t>> blocks;  // row-major, size J*L

    QcBlockMatrix() = default;
    QcBlockMatrix(int j, int l, std::int64_t p);

    std::optional<std::int64_t>& block(int j, int l) { return blocks[idx(j, l)]; }
    const std::optional<std::int64_t>& block(int j, int l) const { return blocks[idx(j, l)]; }

    void set_shift(int j, int l, std::int64_t b);
    // Shift of a block that must be present; throws otherwise.
    std::int64_t shift_at(int j, int l) const;
    PermMapping mapping_at(int j, int l) const { return PermMapping(shift_at(j, l), modulus); }

    bool full() const;                 // no empty blocks
    int column_block_weight(int l) const;
    std::int64_t nrows() const { return static_cast<std::int64_t>(block_rows) * modulus; }
    std::int64_t ncols() const { return static_cast<std::int64_t>(block_cols) * modulus; }

    bool operator==(const QcBlockMatrix&) const = default;

  private:
    std::size_t idx(int j, int l) const;
};

/// Sparse 0/1 matrix as a sorted, duplicate-free list of coordinates.
struct SparseBinaryMatrix {
    std::int64_t nrows = 0;
    std::int64_t ncols = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;  // sorted (row, col)

    SparseBinaryMatrix() = default;
    SparseBinaryMatrix(std::int64_t r, std::int64_t c) : nrows(r), ncols(c) {}

    // Sorts and validates; duplicate coordinates are an error, not an XOR.
    static SparseBinaryMatrix from_entries(std::int64_t nrows, std::int64_t ncols,
                                           std::vector<std::pair<std::int64_t, std::int64_t>> ents);

    std::size_t entry_count() const { return entries.size(); }
    std::vector<std::int64_t> row_weights() const;
    std::vector<std::int64_t> col_weights() const;
    // Per-column row lists (CSR-style adjacency), handy for products and BFS.
    std::vector<std::vector<std::int64_t>> rows_by_col() const;
    std::vector<std::vector<std::int64_t>> cols_by_row() const;

    bool operator==(const SparseBinaryMatrix&) const = default;
};

SparseBinaryMatrix expand(const QcBlockMatrix& m);

/// A * B^T over GF(2). Requires a.ncols == b.ncols.
SparseBinaryMatrix multiply_transpose_gf2(const SparseBinaryMatrix& a, const SparseBinaryMatrix& b);

// alist interchange (MacKay convention: "ncols nrows" on the first line,
// 1-based indices, column lists before row lists).
std::string write_alist(const SparseBinaryMatrix& m);
SparseBinaryMatrix parse_alist(const std::string& text);

// Block-level JSON descriptor {"J":..,"L":..,"P":..,"blocks":[[b|null,..],..]}.
// Canonical (byte-stable) serialization.
std::string write_block_json(const QcBlockMatrix& m);
QcBlockMatrix parse_block_json(const std::string& text);

}  // namespace qclf

#endif
