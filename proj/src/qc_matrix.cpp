#include "qclf/qc_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "json.hpp"

namespace qclf {

PermMapping::PermMapping(std::int64_t s, std::int64_t p) : shift(s), modulus(p) {
    if (p <= 0) throw param_error("circulant size must be positive");
    if (s < 0 || s >= p) throw param_error("shift out of range [0, P)");
}

std::int64_t PermMapping::apply(std::int64_t x) const {
    if (x < 0 || x >= modulus) throw param_error("point out of Z_P");
    std::int64_t y = x + shift;
    return y >= modulus ? y - modulus : y;
}

PermMapping compose(const PermMapping& f, const PermMapping& g) {
    if (f.modulus != g.modulus)
        throw param_error("cannot compose mappings with different circulant sizes");
    return PermMapping((f.shift + g.shift) % f.modulus, f.modulus);
}

PermMapping invert(const PermMapping& f) {
    return PermMapping((f.modulus - f.shift) % f.modulus, f.modulus);
}

QcBlockMatrix::QcBlockMatrix(int j, int l, std::int64_t p)
    : block_rows(j), block_cols(l), modulus(p),
      blocks(static_cast<std::size_t>(j) * static_cast<std::size_t>(l)) {
    if (j <= 0 || l <= 0) throw param_error("block grid dimensions must be positive");
    if (p <= 0) throw param_error("circulant size must be positive");
}

std::size_t QcBlockMatrix::idx(int j, int l) const {
    if (j < 0 || j >= block_rows || l < 0 || l >= block_cols)
        throw param_error("block index out of range");
    return static_cast<std::size_t>(j) * block_cols + l;
}

void QcBlockMatrix::set_shift(int j, int l, std::int64_t b) {
    if (b < 0 || b >= modulus) throw param_error("shift out of range [0, P)");
    blocks[idx(j, l)] = b;
}

std::int64_t QcBlockMatrix::shift_at(int j, int l) const {
    const auto& b = blocks[idx(j, l)];
    if (!b) throw param_error("block (" + std::to_string(j) + "," + std::to_string(l) + ") is empty");
    return *b;
}

bool QcBlockMatrix::full() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.has_value(); });
}

int QcBlockMatrix::column_block_weight(int l) const {
    int w = 0;
    for (int j = 0; j < block_rows; ++j)
        if (block(j, l)) ++w;
    return w;
}

SparseBinaryMatrix SparseBinaryMatrix::from_entries(
    std::int64_t nrows, std::int64_t ncols,
    std::vector<std::pair<std::int64_t, std::int64_t>> ents) {
    SparseBinaryMatrix m(nrows, ncols);
    std::sort(ents.begin(), ents.end());
    for (std::size_t i = 0; i < ents.size(); ++i) {
        auto [r, c] = ents[i];
        if (r < 0 || r >= nrows || c < 0 || c >= ncols)
            throw param_error("entry (" + std::to_string(r) + "," + std::to_string(c) +
                              ") outside matrix bounds");
        if (i > 0 && ents[i] == ents[i - 1])
            throw param_error("duplicate entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
    }
    m.entries = std::move(ents);
    return m;
}

std::vector<std::int64_t> SparseBinaryMatrix::row_weights() const {
    std::vector<std::int64_t> w(nrows, 0);
    for (const auto& [r, c] : entries) ++w[r];
    return w;
}

std::vector<std::int64_t> SparseBinaryMatrix::col_weights() const {
    std::vector<std::int64_t> w(ncols, 0);
    for (const auto& [r, c] : entries) ++w[c];
    return w;
}

std::vector<std::vector<std::int64_t>> SparseBinaryMatrix::rows_by_col() const {
    std::vector<std::vector<std::int64_t>> by(ncols);
    for (const auto& [r, c] : entries) by[c].push_back(r);
    return by;
}

std::vector<std::vector<std::int64_t>> SparseBinaryMatrix::cols_by_row() const {
    std::vector<std::vector<std::int64_t>> by(nrows);
    for (const auto& [r, c] : entries) by[r].push_back(c);
    return by;
}

SparseBinaryMatrix expand(const QcBlockMatrix& m) {
    std::vector<std::pair<std::int64_t, std::int64_t>> ents;
    const std::int64_t p = m.modulus;
    for (int j = 0; j < m.block_rows; ++j) {
        for (int l = 0; l < m.block_cols; ++l) {
            const auto& b = m.block(j, l);
            if (!b) continue;
            for (std::int64_t i = 0; i < p; ++i) {
                std::int64_t r = i + *b;
                if (r >= p) r -= p;
                ents.emplace_back(j * p + r, l * p + i);
            }
        }
    }
    return SparseBinaryMatrix::from_entries(m.nrows(), m.ncols(), std::move(ents));
}

SparseBinaryMatrix multiply_transpose_gf2(const SparseBinaryMatrix& a, const SparseBinaryMatrix& b) {
    if (a.ncols != b.ncols)
        throw param_error("A*B^T needs matching column counts (" + std::to_string(a.ncols) +
                          " vs " + std::to_string(b.ncols) + ")");
    auto cols_a = a.rows_by_col();
    auto cols_b = b.rows_by_col();
    std::vector<std::pair<std::int64_t, std::int64_t>> hits;
    for (std::int64_t c = 0; c < a.ncols; ++c) {
        for (std::int64_t r : cols_a[c])
            for (std::int64_t s : cols_b[c]) hits.emplace_back(r, s);
    }
    std::sort(hits.begin(), hits.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> odd;
    for (std::size_t i = 0; i < hits.size();) {
        std::size_t j = i;
        while (j < hits.size() && hits[j] == hits[i]) ++j;
        if ((j - i) & 1) odd.push_back(hits[i]);
        i = j;
    }
    SparseBinaryMatrix out(a.nrows, b.nrows);
    out.entries = std::move(odd);
    return out;
}

namespace {

// Tokenizing reader that tracks line numbers for parse errors.
struct TextScanner {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    explicit TextScanner(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            if (text[pos] == '\n') ++line;
            ++pos;
        }
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }

    std::int64_t next_int(const char* what) {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start)
            throw parse_error(std::string("line ") + std::to_string(line) + ": expected " + what);
        std::int64_t v = 0;
        auto res = std::from_chars(text.data() + start, text.data() + pos, v);
        if (res.ec != std::errc())
            throw parse_error(std::string("line ") + std::to_string(line) + ": bad integer for " + what);
        return v;
    }
};

}  // namespace

std::string write_alist(const SparseBinaryMatrix& m) {
    auto cw = m.col_weights();
    auto rw = m.row_weights();
    std::int64_t max_cw = cw.empty() ? 0 : *std::max_element(cw.begin(), cw.end());
    std::int64_t max_rw = rw.empty() ? 0 : *std::max_element(rw.begin(), rw.end());

    std::ostringstream os;
    os << m.ncols << ' ' << m.nrows << '\n';
    os << max_cw << ' ' << max_rw << '\n';
    for (std::int64_t c = 0; c < m.ncols; ++c) os << cw[c] << (c + 1 == m.ncols ? '\n' : ' ');
    if (m.ncols == 0) os << '\n';
    for (std::int64_t r = 0; r < m.nrows; ++r) os << rw[r] << (r + 1 == m.nrows ? '\n' : ' ');
    if (m.nrows == 0) os << '\n';

    auto by_col = m.rows_by_col();
    for (std::int64_t c = 0; c < m.ncols; ++c) {
        for (std::size_t i = 0; i < by_col[c].size(); ++i)
            os << by_col[c][i] + 1 << (i + 1 == by_col[c].size() ? "" : " ");
        os << '\n';
    }
    auto by_row = m.cols_by_row();
    for (std::int64_t r = 0; r < m.nrows; ++r) {
        for (std::size_t i = 0; i < by_row[r].size(); ++i)
            os << by_row[r][i] + 1 << (i + 1 == by_row[r].size() ? "" : " ");
        os << '\n';
    }
    return os.str();
}

SparseBinaryMatrix parse_alist(const std::string& text) {
    TextScanner sc(text);
    std::int64_t ncols = sc.next_int("column count");
    std::int64_t nrows = sc.next_int("row count");
    if (ncols < 0 || nrows < 0) throw parse_error("line 1: negative dimensions");
    std::int64_t max_cw = sc.next_int("max column weight");
    std::int64_t max_rw = sc.next_int("max row weight");

    std::vector<std::int64_t> cw(ncols), rw(nrows);
    for (auto& w : cw) {
        w = sc.next_int("column weight");
        if (w < 0 || w > max_cw)
            throw parse_error("line " + std::to_string(sc.line) + ": column weight exceeds declared maximum");
    }
    for (auto& w : rw) {
        w = sc.next_int("row weight");
        if (w < 0 || w > max_rw)
            throw parse_error("line " + std::to_string(sc.line) + ": row weight exceeds declared maximum");
    }

    std::vector<std::pair<std::int64_t, std::int64_t>> ents;
    for (std::int64_t c = 0; c < ncols; ++c) {
        for (std::int64_t k = 0; k < cw[c]; ++k) {
            std::int64_t r = sc.next_int("row index");
            if (r < 1 || r > nrows)
                throw parse_error("line " + std::to_string(sc.line) + ": row index " +
                                  std::to_string(r) + " out of range");
            ents.emplace_back(r - 1, c);
        }
    }
    // Row lists are redundant; read them and cross-check against the column lists.
    std::vector<std::pair<std::int64_t, std::int64_t>> row_ents;
    for (std::int64_t r = 0; r < nrows; ++r) {
        for (std::int64_t k = 0; k < rw[r]; ++k) {
            std::int64_t c = sc.next_int("column index");
            if (c < 1 || c > ncols)
                throw parse_error("line " + std::to_string(sc.line) + ": column index " +
                                  std::to_string(c) + " out of range");
            row_ents.emplace_back(r, c - 1);
        }
    }
    if (!sc.done()) throw parse_error("line " + std::to_string(sc.line) + ": trailing data");

    auto m = SparseBinaryMatrix::from_entries(nrows, ncols, std::move(ents));
    std::sort(row_ents.begin(), row_ents.end());
    if (row_ents != m.entries)
        throw parse_error("column and row index lists describe different matrices");
    return m;
}

std::string write_block_json(const QcBlockMatrix& m) {
    nlohmann::json j;
    j["J"] = m.block_rows;
    j["L"] = m.block_cols;
    j["P"] = m.modulus;
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.block_rows; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int l = 0; l < m.block_cols; ++l) {
            const auto& b = m.block(r, l);
            if (b)
                row.push_back(*b);
            else
                row.push_back(nullptr);
        }
        rows.push_back(std::move(row));
    }
    j["blocks"] = std::move(rows);
    return j.dump() + "\n";
}

QcBlockMatrix parse_block_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("bad JSON descriptor: ") + e.what());
    }
    try {
        int J = j.at("J").get<int>();
        int L = j.at("L").get<int>();
        std::int64_t P = j.at("P").get<std::int64_t>();
        QcBlockMatrix m(J, L, P);
        const auto& rows = j.at("blocks");
        if (!rows.is_array() || static_cast<int>(rows.size()) != J)
            throw parse_error("descriptor: blocks must have J rows");
        for (int r = 0; r < J; ++r) {
            const auto& row = rows[r];
            if (!row.is_array() || static_cast<int>(row.size()) != L)
                throw parse_error("descriptor: each block row must have L entries");
            for (int l = 0; l < L; ++l) {
                if (row[l].is_null()) continue;
                m.set_shift(r, l, row[l].get<std::int64_t>());
            }
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad JSON descriptor: ") + e.what());
    }
}

}  // namespace qclf
