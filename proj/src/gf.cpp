#include "qclf/gf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "qclf/construct.hpp"
#include "qclf/quantum.hpp"

namespace qclf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic stream of nonzero field elements; independent of any
// standard-library distribution internals.
struct LabelRng {
    std::uint64_t state;
    explicit LabelRng(std::uint64_t seed) : state(seed) {}
    std::uint32_t next_nonzero(std::uint32_t q) {
        if (q <= 2) return 1;
        state = splitmix64(state);
        return 1 + static_cast<std::uint32_t>(state % (q - 1));
    }
};

int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// carry-less multiply mod the reduction polynomial
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int e) {
    std::uint64_t acc = 0;
    std::uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    for (int bit = 2 * e - 2; bit >= e; --bit)
        if (acc >> bit & 1) acc ^= static_cast<std::uint64_t>(poly) << (bit - e);
    return static_cast<std::uint32_t>(acc);
}

bool poly_irreducible(std::uint32_t poly, int e) {
    if (e == 1) return poly == 0x3 || poly == 0x2;  // x + 1 or x
    // trial division by every polynomial of degree 1..e/2
    for (int d = 1; d <= e / 2; ++d) {
        for (std::uint32_t div = (1u << d); div < (2u << d); ++div) {
            std::uint32_t rem = poly;
            while (poly_degree(rem) >= d) {
                rem ^= div << (poly_degree(rem) - d);
            }
            if (rem == 0) return false;
        }
    }
    return true;
}

}  // namespace

FieldSpec FieldSpec::standard(int e) {
    static const std::uint32_t polys[17] = {
        0,      0x3,    0x7,    0xB,    0x13,  0x25,   0x43,   0x83,   0x11D,
        0x211,  0x409,  0x805,  0x1053, 0x201B, 0x402B, 0x8003, 0x1002D};
    if (e < 1 || e > 16) throw param_error("extension degree must be in [1, 16]");
    return FieldSpec{e, polys[e]};
}

GfField::GfField(const FieldSpec& spec) : spec_(spec), e_(spec.e), poly_(spec.primitive_poly) {
    if (e_ < 1 || e_ > 16) throw param_error("extension degree must be in [1, 16]");
    if (poly_degree(poly_) != e_)
        throw param_error("reduction polynomial must have degree exactly e");
    if (!poly_irreducible(poly_, e_))
        throw param_error("reduction polynomial is reducible over GF(2)");
    q_ = 1u << e_;
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    // find a multiplicative generator and tabulate its powers
    for (std::uint32_t g = (e_ == 1 ? 1u : 2u); g < q_; ++g) {
        std::uint32_t v = 1;
        bool ok = true;
        for (std::uint32_t k = 0; k < q_ - 1; ++k) {
            if (k > 0 && v == 1) {
                ok = false;
                break;
            }
            exp_[k] = static_cast<std::uint16_t>(v);
            log_[v] = static_cast<std::uint16_t>(k);
            v = clmul_mod(v, g, poly_, e_);
        }
        if (ok && v == 1) return;
    }
    throw std::logic_error("no multiplicative generator found");  // unreachable for a field
}

std::uint32_t GfField::add(std::uint32_t a, std::uint32_t b) const {
    if (a >= q_ || b >= q_) throw param_error("field element out of range");
    return a ^ b;
}

std::uint32_t GfField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a >= q_ || b >= q_) throw param_error("field element out of range");
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

std::uint32_t GfField::inv(std::uint32_t a) const {
    if (a >= q_) throw param_error("field element out of range");
    if (a == 0) throw param_error("zero has no multiplicative inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t gf_add(std::uint32_t a, std::uint32_t b, const GfField& f) { return f.add(a, b); }
std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, const GfField& f) { return f.mul(a, b); }
std::uint32_t gf_inv(std::uint32_t a, const GfField& f) { return f.inv(a); }

SparseBinaryMatrix GfMatrix::support() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> ents;
    ents.reserve(entries.size());
    for (const auto& [r, c, v] : entries) ents.emplace_back(r, c);
    return SparseBinaryMatrix::from_entries(nrows, ncols, std::move(ents));
}

std::vector<ExtensionViolation> check_extension_condition(int L, std::int64_t P, int base) {
    if (L < 6 || L % 2 != 0) throw param_error("extension condition needs even L >= 6");
    if (P < 2) throw param_error("P must be at least 2");
    int m = L / 2;
    auto mod_idx = [m](int a) { return ((a % m) + m) % m; };
    auto mod_pow = [&](int exp) {
        std::int64_t r = 1 % P, b = base % P;
        for (int i = 0; i < exp; ++i) r = r * b % P;
        return r;
    };
    std::vector<ExtensionViolation> bad;
    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            std::map<std::int64_t, int> seen;
            for (int l = 0; l < m; ++l) {
                std::int64_t v = (mod_pow(mod_idx(l - k)) + mod_pow(mod_idx(kp - l) + m)) % P;
                auto it = seen.find(v);
                if (it != seen.end())
                    bad.push_back(ExtensionViolation{it->second, l, k, kp});
                else
                    seen.emplace(v, l);
            }
        }
    }
    return bad;
}

namespace {

struct OverlapPairing {
    // one product entry (x_row, z_row) with its two overlap columns
    std::int64_t x_row, z_row, col_a, col_b;
};

// Group overlap incidences by product entry and require multiplicity 0 or 2.
std::vector<OverlapPairing> pair_overlaps(const SparseBinaryMatrix& x,
                                          const SparseBinaryMatrix& z) {
    auto xc = x.rows_by_col();
    auto zc = z.rows_by_col();
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> inc;  // (r, s, c)
    for (std::int64_t c = 0; c < x.ncols; ++c)
        for (std::int64_t r : xc[c])
            for (std::int64_t s : zc[c]) inc.emplace_back(r, s, c);
    std::sort(inc.begin(), inc.end());
    std::vector<OverlapPairing> out;
    for (std::size_t i = 0; i < inc.size();) {
        std::size_t j = i;
        auto same = [&](std::size_t k) {
            return std::get<0>(inc[k]) == std::get<0>(inc[i]) &&
                   std::get<1>(inc[k]) == std::get<1>(inc[i]);
        };
        while (j < inc.size() && same(j)) ++j;
        if (j - i != 2) {
            std::ostringstream os;
            os << "overlap multiplicity " << (j - i) << " at product entry ("
               << std::get<0>(inc[i]) << "," << std::get<1>(inc[i])
               << "); the pairing construction needs every overlap to come in twos";
            throw std::runtime_error(os.str());
        }
        out.push_back(OverlapPairing{std::get<0>(inc[i]), std::get<1>(inc[i]),
                                     std::get<2>(inc[i]), std::get<2>(inc[i + 1])});
        i = j;
    }
    return out;
}

std::pair<GfMatrix, GfMatrix> extend_supports(const SparseBinaryMatrix& x,
                                              const SparseBinaryMatrix& z, const GfField& field,
                                              std::uint64_t seed) {
    auto orth = check_orthogonal_serial(x, z);
    if (!orth.ok) {
        std::ostringstream os;
        os << "binary pair is not orthogonal (" << orth.violations.size()
           << " nonzero product entries); refusing to extend";
        throw std::runtime_error(os.str());
    }
    auto pairings = pair_overlaps(x, z);

    const std::uint32_t q = field.order();
    LabelRng rng(splitmix64(seed ^ 0xA5C3D2E1ull));
    std::vector<std::uint32_t> alpha(x.nrows), beta(z.nrows), lambda(x.ncols);
    for (auto& v : alpha) v = rng.next_nonzero(q);
    for (auto& v : beta) v = rng.next_nonzero(q);
    for (auto& v : lambda) v = rng.next_nonzero(q);

    GfMatrix gx{x.nrows, x.ncols, field.degree(), {}};
    GfMatrix gz{z.nrows, z.ncols, field.degree(), {}};
    gx.entries.reserve(x.entries.size());
    gz.entries.reserve(z.entries.size());
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint32_t> xval, zval;
    for (const auto& [r, c] : x.entries) {
        std::uint32_t v = field.mul(alpha[r], lambda[c]);
        gx.entries.emplace_back(r, c, static_cast<std::uint16_t>(v));
        xval[{r, c}] = v;
    }
    for (const auto& [s, c] : z.entries) {
        std::uint32_t v = field.mul(beta[s], field.inv(lambda[c]));
        gz.entries.emplace_back(s, c, static_cast<std::uint16_t>(v));
        zval[{s, c}] = v;
    }

    // Re-verify every pairing: the two contributions to each product entry
    // must cancel, i.e. gamma_1*delta_1 == gamma_2*delta_2.
    for (const auto& pr : pairings) {
        std::uint32_t lhs = field.mul(xval[{pr.x_row, pr.col_a}], zval[{pr.z_row, pr.col_a}]);
        std::uint32_t rhs = field.mul(xval[{pr.x_row, pr.col_b}], zval[{pr.z_row, pr.col_b}]);
        if (lhs != rhs) {
            std::ostringstream os;
            os << "label assignment violates the pairing at product entry (" << pr.x_row << ","
               << pr.z_row << ") columns " << pr.col_a << "," << pr.col_b;
            throw std::runtime_error(os.str());
        }
    }
    return {std::move(gx), std::move(gz)};
}

}  // namespace

std::pair<GfMatrix, GfMatrix> extend_to_nb(const QcBlockMatrix& hx, const QcBlockMatrix& hz,
                                           const FieldSpec& spec, std::uint64_t seed) {
    GfField field(spec);
    auto result = extend_supports(expand(hx), expand(hz), field, seed);
    auto rep = check_orthogonal_gfq(result.first, result.second, field);
    if (!rep.ok)
        throw std::runtime_error("extended pair fails the GF(2^e) product check");
    return result;
}

std::pair<GfMatrix, GfMatrix> build_sc_pair_nb(int L, std::int64_t P, int base, int n_c,
                                               const FieldSpec& spec, std::uint64_t seed) {
    GfField field(spec);
    auto [hx, hz] = build_sc_pair(L, P, base, n_c);
    GfMatrix gx{hx.nrows(), hx.ncols(), spec.e, {}};
    GfMatrix gz{hz.nrows(), hz.ncols(), spec.e, {}};
    for (int ic = 0; ic < n_c; ++ic) {
        // lift the section's blocks back out and extend them independently
        QcBlockMatrix sx(2, L, P), sz(2, L, P);
        for (int j = 0; j < 2; ++j) {
            for (int l = 0; l < L; ++l) {
                sx.set_shift(j, l, hx.shift_at(ic + j, ic * L + l));
                sz.set_shift(j, l, hz.shift_at((n_c - 1 - ic) + j, ic * L + l));
            }
        }
        auto sec = extend_supports(expand(sx), expand(sz), field, splitmix64(seed + ic));
        std::int64_t row_x = static_cast<std::int64_t>(ic) * P;
        std::int64_t row_z = static_cast<std::int64_t>(n_c - 1 - ic) * P;
        std::int64_t col0 = static_cast<std::int64_t>(ic) * L * P;
        for (const auto& [r, c, v] : sec.first.entries) gx.entries.emplace_back(row_x + r, col0 + c, v);
        for (const auto& [r, c, v] : sec.second.entries) gz.entries.emplace_back(row_z + r, col0 + c, v);
    }
    std::sort(gx.entries.begin(), gx.entries.end());
    std::sort(gz.entries.begin(), gz.entries.end());
    auto rep = check_orthogonal_gfq(gx, gz, field);
    if (!rep.ok)
        throw std::runtime_error("coupled extended pair fails the GF(2^e) product check");
    return {std::move(gx), std::move(gz)};
}

GfOrthogonalityReport check_orthogonal_gfq(const GfMatrix& a, const GfMatrix& b,
                                           const GfField& f) {
    if (a.ncols != b.ncols) throw param_error("GF(q) product needs matching column counts");
    if (a.e != b.e || a.e != f.degree()) throw param_error("field degree mismatch");
    std::vector<std::vector<std::pair<std::int64_t, std::uint16_t>>> acol(a.ncols), bcol(b.ncols);
    for (const auto& [r, c, v] : a.entries) acol[c].emplace_back(r, v);
    for (const auto& [r, c, v] : b.entries) bcol[c].emplace_back(r, v);
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint32_t> acc;
    for (std::int64_t c = 0; c < a.ncols; ++c)
        for (const auto& [r, va] : acol[c])
            for (const auto& [s, vb] : bcol[c]) acc[{r, s}] ^= f.mul(va, vb);
    GfOrthogonalityReport rep;
    for (const auto& [key, v] : acc)
        if (v != 0)
            rep.violations.emplace_back(key.first, key.second, static_cast<std::uint16_t>(v));
    rep.ok = rep.violations.empty();
    return rep;
}

std::string write_gf_alist(const GfMatrix& m, std::uint32_t poly) {
    std::ostringstream os;
    os << m.nrows << ' ' << m.ncols << '\n';
    os << m.e << ' ' << std::hex << std::uppercase << poly << std::dec << '\n';
    std::vector<std::vector<std::pair<std::int64_t, std::uint16_t>>> rows(m.nrows);
    for (const auto& [r, c, v] : m.entries) rows[r].emplace_back(c, v);
    std::size_t maxw = 0;
    for (const auto& row : rows) maxw = std::max(maxw, row.size());
    os << maxw << '\n';
    for (std::int64_t r = 0; r < m.nrows; ++r)
        os << rows[r].size() << (r + 1 == m.nrows ? '\n' : ' ');
    if (m.nrows == 0) os << '\n';
    for (std::int64_t r = 0; r < m.nrows; ++r) {
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            os << rows[r][i].first + 1 << ':' << std::hex << std::uppercase << rows[r][i].second
               << std::dec;
            if (i + 1 < rows[r].size()) os << ' ';
        }
        os << '\n';
    }
    return os.str();
}

GfMatrix parse_gf_alist(const std::string& text, std::uint32_t* poly_out) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> std::string& {
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) return line;
        }
        throw parse_error("line " + std::to_string(lineno) + ": unexpected end of file");
    };

    GfMatrix m;
    {
        std::istringstream ls(next_line());
        if (!(ls >> m.nrows >> m.ncols) || m.nrows < 0 || m.ncols < 0)
            throw parse_error("line " + std::to_string(lineno) + ": bad dimensions");
    }
    std::uint32_t poly = 0;
    {
        std::istringstream ls(next_line());
        std::string polyhex;
        if (!(ls >> m.e >> polyhex) || m.e < 1 || m.e > 16)
            throw parse_error("line " + std::to_string(lineno) + ": bad field header");
        auto res = std::from_chars(polyhex.data(), polyhex.data() + polyhex.size(), poly, 16);
        if (res.ec != std::errc() || res.ptr != polyhex.data() + polyhex.size())
            throw parse_error("line " + std::to_string(lineno) + ": bad polynomial");
    }
    if (poly_out) *poly_out = poly;
    std::size_t maxw = 0;
    {
        std::istringstream ls(next_line());
        if (!(ls >> maxw)) throw parse_error("line " + std::to_string(lineno) + ": bad max weight");
    }
    std::vector<std::size_t> weights(m.nrows);
    {
        std::istringstream ls(next_line());
        for (auto& w : weights) {
            if (!(ls >> w)) throw parse_error("line " + std::to_string(lineno) + ": missing row weight");
            if (w > maxw)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": row weight exceeds declared maximum");
        }
    }
    const std::uint32_t q = 1u << m.e;
    for (std::int64_t r = 0; r < m.nrows; ++r) {
        std::istringstream ls(next_line());
        std::string tok;
        std::size_t count = 0;
        while (ls >> tok) {
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw parse_error("line " + std::to_string(lineno) + ": expected col:val");
            std::int64_t c = 0;
            std::uint32_t v = 0;
            auto r1 = std::from_chars(tok.data(), tok.data() + colon, c);
            auto r2 = std::from_chars(tok.data() + colon + 1, tok.data() + tok.size(), v, 16);
            if (r1.ec != std::errc() || r2.ec != std::errc() ||
                r2.ptr != tok.data() + tok.size())
                throw parse_error("line " + std::to_string(lineno) + ": bad col:val token");
            if (c < 1 || c > m.ncols)
                throw parse_error("line " + std::to_string(lineno) + ": column index out of range");
            if (v == 0 || v >= q)
                throw parse_error("line " + std::to_string(lineno) + ": value outside GF(2^e)*");
            m.entries.emplace_back(r, c - 1, static_cast<std::uint16_t>(v));
            ++count;
        }
        if (count != weights[r])
            throw parse_error("line " + std::to_string(lineno) + ": row weight mismatch");
    }
    std::sort(m.entries.begin(), m.entries.end());
    for (std::size_t i = 1; i < m.entries.size(); ++i) {
        if (std::get<0>(m.entries[i]) == std::get<0>(m.entries[i - 1]) &&
            std::get<1>(m.entries[i]) == std::get<1>(m.entries[i - 1]))
            throw parse_error("duplicate entry in valued alist");
    }
    return m;
}

}  // namespace qclf
