#include "qclf/construct.hpp"

#include <limits>
#include <string>

namespace qclf {

namespace {

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    std::int64_t r = 1 % mod;
    std::int64_t b = base % mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<std::int64_t>((__int128)r * b % mod);
        b = static_cast<std::int64_t>((__int128)b * b % mod);
        exp >>= 1;
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 v = (__int128)a * b;
    if (v > std::numeric_limits<std::int64_t>::max())
        throw param_error("circulant-size bound overflows 64-bit range");
    return static_cast<std::int64_t>(v);
}

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

int mod_idx(int a, int m) { return ((a % m) + m) % m; }

void check_lp(int L, std::int64_t P, int base, int min_l) {
    if (L < min_l || L % 2 != 0)
        throw param_error("L must be an even integer >= " + std::to_string(min_l));
    if (P < 2) throw param_error("P must be at least 2");
    if (base < 2) throw param_error("exponent base must be at least 2");
}

// X-side exponent of block (j,l) in a full 2 x L grid, before the mod-P
// reduction. offset shifts the whole exponent window (spatial coupling).
int x_exponent(int j, int l, int L, int offset) {
    int m = L / 2;
    if (l < m) return mod_idx(l - j, m) + offset;
    return mod_idx(l - m - j, m) + m + offset;
}

// Z-side exponent; the built shift is P - base^e mod P (inverse mapping).
int z_exponent(int j, int l, int L, int offset) {
    int m = L / 2;
    if (l < m) return mod_idx(j - l, m) + m + offset;
    return mod_idx(j - l + m, m) + offset;
}

std::pair<QcBlockMatrix, QcBlockMatrix> build_sc(int L, std::int64_t P, int base, int n_c,
                                                 bool varied) {
    check_lp(L, P, base, 6);
    if (n_c < 1) throw param_error("coupling number n_c must be at least 1");
    QcBlockMatrix hx(n_c + 1, n_c * L, P);
    QcBlockMatrix hz(n_c + 1, n_c * L, P);
    for (int ic = 0; ic < n_c; ++ic) {
        int offset = (varied && (ic % 2 == 1)) ? L : 0;
        for (int j = 0; j < 2; ++j) {
            for (int l = 0; l < L; ++l) {
                std::int64_t bx = mod_pow(base, x_exponent(j, l, L, offset), P);
                std::int64_t bz = (P - mod_pow(base, z_exponent(j, l, L, offset), P)) % P;
                hx.set_shift(ic + j, ic * L + l, bx);
                hz.set_shift((n_c - 1 - ic) + j, ic * L + l, bz);
            }
        }
    }
    return {std::move(hx), std::move(hz)};
}

}  // namespace

void validate_params(const ConstructionParams& p) {
    check_lp(p.L, p.P, p.base, 4);
    if (p.coupling < 1) throw param_error("coupling number n_c must be at least 1");
    if (p.coupling > 1 && p.L < 6)
        throw param_error("spatial coupling requires L >= 6");
}

QcBlockMatrix build_classical_half(int L, std::int64_t P, int base) {
    check_lp(L, P, base, 4);
    int m = L / 2;
    QcBlockMatrix h(2, m, P);
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < m; ++l)
            h.set_shift(j, l, mod_pow(base, mod_idx(l - j, m), P));
    return h;
}

QcBlockMatrix build_classical(int L, std::int64_t P, int base) {
    check_lp(L, P, base, 4);
    QcBlockMatrix h(2, L, P);
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < L; ++l)
            h.set_shift(j, l, mod_pow(base, x_exponent(j, l, L, 0), P));
    return h;
}

std::pair<QcBlockMatrix, QcBlockMatrix> build_orthogonal_pair(int L, std::int64_t P, int base) {
    check_lp(L, P, base, 4);
    QcBlockMatrix hx = build_classical(L, P, base);
    QcBlockMatrix hz(2, L, P);
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < L; ++l)
            hz.set_shift(j, l, (P - mod_pow(base, z_exponent(j, l, L, 0), P)) % P);
    return {std::move(hx), std::move(hz)};
}

std::pair<QcBlockMatrix, QcBlockMatrix> build_sc_pair(int L, std::int64_t P, int base, int n_c) {
    return build_sc(L, P, base, n_c, true);
}

std::pair<QcBlockMatrix, QcBlockMatrix> build_sc_pair_control(int L, std::int64_t P, int base,
                                                              int n_c) {
    return build_sc(L, P, base, n_c, false);
}

std::int64_t bound_p0(int L, int base) {
    if (L < 2 || base < 2) throw param_error("bound_p0 needs L >= 2, base >= 2");
    if (base == 2) return checked_pow(2, L + 1);
    return bound_p0_base_n(L, base);
}

std::int64_t bound_p1(int L, int base) {
    if (L < 2 || base < 2) throw param_error("bound_p1 needs L >= 2, base >= 2");
    if (base == 2) {
        std::int64_t pl = checked_pow(2, L);
        return checked_mul(pl, pl + 1);
    }
    return bound_p1_base_n(L, base);
}

std::int64_t bound_p0_base_n(int L, int base) {
    if (L < 2 || base < 2) throw param_error("bound_p0 needs L >= 2, base >= 2");
    return checked_mul(2, checked_pow(base, L - 1));
}

std::int64_t bound_p1_base_n(int L, int base) {
    if (L < 2 || base < 2) throw param_error("bound_p1 needs L >= 2, base >= 2");
    return checked_mul(bound_p0_base_n(L, base), checked_pow(base, L) + 1);
}

}  // namespace qclf
