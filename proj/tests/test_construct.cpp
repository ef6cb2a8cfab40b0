#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qclf/construct.hpp"
#include "qclf/quantum.hpp"

using namespace qclf;

namespace {

std::vector<std::int64_t> row_shifts(const QcBlockMatrix& m, int j) {
    std::vector<std::int64_t> out;
    for (int l = 0; l < m.block_cols; ++l) out.push_back(m.shift_at(j, l));
    return out;
}

}  // namespace

TEST_CASE("half construction shift grids") {
    auto h = build_classical_half(6, 49);
    CHECK(row_shifts(h, 0) == std::vector<std::int64_t>{1, 2, 4});
    CHECK(row_shifts(h, 1) == std::vector<std::int64_t>{4, 1, 2});

    // exponents below P stay unreduced
    auto h5 = build_classical_half(6, 5);
    CHECK(row_shifts(h5, 0) == std::vector<std::int64_t>{1, 2, 4});

    auto h3 = build_classical_half(8, 1000, 3);
    CHECK(row_shifts(h3, 0) == std::vector<std::int64_t>{1, 3, 9, 27});
}

TEST_CASE("full classical construction") {
    auto h = build_classical(6, 49);
    CHECK(row_shifts(h, 0) == std::vector<std::int64_t>{1, 2, 4, 8, 16, 32});
    CHECK(row_shifts(h, 1) == std::vector<std::int64_t>{4, 1, 2, 32, 8, 16});
    CHECK(h.shift_at(1, 0) == 4);  // base^((0-1) mod 3) = base^2

    auto h8 = build_classical(8, 1000000);
    CHECK(row_shifts(h8, 0) == std::vector<std::int64_t>{1, 2, 4, 8, 16, 32, 64, 128});

    CHECK_THROWS_AS(build_classical(5, 49), param_error);
    CHECK_THROWS_AS(build_classical(6, 1), param_error);
    CHECK_THROWS_AS(build_classical(6, 49, 1), param_error);
}

TEST_CASE("orthogonal pair reproduces the (6,49) grids") {
    auto [hx, hz] = build_orthogonal_pair(6, 49);
    CHECK(hx == build_classical(6, 49));
    CHECK(row_shifts(hz, 0) == std::vector<std::int64_t>{41, 17, 33, 48, 45, 47});
    CHECK(row_shifts(hz, 1) == std::vector<std::int64_t>{33, 41, 17, 47, 48, 45});
}

TEST_CASE("orthogonality holds across the parameter sweep") {
    for (int L : {4, 6, 8, 10}) {
        for (std::int64_t P = 5; P <= 64; ++P) {
            auto [hx, hz] = build_orthogonal_pair(L, P);
            auto prod = multiply_transpose_gf2(expand(hx), expand(hz));
            CAPTURE(L);
            CAPTURE(P);
            REQUIRE(prod.entries.empty());
        }
    }
    for (auto [L, P] : std::vector<std::pair<int, std::int64_t>>{{6, 49}, {8, 138}, {6, 128}}) {
        auto [hx, hz] = build_orthogonal_pair(L, P);
        CHECK(multiply_transpose_gf2(expand(hx), expand(hz)).entries.empty());
    }
}

TEST_CASE("coupled pairs are orthogonal") {
    for (int nc : {2, 3}) {
        for (int L : {6, 8, 10}) {
            for (std::int64_t P = 5; P <= 64; P += 7) {
                auto [hx, hz] = build_sc_pair(L, P, 2, nc);
                CAPTURE(L);
                CAPTURE(P);
                CAPTURE(nc);
                REQUIRE(multiply_transpose_gf2(expand(hx), expand(hz)).entries.empty());
            }
        }
    }
    auto [hx, hz] = build_sc_pair(6, 4160, 2, 3);
    CHECK(multiply_transpose_gf2(expand(hx), expand(hz)).entries.empty());
}

TEST_CASE("coupling number one degenerates to the plain pair") {
    auto [sx, sz] = build_sc_pair(6, 49, 2, 1);
    auto [hx, hz] = build_orthogonal_pair(6, 49);
    CHECK(sx == hx);
    CHECK(sz == hz);
}

TEST_CASE("odd sections shift the exponent window by L") {
    auto [hx, hz] = build_sc_pair(6, 4160, 2, 2);
    CHECK(hx.shift_at(1, 6) == 64);    // section 1, local row 0, l = 0: 2^6
    CHECK(hx.shift_at(1, 7) == 128);
    CHECK(hx.shift_at(1, 8) == 256);
    CHECK(!hx.block(0, 6).has_value());  // outside the band
    CHECK(!hx.block(2, 0).has_value());
    // Z side stacks sections bottom-up: section 0 sits in block rows {1, 2}
    CHECK(hz.block(1, 0).has_value());
    CHECK(hz.block(2, 0).has_value());
    CHECK(!hz.block(0, 0).has_value());
    (void)hz;
}

TEST_CASE("control coupling repeats the section exponents") {
    auto [cx, cz] = build_sc_pair_control(6, 4160, 2, 2);
    CHECK(cx.shift_at(1, 6) == 1);  // same window as section 0
    CHECK(cx.shift_at(0, 0) == 1);
    CHECK(multiply_transpose_gf2(expand(cx), expand(cz)).entries.empty());
}

TEST_CASE("circulant-size bounds") {
    CHECK(bound_p0(6) == 128);
    CHECK(bound_p0(8) == 512);
    CHECK(bound_p0(16) == 131072);
    CHECK(bound_p1(6) == 4160);
    CHECK(bound_p0_base_n(6, 2) == 64);    // generalized sentence disagrees at base 2
    CHECK(bound_p0_base_n(8, 3) == 2 * 2187);
    CHECK(bound_p1_base_n(6, 2) == 64 * 65);
    CHECK_THROWS_AS(bound_p1(40, 2), param_error);
    CHECK_THROWS_AS(bound_p0(64, 2), param_error);
}

TEST_CASE("construction is deterministic") {
    CHECK(write_block_json(build_classical(10, 281)) == write_block_json(build_classical(10, 281)));
    auto a = build_sc_pair(8, 300, 2, 3);
    auto b = build_sc_pair(8, 300, 2, 3);
    CHECK(write_block_json(a.first) == write_block_json(b.first));
    CHECK(write_block_json(a.second) == write_block_json(b.second));
}

TEST_CASE("base 2 equals the generic builder at n = 2") {
    CHECK(build_classical(8, 300) == build_classical(8, 300, 2));
    CHECK(build_classical_half(8, 300) == build_classical_half(8, 300, 2));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_sc_pair(4, 100, 2, 2), param_error);
    CHECK_THROWS_AS(build_sc_pair(6, 100, 2, 0), param_error);
    ConstructionParams p;
    p.L = 7;
    CHECK_THROWS_AS(validate_params(p), param_error);
}
