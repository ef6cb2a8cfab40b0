// The OpenMP kernels must reproduce the serial reference results exactly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qclf/construct.hpp"
#include "qclf/girth.hpp"
#include "qclf/quantum.hpp"
#include "qclf/sim.hpp"

using namespace qclf;

TEST_CASE("bfs oracle: parallel equals serial") {
    for (int L : {4, 6, 8}) {
        for (std::int64_t P : {std::int64_t(5), std::int64_t(17), std::int64_t(49),
                               std::int64_t(64), std::int64_t(80)}) {
            auto m = expand(build_classical(L, P));
            CAPTURE(L);
            CAPTURE(P);
            CHECK(girth_bfs_oracle(m) == girth_bfs_oracle_serial(m));
        }
    }
    auto sc = expand(build_sc_pair(6, 160, 2, 3).first);
    CHECK(girth_bfs_oracle(sc) == girth_bfs_oracle_serial(sc));
}

TEST_CASE("min-P search: parallel equals serial") {
    for (int L : {6, 8}) {
        CAPTURE(L);
        CHECK(min_p_search(L, 2, 2, 300) == min_p_search_serial(L, 2, 2, 300));
        CHECK(min_p_search(L, 2, 2, 300, 1) == min_p_search_serial(L, 2, 2, 300));
    }
    CHECK(min_p_search(6, 2, 50, 48) == min_p_search_serial(6, 2, 50, 48));
    CHECK(min_p_search(6, 3, 2, 500) == min_p_search_serial(6, 3, 2, 500));
}

TEST_CASE("orthogonality check: parallel equals serial") {
    auto [hx, hz] = build_orthogonal_pair(8, 138);
    auto ex = expand(hx), ez = expand(hz);
    auto a = check_orthogonal(ex, ez);
    auto b = check_orthogonal_serial(ex, ez);
    CHECK(a.ok == b.ok);
    CHECK(a.violations == b.violations);

    // and on a failing input, identical violation lists in identical order
    auto bad_a = check_orthogonal(ex, ex);
    auto bad_b = check_orthogonal_serial(ex, ex);
    CHECK(!bad_a.ok);
    CHECK(bad_a.violations == bad_b.violations);
}

TEST_CASE("fer kernels: one worker equals many") {
    FerParams params;
    params.L = 8;
    params.P = 138;
    params.p_grid = {0.003, 0.01};
    params.trials = 250;
    params.seed = 99;
    params.jobs = 1;
    auto one = fer_experiment(params);
    params.jobs = 4;
    auto many = fer_experiment(params);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].failures == many[i].failures);
        CHECK(one[i].fer == many[i].fer);
    }
}
