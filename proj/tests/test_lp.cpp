#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normsurf/lp.hpp"
#include "oracles.hpp"

using namespace normsurf;

namespace {

LinearConstraint ge(QVec row, long long bound) {
    return {std::move(row), Rel::Ge, Rat(bound)};
}
LinearConstraint eq(QVec row, long long bound) {
    return {std::move(row), Rel::Eq, Rat(bound)};
}

} // namespace

TEST_CASE("contradictory pair yields the classic dual") {
    std::vector<LinearConstraint> cs{ge({Rat(1)}, 1), ge({Rat(-1)}, 0)};
    auto cert = lp_feasible(cs, 1);
    REQUIRE(!cert.feasible());
    CHECK(cert.witness == QVec{Rat(1), Rat(1)});
    CHECK(lp_certificate_valid(cs, 1, cert));
}

TEST_CASE("one-sided system is feasible at its bound") {
    std::vector<LinearConstraint> cs{ge({Rat(1)}, 1)};
    auto cert = lp_feasible(cs, 1);
    REQUIRE(cert.feasible());
    CHECK(cert.witness == QVec{Rat(1)});
    CHECK(lp_certificate_valid(cs, 1, cert));
}

TEST_CASE("equalities mix with inequalities") {
    std::vector<LinearConstraint> cs{
        ge({Rat(1), Rat(1)}, 1),
        eq({Rat(1), Rat(-1)}, 0),
        ge({Rat(1), Rat(0)}, 0),
        ge({Rat(0), Rat(1)}, 0),
    };
    auto cert = lp_feasible(cs, 2);
    REQUIRE(cert.feasible());
    CHECK(cert.witness[0] == cert.witness[1]);
    CHECK(cert.witness[0] + cert.witness[1] >= Rat(1));
    CHECK(lp_certificate_valid(cs, 2, cert));
}

TEST_CASE("simplex route handles the same systems") {
    std::vector<LinearConstraint> cs{ge({Rat(1)}, 1), ge({Rat(-1)}, 0)};
    auto cert = lp_feasible_simplex(cs, 1);
    REQUIRE(!cert.feasible());
    CHECK(lp_certificate_valid(cs, 1, cert));

    std::vector<LinearConstraint> cs2{ge({Rat(1)}, 1)};
    auto cert2 = lp_feasible_simplex(cs2, 1);
    REQUIRE(cert2.feasible());
    CHECK(lp_certificate_valid(cs2, 1, cert2));
}

TEST_CASE("wide systems dispatch to simplex") {
    // 10 unknowns: sum >= 1, each pair x_i - x_{i+1} = 0, all >= 0
    const std::size_t n = 10;
    std::vector<LinearConstraint> cs;
    QVec all(n, Rat(1));
    cs.push_back(ge(all, 1));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        QVec row(n);
        row[i] = Rat(1);
        row[i + 1] = Rat(-1);
        cs.push_back(eq(std::move(row), 0));
    }
    for (std::size_t i = 0; i < n; ++i) {
        QVec row(n);
        row[i] = Rat(1);
        cs.push_back(ge(std::move(row), 0));
    }
    auto cert = lp_feasible(cs, n);
    REQUIRE(cert.feasible());
    CHECK(lp_certificate_valid(cs, n, cert));

    // and an infeasible variant
    QVec negall(n, Rat(-1));
    cs.push_back(ge(std::move(negall), 0));
    auto cert2 = lp_feasible(cs, n);
    REQUIRE(!cert2.feasible());
    CHECK(lp_certificate_valid(cs, n, cert2));
}

TEST_CASE("random small systems agree with the naive eliminator on both routes") {
    oracles::Rng rng(0x10b5eedULL);
    int infeasible_seen = 0, feasible_seen = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        std::size_t nv = static_cast<std::size_t>(rng.range(1, 3));
        std::size_t nc = static_cast<std::size_t>(rng.range(1, 5));
        std::vector<LinearConstraint> cs;
        for (std::size_t c = 0; c < nc; ++c) {
            LinearConstraint lc;
            lc.rel = rng.range(0, 3) == 0 ? Rel::Eq : Rel::Ge;
            lc.bound = Rat(rng.range(-3, 3));
            lc.row.resize(nv);
            for (auto& x : lc.row) x = Rat(rng.range(-3, 3));
            cs.push_back(std::move(lc));
        }
        bool expect = oracles::naive_feasible(cs, nv);
        auto fm = lp_feasible_fourier_motzkin(cs, nv);
        auto sx = lp_feasible_simplex(cs, nv);
        REQUIRE(fm.feasible() == expect);
        REQUIRE(sx.feasible() == expect);
        REQUIRE(lp_certificate_valid(cs, nv, fm));
        REQUIRE(lp_certificate_valid(cs, nv, sx));
        (expect ? feasible_seen : infeasible_seen)++;
    }
    // the sample must exercise both outcomes
    CHECK(feasible_seen > 100);
    CHECK(infeasible_seen > 100);
}

TEST_CASE("sparse wide systems: the simplex route against the naive eliminator") {
    // above 8 unknowns the dispatcher runs the simplex; sparse rows keep the
    // naive eliminator tractable as an oracle there
    oracles::Rng rng(0x5a55eULL);
    int infeasible_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t nv = static_cast<std::size_t>(rng.range(9, 12));
        std::size_t nc = static_cast<std::size_t>(rng.range(3, 10));
        std::vector<LinearConstraint> cs;
        for (std::size_t c = 0; c < nc; ++c) {
            LinearConstraint lc;
            lc.rel = rng.range(0, 3) == 0 ? Rel::Eq : Rel::Ge;
            lc.bound = Rat(rng.range(-3, 3));
            lc.row.assign(nv, Rat(0));
            for (int k = 0; k < 3; ++k)
                lc.row[static_cast<std::size_t>(rng.range(0, static_cast<long long>(nv) - 1))] =
                    Rat(rng.range(-3, 3));
            cs.push_back(std::move(lc));
        }
        auto expect = oracles::naive_feasible_capped(cs, nv, 30000);
        if (!expect) continue; // this draw is too dense for the oracle
        auto got = lp_feasible(cs, nv); // simplex route at this width
        REQUIRE(got.feasible() == *expect);
        REQUIRE(lp_certificate_valid(cs, nv, got));
        if (!*expect) ++infeasible_seen;
    }
    CHECK(infeasible_seen > 20);
}

TEST_CASE("elimination and simplex agree on mid-sized systems") {
    // 4-6 unknowns: no naive oracle here, the two routes check each other and
    // every certificate is re-substituted
    oracles::Rng rng(0xc0551ULL);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t nv = static_cast<std::size_t>(rng.range(4, 6));
        std::size_t nc = static_cast<std::size_t>(rng.range(2, 8));
        std::vector<LinearConstraint> cs;
        for (std::size_t c = 0; c < nc; ++c) {
            LinearConstraint lc;
            lc.rel = rng.range(0, 3) == 0 ? Rel::Eq : Rel::Ge;
            lc.bound = Rat(rng.range(-4, 4));
            lc.row.resize(nv);
            for (auto& x : lc.row) x = Rat(rng.range(-4, 4));
            cs.push_back(std::move(lc));
        }
        auto sx = lp_feasible_simplex(cs, nv);
        // the dispatcher prefers elimination here and falls back to the
        // simplex when it blows up; either way the answers must agree
        auto dispatched = lp_feasible(cs, nv);
        REQUIRE(dispatched.feasible() == sx.feasible());
        REQUIRE(lp_certificate_valid(cs, nv, sx));
        REQUIRE(lp_certificate_valid(cs, nv, dispatched));
    }
}

TEST_CASE("malformed rows are rejected") {
    std::vector<LinearConstraint> cs{ge({Rat(1), Rat(2)}, 0)};
    CHECK_THROWS_AS(lp_feasible(cs, 1), ContractViolation);
}
