#include <doctest.h>

#include <random>

#include "tcat/nerve.hpp"
#include "tcat/tangent.hpp"

using namespace tcat;

TEST_CASE("object dimensions")
{
    AlgebroidData A = catalog_algebroid("so3-action");
    for (const char* v : {"N", "W", "W2", "W*W", "W*W*W"}) {
        WeilAlgebra V = WeilAlgebra::parse(v);
        CHECK(nerve_object(A, V).dim == A.d + (V.dim() - 1) * A.r);
    }
}

TEST_CASE("nerve of the tangent algebroid is the tangent model")
{
    std::mt19937_64 rng(61);
    for (const char* name : {"tangent1", "tangent2"}) {
        AlgebroidData A = catalog_algebroid(name);
        TangentModel T(A.d);
        for (int k = 0; k < 15; ++k) {
            auto [a, b] = random_equal_pair(rng, 16);
            CHECK(nerve_eval(A, a) == eval_model(a, T));
        }
    }
}

TEST_CASE("flip goes to the involution")
{
    AlgebroidData A = catalog_algebroid("so3");
    CHECK(nerve_eval(A, parse_term("c")) == involution_from_bracket(A));
    CHECK(nerve_eval(A, parse_term("l")) == lift_hat(A));
}

TEST_CASE("equal terms give equal nerve images")
{
    std::mt19937_64 rng(62);
    std::vector<std::pair<TermPtr, TermPtr>> pairs;
    for (int k = 0; k < 20; ++k)
        pairs.push_back(random_equal_pair(rng, 16));
    for (const char* name : {"so3", "affine2"}) {
        NerveModel m(catalog_algebroid(name));
        CHECK(check_functoriality(m, pairs, rng).ok());
    }
}

TEST_CASE("a broken bracket breaks the Yang-Baxter image")
{
    AlgebroidData A = zero_bracket(0, 3);
    auto set = [&](std::size_t a, std::size_t b, std::size_t g) {
        A.C[g][a][b] = Polynomial::constant(0, 1);
        A.C[g][b][a] = Polynomial::constant(0, -1);
    };
    set(0, 1, 0);
    set(0, 2, 1);
    set(1, 2, 0);
    TermPtr lhs = parse_term("(c * id{W}) . (id{W} * c) . (c * id{W})");
    TermPtr rhs = parse_term("(id{W} * c) . (c * id{W}) . (id{W} * c)");
    CHECK(terms_equal(lhs, rhs));
    CHECK(nerve_eval(A, lhs) != nerve_eval(A, rhs));
}

TEST_CASE("projection squares are cartesian")
{
    for (const char* name : {"so3", "action", "affine2"}) {
        AlgebroidData A = catalog_algebroid(name);
        CHECK(check_cartesian_p(A).ok());
        CHECK_FALSE(check_cartesian_p(A, true).ok());
    }
}

TEST_CASE("prolongation of the tangent algebroid")
{
    AlgebroidData L = lie_tangent(catalog_algebroid("tangent1"));
    AlgebroidData T = catalog_algebroid("tangent2");
    CHECK(L.d == T.d);
    CHECK(L.r == T.r);
    CHECK(L.rho == T.rho);
    CHECK(L.C == T.C);
}

TEST_CASE("prolongation table and checks")
{
    for (const char* name : {"so3", "sl2-line", "lie-bundle"}) {
        AlgebroidData A = catalog_algebroid(name);
        CHECK(check_lie_tangent_table(A).ok());
        AlgebroidData L = lie_tangent(A);
        CHECK(check_structure_equations(L).ok());
        CHECK(check_involution_axioms(L, involution_from_bracket(L)).ok());
    }
}

TEST_CASE("sections are morphisms into the prolongation")
{
    std::mt19937_64 rng(63);
    for (const char* name : {"action", "so3-action", "affine2"}) {
        AlgebroidData A = catalog_algebroid(name);
        for (int k = 0; k < 3; ++k) {
            Section X = random_section(A, rng);
            CheckReport r = check_section_bijection(A, X);
            INFO(r.to_text());
            CHECK(r.ok());
        }
    }
}
