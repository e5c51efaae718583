#include <doctest.h>

#include <random>

#include "tcat/algebroid.hpp"

using namespace tcat;

namespace {

// [X, Y]^g = rho^i_a (X^a d_i Y^g - Y^a d_i X^g) + C^g_ab X^a Y^b, written out directly.
Section bracket_oracle(const AlgebroidData& A, const Section& X, const Section& Y)
{
    Section out(A.r, Polynomial(A.d));
    for (std::size_t g = 0; g < A.r; ++g) {
        for (std::size_t a = 0; a < A.r; ++a)
            for (std::size_t i = 0; i < A.d; ++i)
                out[g] += A.rho[i][a] * (X[a] * Y[g].derivative(i) - Y[a] * X[g].derivative(i));
        for (std::size_t a = 0; a < A.r; ++a)
            for (std::size_t b = 0; b < A.r; ++b)
                out[g] += A.C[g][a][b] * X[a] * Y[b];
    }
    return out;
}

// Cyclic Jacobi sum of a constant bracket, index by index.
bool jacobi_constant(const AlgebroidData& A)
{
    auto c = [&](std::size_t g, std::size_t a, std::size_t b) { return A.C[g][a][b].constant_term(); };
    for (std::size_t a = 0; a < A.r; ++a)
        for (std::size_t b = 0; b < A.r; ++b)
            for (std::size_t e = 0; e < A.r; ++e)
                for (std::size_t n = 0; n < A.r; ++n) {
                    Rat s = 0;
                    for (std::size_t m = 0; m < A.r; ++m)
                        s += c(m, b, e) * c(n, a, m) + c(m, e, a) * c(n, b, m) + c(m, a, b) * c(n, e, m);
                    if (s != 0)
                        return false;
                }
    return true;
}

Section unit_section(std::size_t r, std::size_t i)
{
    Section s(r, Polynomial(0));
    s[i] = Polynomial::constant(0, 1);
    return s;
}

AlgebroidData bianchi_breaker()
{
    // [e1,e2] = e1, [e1,e3] = e2, [e2,e3] = e1
    AlgebroidData A = zero_bracket(0, 3);
    auto set = [&](std::size_t a, std::size_t b, std::size_t g) {
        A.C[g][a][b] = Polynomial::constant(0, 1);
        A.C[g][b][a] = Polynomial::constant(0, -1);
    };
    set(0, 1, 0);
    set(0, 2, 1);
    set(1, 2, 0);
    return A;
}

}  // namespace

TEST_CASE("catalog passes both sides")
{
    for (const auto& name : catalog_names()) {
        INFO(name);
        AlgebroidData A = catalog_algebroid(name);
        CHECK(check_structure_equations(A).ok());
        CHECK(check_involution_axioms(A, involution_from_bracket(A)).ok());
    }
}

TEST_CASE("so3 bracket")
{
    AlgebroidData A = catalog_algebroid("so3");
    CHECK(jacobi_constant(A));
    CHECK(section_bracket(A, unit_section(3, 0), unit_section(3, 1)) == unit_section(3, 2));
    CHECK(section_bracket(A, unit_section(3, 1), unit_section(3, 2)) == unit_section(3, 0));
    CHECK(section_bracket(A, unit_section(3, 2), unit_section(3, 0)) == unit_section(3, 1));
}

TEST_CASE("broken Jacobi fails Bianchi and Yang-Baxter together")
{
    AlgebroidData A = bianchi_breaker();
    CHECK_FALSE(jacobi_constant(A));
    CheckReport se = check_structure_equations(A);
    CHECK(se.passed("alternating"));
    CHECK(se.passed("Leibniz"));
    CHECK_FALSE(se.passed("Bianchi"));
    CHECK_FALSE(se.find("Bianchi")->witness.empty());
    CheckReport ia = check_involution_axioms(A, involution_from_bracket(A));
    CHECK(ia.passed("(i) involution"));
    CHECK_FALSE(ia.passed("(v) Yang-Baxter"));
}

TEST_CASE("Bianchi agrees with the Jacobi oracle on random constant brackets")
{
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> dist(-1, 1);
    int passing = 0;
    for (int k = 0; k < 30; ++k) {
        AlgebroidData A = zero_bracket(0, 3);
        for (std::size_t g = 0; g < 3; ++g)
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = a + 1; b < 3; ++b) {
                    int v = dist(rng);
                    A.C[g][a][b] = Polynomial::constant(0, v);
                    A.C[g][b][a] = Polynomial::constant(0, -v);
                }
        bool j = jacobi_constant(A);
        passing += j;
        CHECK(check_structure_equations(A).passed("Bianchi") == j);
    }
    CHECK(passing > 0);
}

TEST_CASE("section bracket matches the written-out formula")
{
    std::mt19937_64 rng(52);
    for (const auto& name : catalog_names()) {
        AlgebroidData A = catalog_algebroid(name);
        for (int k = 0; k < 5; ++k) {
            Section X = random_section(A, rng), Y = random_section(A, rng);
            INFO(name);
            CHECK(section_bracket(A, X, Y) == bracket_oracle(A, X, Y));
        }
    }
}

TEST_CASE("involution and bracket determine each other")
{
    std::mt19937_64 rng(53);
    for (const auto& name : catalog_names()) {
        AlgebroidData A = random_basis_change(catalog_algebroid(name), rng);
        PolyMap s = involution_from_bracket(A);
        CHECK(compose(s, s) == PolyMap::identity(s.src));
        CHECK(bracket_from_involution(A, s) == A.C);
        Connection conn = default_connection(A);
        CHECK(bracket_from_involution(A, involution_from_bracket(A, conn), conn) == A.C);
    }
}

TEST_CASE("non-involutions are rejected")
{
    AlgebroidData A = catalog_algebroid("so3");
    PolyMap id = PolyMap::identity(prolongation_space(A, "L").dim);
    CHECK_THROWS_AS(bracket_from_involution(A, id), InputError);
}

TEST_CASE("basis changes keep the structure equations")
{
    std::mt19937_64 rng(54);
    for (int k = 0; k < 10; ++k) {
        auto names = catalog_names();
        AlgebroidData A = random_basis_change(catalog_algebroid(names[k % names.size()]), rng);
        CHECK(check_structure_equations(A).ok());
    }
}

TEST_CASE("symmetric perturbations break alternation and axiom (i)")
{
    std::mt19937_64 rng(55);
    AlgebroidData A = perturb_bracket(catalog_algebroid("heisenberg"), true, rng);
    CHECK_FALSE(check_structure_equations(A).passed("alternating"));
    CHECK_FALSE(check_involution_axioms(A, involution_from_bracket(A)).passed("(i) involution"));
}

TEST_CASE("section laws")
{
    std::mt19937_64 rng(56);
    for (const char* name : {"so3-action", "sl2-line", "affine2"}) {
        AlgebroidData A = catalog_algebroid(name);
        std::vector<Section> xs;
        for (int k = 0; k < 3; ++k)
            xs.push_back(random_section(A, rng));
        CheckReport r = check_section_laws(A, xs, {random_polynomial(rng, A.d, 2, 3)});
        INFO(r.to_text());
        CHECK(r.ok());
    }
}

TEST_CASE("identity morphism")
{
    for (const char* name : {"so3", "action", "sl2-line"}) {
        AlgebroidData A = catalog_algebroid(name);
        AlgebroidMorphism id{PolyMap::identity(A.d), {}};
        for (std::size_t a = 0; a < A.r; ++a) {
            id.fiber.emplace_back();
            for (std::size_t b = 0; b < A.r; ++b)
                id.fiber.back().push_back(Polynomial::constant(A.d, a == b ? 1 : 0));
        }
        CHECK(check_morphism(A, A, id).ok());
        CHECK(morphism_map(A, A, id) == PolyMap::identity(A.d + A.r));
    }
}

TEST_CASE("anchor must intertwine for a morphism")
{
    AlgebroidData T = catalog_algebroid("tangent1");
    AlgebroidMorphism twice{PolyMap::identity(1), {{Polynomial::constant(1, 2)}}};
    CHECK_FALSE(check_morphism(T, T, twice).ok());
}

TEST_CASE("malformed data is an input error")
{
    CHECK_THROWS_AS(make_algebroid(1, 2, {{Polynomial(1)}}, {}), InputError);
}
