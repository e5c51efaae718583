#include <doctest.h>

#include <random>

#include "tcat/tangent.hpp"
#include "tcat/wterm.hpp"

using namespace tcat;

TEST_CASE("T f is (f, J_f v)")
{
    PolyMap f = PolyMap::parse({"x1^2*x2", "x1 - x2^3"}, 2);
    // blocks: (x1, x2, v1, v2) -> (f, J v)
    PolyMap want = PolyMap::parse({"x1^2*x2", "x1 - x2^3", "2*x1*x2*x3 + x1^2*x4", "x3 - 3*x2^2*x4"}, 4);
    CHECK(tangent(f) == want);
    CHECK(weil_prolong(WeilAlgebra({1}), f) == want);
}

TEST_CASE("second order prolongation by hand")
{
    // T^{W2} of x^3: (x, a, b) -> (x^3, 3x^2 a, 3x^2 b) since a b = a^2 = b^2 = 0
    PolyMap f = PolyMap::parse({"x1^3"}, 1);
    CHECK(weil_prolong(WeilAlgebra({2}), f) == PolyMap::parse({"x1^3", "3*x1^2*x2", "3*x1^2*x3"}, 3));
    // T^{W*W}: the xy coefficient picks up f''
    PolyMap g = weil_prolong(WeilAlgebra({1, 1}), f);
    CHECK(g.comps[3] == Polynomial::parse("3*x1^2*x4 + 6*x1*x2*x3", 4));
}

TEST_CASE("mu map shape")
{
    CHECK(mu_map(1) == PolyMap::parse({"x1", "x2", "0", "x3"}, 3));
}

TEST_CASE("axioms at small n")
{
    std::mt19937_64 rng(41);
    for (std::size_t n = 1; n <= 2; ++n) {
        std::vector<PolyMap> sample = {random_map(rng, n, n, 2, 3), random_map(rng, n, n, 3, 2)};
        CheckReport r = check_tangent_axioms(n, sample);
        INFO(r.to_text());
        CHECK(r.ok());
    }
}

TEST_CASE("strictness and naturality on random data")
{
    std::mt19937_64 rng(42);
    const std::vector<WeilAlgebra> algs = {WeilAlgebra({1}), WeilAlgebra({2}), WeilAlgebra({1, 1})};
    for (int k = 0; k < 12; ++k) {
        PolyMap f = random_map(rng, 1 + k % 2, 1 + (k / 2) % 2, 2, 3);
        CHECK(check_strictness(algs[k % 3], algs[(k / 3) % 3], f).ok());
        CHECK(check_naturality(generator(GenKind::Ell), f).ok());
        CHECK(check_naturality(generator(GenKind::Flip), f).ok());
    }
}

TEST_CASE("structure maps are the relabelings of the generators")
{
    for (GenKind g : {GenKind::P, GenKind::Zero, GenKind::Plus, GenKind::Ell, GenKind::Flip})
        CHECK(structure_nat(g, 2) == relabel(generator(g), 2));
}

TEST_CASE("products are preserved")
{
    std::mt19937_64 rng(43);
    PolyMap f = random_map(rng, 2, 1, 2, 3), g = random_map(rng, 1, 2, 2, 3);
    CHECK(check_product_preservation(WeilAlgebra({1, 1}), f, g).ok());
}

TEST_CASE("transverse squares go to pullbacks")
{
    auto sqs = enumerate_squares(8);
    REQUIRE_FALSE(sqs.empty());
    for (const auto& sq : sqs)
        CHECK(check_transverse(sq, 1).ok());
}
