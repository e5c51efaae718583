#include <doctest.h>

#include <random>

#include "tcat/report.hpp"
#include "tcat/weil.hpp"

using namespace tcat;

namespace {

WeilElement random_element(std::mt19937_64& rng, const WeilAlgebra& a)
{
    std::uniform_int_distribution<int> c(0, 6);
    WeilElement e(a);
    for (std::size_t i = 0; i < a.dim(); ++i)
        e.add(i, c(rng));
    return e;
}

}  // namespace

TEST_CASE("dimensions and basis order")
{
    CHECK(WeilAlgebra().dim() == 1);
    CHECK(WeilAlgebra({3}).dim() == 4);
    CHECK(WeilAlgebra({1, 1}).dim() == 4);
    CHECK(WeilAlgebra({2, 1}).dim() == 6);
    WeilAlgebra ww({1, 1});
    CHECK(ww.monomial_name(1) == "x");
    CHECK(ww.monomial_name(2) == "y");
    CHECK(ww.monomial_name(3) == "xy");
    CHECK(ww.multiply(1, 2) == std::optional<std::size_t>(3));
    CHECK_FALSE(ww.multiply(1, 1));
    CHECK_FALSE(WeilAlgebra({2}).multiply(1, 2));
}

TEST_CASE("algebra text round trip")
{
    for (const char* s : {"N", "W", "W2", "W*W", "W2*W*W3"}) {
        WeilAlgebra a = WeilAlgebra::parse(s);
        CHECK(WeilAlgebra::parse(a.str()) == a);
    }
    CHECK(WeilAlgebra::parse("W2*W") == WeilAlgebra({2, 1}));
    CHECK_THROWS_AS(WeilAlgebra::parse("W*"), InputError);
}

TEST_CASE("generators act on elements")
{
    WeilAlgebra N, W({1}), W2({2}), WW({1, 1});
    // a + b x -> a + b xy
    CHECK(generator(GenKind::Ell).apply(WeilElement::parse(W, "3 + 5x")) == WeilElement::parse(WW, "3 + 5xy"));
    // a0 + a1 x1 + a2 x2 -> a0 + (a1 + a2) x
    CHECK(generator(GenKind::Plus).apply(WeilElement::parse(W2, "2 + 3x1 + 4x2")) == WeilElement::parse(W, "2 + 7x"));
    CHECK(generator(GenKind::Flip).apply(WeilElement::parse(WW, "1 + 2x + 3y + 4xy")) ==
          WeilElement::parse(WW, "1 + 3x + 2y + 4xy"));
    CHECK(generator(GenKind::P).apply(WeilElement::parse(W, "6 + 7x")) == WeilElement::parse(N, "6"));
    CHECK(generator(GenKind::Zero).apply(WeilElement::parse(N, "9")) == WeilElement::parse(W, "9"));
}

TEST_CASE("generators are algebra homomorphisms")
{
    std::mt19937_64 rng(21);
    std::vector<WeilMorphism> gens = {generator(GenKind::Ell), generator(GenKind::Plus), generator(GenKind::Flip),
                                      generator(GenKind::P), generator(GenKind::Zero), vertical_lift_mu(),
                                      whisker(WeilAlgebra({1}), generator(GenKind::Ell), WeilAlgebra({2}))};
    for (const auto& g : gens) {
        CHECK(g.validation_error().empty());
        for (int k = 0; k < 10; ++k) {
            WeilElement a = random_element(rng, g.source()), b = random_element(rng, g.source());
            CHECK(g.apply(element_mul(a, b)) == element_mul(g.apply(a), g.apply(b)));
            CHECK(g.apply(a + b) == g.apply(a) + g.apply(b));
        }
    }
}

TEST_CASE("non-nilpotent images are rejected")
{
    WeilAlgebra W({1});
    WeilMorphism bad(W, W, {WeilElement::parse(W, "1 + x")});
    CHECK_FALSE(bad.validation_error().empty());
    WeilMorphism ok(WeilAlgebra({2}), W, {WeilElement::parse(W, "x"), WeilElement::parse(W, "2x")});
    CHECK(ok.validation_error().empty());
}

TEST_CASE("composition acts as function composition")
{
    std::mt19937_64 rng(22);
    WeilMorphism l = generator(GenKind::Ell), c = generator(GenKind::Flip);
    WeilMorphism cl = compose_morphisms(c, l);
    for (int k = 0; k < 10; ++k) {
        WeilElement e = random_element(rng, WeilAlgebra({1}));
        CHECK(cl.apply(e) == c.apply(l.apply(e)));
    }
    CHECK(morphisms_equal(cl, l));
    CHECK(morphisms_equal(compose_morphisms(c, c), identity_morphism(WeilAlgebra({1, 1}))));
}

TEST_CASE("transverse squares commute")
{
    auto sqs = enumerate_squares(16);
    CHECK(sqs.size() > 10);
    for (const auto& sq : sqs) {
        CHECK(sq.commutes());
        CHECK(sq.total_dimension() <= 16);
    }
    CHECK(parse_square("vertical-lift").commutes());
}
