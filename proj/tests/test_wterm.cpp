#include <doctest.h>

#include <random>

#include "tcat/tangent.hpp"
#include "tcat/wterm.hpp"

using namespace tcat;

TEST_CASE("fixed equation list holds")
{
    const auto& eqs = tangent_equations();
    CHECK(eqs.size() == 12);
    for (const auto& e : eqs) {
        INFO(e.name);
        CHECK(terms_equal(parse_term(e.lhs), parse_term(e.rhs)));
    }
}

TEST_CASE("equality decisions")
{
    CHECK(terms_equal(parse_term("c . l"), parse_term("l")));
    CHECK(terms_equal(parse_term("c . c"), parse_term("id{W*W}")));
    CHECK_FALSE(terms_equal(parse_term("c"), parse_term("id{W*W}")));
    CHECK_FALSE(terms_equal(parse_term("l"), parse_term("(id{W} * 0) . 0 . p")));
    CHECK_THROWS_AS(terms_equal(parse_term("p"), parse_term("0")), InputError);
}

TEST_CASE("typing")
{
    TermPtr t = parse_term("(l * id{W}) . l");
    CHECK(t->src == WeilAlgebra({1}));
    CHECK(t->tgt == WeilAlgebra({1, 1, 1}));
    CHECK(parse_term("+")->src == WeilAlgebra({2}));
    CHECK_THROWS_AS(parse_term("l . l"), InputError);
    CHECK_THROWS_AS(parse_term("c . (l"), InputError);
    CHECK_THROWS_AS(parse_term("q"), InputError);
}

TEST_CASE("print then parse is the identity on random terms")
{
    std::mt19937_64 rng(31);
    for (int k = 0; k < 100; ++k) {
        auto pr = random_equal_pair(rng, 16);
        for (const auto& t : {pr.first, pr.second}) {
            TermPtr back = parse_term(print_term(t));
            CHECK(same_tree(back, t));
        }
    }
}

TEST_CASE("random equal pairs have equal denotations")
{
    std::mt19937_64 rng(32);
    int distinct = 0;
    for (int k = 0; k < 100; ++k) {
        auto [a, b] = random_equal_pair(rng, 16);
        CHECK(terms_equal(a, b));
        distinct += !same_tree(a, b);
    }
    CHECK(distinct > 50);
}

TEST_CASE("denotation is functorial")
{
    std::mt19937_64 rng(33);
    for (int k = 0; k < 50; ++k) {
        TermPtr f = random_term_from(rng, WeilAlgebra({1}), 3, 16);
        TermPtr g = random_term_from(rng, f->tgt, 3, 16);
        CHECK(eval_weil(make_compose(g, f)) == compose_morphisms(eval_weil(g), eval_weil(f)));
        TermPtr h = random_term_from(rng, WeilAlgebra({1}), 2, 4);
        CHECK(eval_weil(make_tensor(f, h)) == tensor_morphisms(eval_weil(f), eval_weil(h)));
    }
}

TEST_CASE("c-free terms reach every small morphism out of W_n")
{
    std::size_t found = 0, total = 0;
    for (unsigned n = 1; n <= 2; ++n)
        for (const char* v : {"W", "W*W", "W2"}) {
            WeilAlgebra V = WeilAlgebra::parse(v);
            for (const auto& phi : enumerate_morphisms(n, V, 1)) {
                ++total;
                TermPtr t = synthesize_c_free(phi);
                if (!t)
                    continue;
                ++found;
                CHECK_FALSE(contains_gen(t, GenKind::Flip));
                CHECK(eval_weil(t) == phi);
            }
        }
    CHECK(total > 0);
    CHECK(found == total);
}

TEST_CASE("lift in the polynomial model at n = 1")
{
    // (m, x) -> (m, 0, 0, x)
    PolyMap l = eval_model(parse_term("l"), TangentModel(1));
    CHECK(l == PolyMap::parse({"x1", "0", "0", "x2"}, 2));
    PolyMap id = eval_model(parse_term("id{W}"), TangentModel(2));
    CHECK(id == PolyMap::identity(4));
}
