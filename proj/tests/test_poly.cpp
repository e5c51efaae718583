#include <doctest.h>

#include <random>

#include "tcat/poly.hpp"

using namespace tcat;

namespace {

Polynomial P(const std::string& s, std::size_t n) { return Polynomial::parse(s, n); }

std::vector<Rat> random_point(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
    std::vector<Rat> pt;
    for (std::size_t i = 0; i < n; ++i)
        pt.emplace_back(num(rng), den(rng));
    for (auto& q : pt)
        q.canonicalize();
    return pt;
}

}  // namespace

TEST_CASE("binomial square expands")
{
    Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    Polynomial s = (x + y).pow(2);
    CHECK(s == P("x1^2 + 2*x1*x2 + x2^2", 2));
    CHECK(s.degree() == 2);
    CHECK((s - s).is_zero());
}

TEST_CASE("parse and print round trip")
{
    for (const char* s : {"0", "1", "-3/4*x1^2*x3 + x2 - 7", "x1*x2*x3 + 1/2", "(x1 + 1)^3"}) {
        Polynomial p = P(s, 3);
        CHECK(P(p.str(), 3) == p);
    }
}

TEST_CASE("parse reports the failing position")
{
    try {
        P("x1 + * x2", 2);
        FAIL("no error");
    } catch (const InputError& e) {
        CHECK(e.pos != std::string::npos);
    }
    CHECK_THROWS_AS(P("x3", 2), InputError);
}

TEST_CASE("power rule by hand")
{
    Polynomial p = P("x1^3*x2 - 5*x1*x2^2 + 2", 2);
    CHECK(p.derivative(0) == P("3*x1^2*x2 - 5*x2^2", 2));
    CHECK(p.derivative(1) == P("x1^3 - 10*x1*x2", 2));
}

TEST_CASE("evaluation is a ring map on random points")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        Polynomial p = random_polynomial(rng, 3, 3, 4), q = random_polynomial(rng, 3, 3, 4);
        auto pt = random_point(rng, 3);
        CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
        CHECK((p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt));
    }
}

TEST_CASE("differential equals the first order term of f(x + t v)")
{
    // Oracle: substitute x + t v and read the coefficient of t, no derivatives involved.
    std::mt19937_64 rng(12);
    for (int k = 0; k < 30; ++k) {
        std::size_t n = 1 + k % 3, m = 1 + (k / 3) % 3;
        PolyMap f = random_map(rng, n, m, 3, 3);
        PolyMap Df = differential(f);
        std::size_t nv = 2 * n + 1;  // x, v, t
        Polynomial t = Polynomial::variable(nv, 2 * n);
        std::vector<Polynomial> shifted;
        for (std::size_t i = 0; i < n; ++i)
            shifted.push_back(Polynomial::variable(nv, i) + t * Polynomial::variable(nv, n + i));
        for (std::size_t j = 0; j < m; ++j) {
            Polynomial s = f.comps[j].substitute(shifted, nv);
            Polynomial lin(2 * n);
            for (const auto& [e, c] : s.terms())
                if (e[2 * n] == 1) {
                    Exponent e2(e.begin(), e.begin() + 2 * n);
                    lin.add_term(e2, c);
                }
            CHECK(Df.comps[j] == lin);
        }
    }
}

TEST_CASE("composition is associative and agrees with pointwise evaluation")
{
    std::mt19937_64 rng(13);
    for (int k = 0; k < 20; ++k) {
        PolyMap f = random_map(rng, 2, 2, 2, 3), g = random_map(rng, 2, 3, 2, 3), h = random_map(rng, 3, 1, 2, 3);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        auto pt = random_point(rng, 2);
        std::vector<Rat> fx;
        for (const auto& c : f.comps)
            fx.push_back(c.evaluate(pt));
        CHECK(compose(g, f).comps[0].evaluate(pt) == g.comps[0].evaluate(fx));
    }
}

TEST_CASE("linearity detection")
{
    CHECK(is_linear(PolyMap::parse({"x1 + 2*x2", "-x2"}, 2)));
    CHECK_FALSE(is_linear(PolyMap::parse({"x1*x2"}, 2)));
    CHECK_FALSE(is_linear(PolyMap::parse({"x1 + 1"}, 2)));
}

TEST_CASE("differential axioms hold on random maps")
{
    std::mt19937_64 rng(14);
    std::vector<PolyMap> sample;
    for (int k = 0; k < 40; ++k)
        sample.push_back(random_map(rng, 1 + k % 3, 1 + (k / 3) % 3, 3, 3));
    CheckReport r = check_cdc_axioms(sample, 14);
    CHECK(r.ok());
    CHECK(r.verdicts().size() == 7);
}

#include "tcat/linalg.hpp"

TEST_CASE("inverse and kernel over the rationals")
{
    Matrix a = {{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
    auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(matmul(a, *inv, 2) == identity_matrix(2));
    Matrix s = {{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}};
    CHECK(rank(s, 3) == 1);
    auto ker = kernel(s, 3);
    CHECK(ker.size() == 2);
    for (const auto& v : ker)
        CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
    CHECK_FALSE(inverse(s.size() == 2 ? Matrix{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}} : s));
}
