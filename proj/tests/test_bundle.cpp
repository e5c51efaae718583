#include <doctest.h>

#include "tcat/bundle.hpp"

using namespace tcat;

namespace {

ScalarAction power_action(const TrivialBundle& b, const std::string& scalar)
{
    std::vector<std::string> names{"t"};
    for (const auto& s : default_names(b.total()))
        names.push_back(s);
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < b.total(); ++i) {
        std::string x = "x" + std::to_string(i + 1);
        c.push_back(Polynomial::parse(i < b.d ? x : scalar + "*" + x, names));
    }
    return ScalarAction{b.total(), PolyMap(b.total() + 1, c)};
}

}  // namespace

TEST_CASE("canonical lift of a small bundle")
{
    TrivialBundle b{1, 1};
    CHECK(b.lift() == PolyMap::parse({"x1", "0", "0", "x2"}, 2));
    CHECK(check_lift(Lift{2, b.lift()}).ok());
    CHECK(check_universality(b).ok());
}

TEST_CASE("Euler field of the scaling action is the canonical lift")
{
    for (std::size_t d = 0; d <= 2; ++d)
        for (std::size_t k = 1; k <= 2; ++k) {
            TrivialBundle b{d, k};
            ScalarAction a = power_action(b, "t");
            CHECK(validate_action(a).empty());
            CHECK(euler_vector_field(a).lambda == b.lift());
        }
}

TEST_CASE("squared scaling gives a singular lift")
{
    TrivialBundle b{1, 1};
    Lift l = euler_vector_field(power_action(b, "t^2"));
    CHECK(l.lambda == PolyMap::parse({"x1", "0", "0", "0"}, 2));
    CHECK(check_lift(l).ok());
    CHECK_FALSE(check_universality(b, l.lambda).ok());
}

TEST_CASE("a doubled lift fails")
{
    // doubling the lift breaks coassociativity
    Lift bad{2, PolyMap::parse({"x1", "0", "0", "2*x2"}, 2)};
    CHECK_FALSE(check_lift(bad).ok());
}

TEST_CASE("connections")
{
    TrivialBundle b{1, 2};
    CHECK(check_connection(trivial_connection(b)).ok());
    // kappa that ignores the vertical part is not a retraction of the lift
    PolyMap kappa = PolyMap::parse({"x1", "x2", "x3"}, 6);
    PolyMap nabla = trivial_connection(b).nabla;
    CHECK_FALSE(check_connection(make_connection(b, kappa, nabla)).ok());
}
