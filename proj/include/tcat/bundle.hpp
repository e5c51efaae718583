#pragma once

#include <optional>

#include "tcat/poly.hpp"

namespace tcat {

// E = M x Q^k with coordinates (m, e); TE = (m, e, dm, de).
struct TrivialBundle {
    std::size_t d = 0, k = 0;

    std::size_t total() const { return d + k; }
    PolyMap q() const;
    PolyMap xi() const;
    PolyMap lift() const;        // (m,e) -> (m,0,0,e)
    PolyMap fiber_add() const;   // E x_M E = (m,e1,e2) -> (m,e1+e2)
};

struct Lift {
    std::size_t total = 0;
    PolyMap lambda;  // E -> TE
};

// a: (t, e) -> e, the scalar t is variable 1.
struct ScalarAction {
    std::size_t total = 0;
    PolyMap a;
};

struct Connection {
    TrivialBundle bundle;
    PolyMap kappa;  // TE -> E
    PolyMap nabla;  // E x_M TM = (m, e, dm) -> TE
};

std::string validate_action(const ScalarAction& a);
Lift euler_vector_field(const ScalarAction& a);
CheckReport check_lift(const Lift& l);

// mu: E x_M E -> TE and nu: TM x_M E -> TE built from the lift.
PolyMap bundle_mu(const TrivialBundle& b, const PolyMap& lambda);
PolyMap bundle_nu(const TrivialBundle& b, const PolyMap& lambda);
CheckReport check_universality(const TrivialBundle& b, const std::optional<PolyMap>& lambda = std::nullopt);

Connection make_connection(const TrivialBundle& b, const PolyMap& kappa, const PolyMap& nabla);
Connection trivial_connection(const TrivialBundle& b);
CheckReport check_connection(const Connection& c);

}  // namespace tcat
