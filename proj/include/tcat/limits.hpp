#pragma once

#include <string>

#include "tcat/poly.hpp"

namespace tcat {

// Outcome of certifying that a cone is a limit: K = comparison into the ambient
// product, P = common zero set of the equations. ok means K is a bijection onto P
// with explicit inverse `retraction` (restricted to P).
struct LimitResult {
    bool ok = false;
    std::string witness;
    PolyMap retraction;
    PolyMap parametrization;
};

LimitResult certify_limit(const PolyMap& K, const std::vector<Polynomial>& equations);

// Square with apex S: top: S -> B, left: S -> C, right: B -> D, bottom: C -> D.
LimitResult certify_pullback(const PolyMap& top, const PolyMap& left, const PolyMap& right, const PolyMap& bottom);

// e: S -> Y equalizes f, g: Y -> Z universally.
LimitResult certify_equalizer(const PolyMap& e, const PolyMap& f, const PolyMap& g);

// Solve equations = 0 by successive elimination of variables occurring linearly with
// constant coefficient; returns a parametrization by the remaining free coordinates.
bool parametrize(std::size_t nvars, std::vector<Polynomial> equations, PolyMap& param, std::string& witness);

}  // namespace tcat
