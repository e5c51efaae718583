#pragma once

#include "tcat/poly.hpp"
#include "tcat/weil.hpp"
#include "tcat/wterm.hpp"

namespace tcat {

// T^V f: substitute V-valued points and read off each basis coefficient.
// Coordinates of T^V n: block mu (basis order of V) of n entries, index mu*n + i.
PolyMap weil_prolong(const WeilAlgebra& v, const PolyMap& f);

// Component at object n of the transformation T^V -> T^U induced by phi: V -> U.
PolyMap relabel(const WeilMorphism& phi, std::size_t n);
PolyMap structure_nat(GenKind kind, std::size_t n);

PolyMap tangent(const PolyMap& f);  // T f

// Pairing into T_2 n over n: (p f, vertical part of f, vertical part of g).
PolyMap pair_over_base(const PolyMap& f, const PolyMap& g, std::size_t n);

// The comparison T_2 n -> T^2 n, (m,a,b) -> (m,a,0,b), built as T.+ after a relabeling.
PolyMap mu_map(std::size_t n);

// Permutation T^V(n+m) -> T^V n x T^V m.
PolyMap interleave(const WeilAlgebra& v, std::size_t n, std::size_t m);

class TangentModel : public ModelInterface {
public:
    explicit TangentModel(std::size_t n) : n_(n) {}
    std::size_t object_dim(const WeilAlgebra& v) const override { return n_ * v.dim(); }
    PolyMap eval_generator(const WTerm& node) const override;
    PolyMap eval_tensor(const WTerm& node) const override;
    PolyMap eval_pair(const WTerm& node, const PolyMap& a, const PolyMap& b) const override;

private:
    std::size_t n_;
};

CheckReport check_tangent_axioms(std::size_t n, const std::vector<PolyMap>& sample);
CheckReport check_naturality(const WeilMorphism& phi, const PolyMap& f);
// T^{U x V} f against T^V(T^U f).
CheckReport check_strictness(const WeilAlgebra& u, const WeilAlgebra& v, const PolyMap& f);
CheckReport check_transverse(const TransverseSquare& sq, std::size_t n);
CheckReport check_product_preservation(const WeilAlgebra& v, const PolyMap& f, const PolyMap& g);

}  // namespace tcat
