#pragma once

#include <random>
#include <string>
#include <vector>

#include "tcat/bundle.hpp"
#include "tcat/poly.hpp"
#include "tcat/weil.hpp"

namespace tcat {

// Anchored bundle on M = Q^d with fiber Q^r; rho[i][a] and C[g][a][b] are
// polynomials in the d base variables, <e_a, e_b> = sum_g C[g][a][b] e_g.
struct AlgebroidData {
    std::size_t d = 0, r = 0;
    std::vector<std::vector<Polynomial>> rho;
    std::vector<std::vector<std::vector<Polynomial>>> C;
    std::string name;
};

using Section = std::vector<Polynomial>;  // r polynomials in d variables

AlgebroidData make_algebroid(std::size_t d, std::size_t r, std::vector<std::vector<Polynomial>> rho,
                             std::vector<std::vector<std::vector<Polynomial>>> C, const std::string& name = "");
AlgebroidData zero_bracket(std::size_t d, std::size_t r);

// (x, u) -> (x, rho(x) u)
PolyMap anchor_map(const AlgebroidData& A);
// (x, u, v) -> C(x)(u, v), r components
PolyMap bracket_map(const AlgebroidData& A);

// Flat coordinates of A.V: x, then one fiber block per non-unit basis monomial of V.
struct ProlongationSpace {
    WeilAlgebra algebra;
    std::size_t dim = 0;
    std::vector<std::string> coordinates;
    // Into A_{n1} x T_{n1}(A.V') for V = W_{n1} x V' (absent for V of one factor or N).
    PolyMap embedding;
    std::vector<Polynomial> constraints;  // in the ambient coordinates
};
ProlongationSpace prolongation_space(const AlgebroidData& A, const WeilAlgebra& V);
ProlongationSpace prolongation_space(const AlgebroidData& A, const std::string& level);  // "L" or "L2"

// A.(W x V') -> T_{n1}(A.V'): base (x, u_(0,mu)), velocity (rho(x) u_(j,1), u_(j,mu)).
PolyMap embed_tangent(const AlgebroidData& A, const WeilAlgebra& V);

// W_n x h for h: A.S -> A.S' over the base.
PolyMap whisker_left_once(const AlgebroidData& A, unsigned n, const WeilAlgebra& S, const WeilAlgebra& S2,
                          const PolyMap& h);
// f x Y for f: A.X -> A.X' over the base, phi: X -> X' its Weil part.
PolyMap whisker_right(const AlgebroidData& A, const WeilMorphism& phi, const WeilAlgebra& Y, const PolyMap& f);

// Maps on L(A) = (x; u, v, w).
PolyMap lift_hat(const AlgebroidData& A);          // A -> L(A), (x,u) -> (x;0,0,u)
PolyMap l_proj0(const AlgebroidData& A);           // L(A) -> A, (x,u)
PolyMap l_proj1(const AlgebroidData& A);           // L(A) -> TA, (x,v,rho u,w)
PolyMap l_embedding(const AlgebroidData& A);       // L(A) -> A x TA
PolyMap l_retraction(const AlgebroidData& A);      // A x TA -> L(A)

// Hat and bar transport along a connection on A (defaults to trivial).
PolyMap hat_map(const AlgebroidData& A, const Connection& conn);
PolyMap bar_map(const AlgebroidData& A, const Connection& conn);
Connection default_connection(const AlgebroidData& A);

PolyMap involution_from_bracket(const AlgebroidData& A);
PolyMap involution_from_bracket(const AlgebroidData& A, const Connection& conn);
// Throws InputError when sigma does not fix x, swap (u, v), or is not bilinear.
std::vector<std::vector<std::vector<Polynomial>>> bracket_from_involution(const AlgebroidData& A, const PolyMap& sigma);
std::vector<std::vector<std::vector<Polynomial>>> bracket_from_involution(const AlgebroidData& A, const PolyMap& sigma,
                                                                         const Connection& conn);

// On L2(A) = (x, u_x, u_y, u_xy, u_z, u_xz, u_yz, u_xyz).
PolyMap sigma_times_c(const AlgebroidData& A, const PolyMap& sigma);
PolyMap one_times_T_sigma(const AlgebroidData& A, const PolyMap& sigma);

CheckReport check_structure_equations(const AlgebroidData& A);
CheckReport check_involution_axioms(const AlgebroidData& A, const PolyMap& sigma);

// {v,x} = (d_v rho)(x) on (x, v, u) and {v,x,y} = (d_v C)(x,y) on (x, v, u1, u2), trivial connections.
std::pair<PolyMap, PolyMap> derived_brackets(const AlgebroidData& A);

Section section_bracket(const AlgebroidData& A, const Section& X, const Section& Y);
Section coordinate_bracket(const AlgebroidData& A, const Section& X, const Section& Y);
Polynomial anchor_derivation(const AlgebroidData& A, const Section& X, const Polynomial& f);  // [X, f]
CheckReport check_section_laws(const AlgebroidData& A, const std::vector<Section>& samples,
                               const std::vector<Polynomial>& functions);

// Morphism A -> B over f0: M_A -> M_B with fiber matrix F (r_B x r_A, polynomials in x_A).
struct AlgebroidMorphism {
    PolyMap base;
    std::vector<std::vector<Polynomial>> fiber;
};
PolyMap morphism_map(const AlgebroidData& A, const AlgebroidData& B, const AlgebroidMorphism& f);
CheckReport check_morphism(const AlgebroidData& A, const AlgebroidData& B, const AlgebroidMorphism& f);

// Named examples: tangent1, tangent2, so3, so3-action, action, sl2-line, heisenberg, affine2, lie-bundle.
std::vector<std::string> catalog_names();
AlgebroidData catalog_algebroid(const std::string& name);
// rho' = rho g, C'(u,v) = g^{-1} C(g u, g v) for a random constant invertible g.
AlgebroidData random_basis_change(const AlgebroidData& A, std::mt19937_64& rng);
// Adds a random constant perturbation to C: symmetric (breaks alternation) or alternating.
AlgebroidData perturb_bracket(const AlgebroidData& A, bool symmetric, std::mt19937_64& rng);
Section random_section(const AlgebroidData& A, std::mt19937_64& rng, unsigned max_deg = 2);

}  // namespace tcat
