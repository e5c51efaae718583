#pragma once

#include <random>
#include <vector>

#include "tcat/algebroid.hpp"
#include "tcat/wterm.hpp"

namespace tcat {

// The algebroid as a model of the term language: V -> A.V.
class NerveModel : public ModelInterface {
public:
    explicit NerveModel(AlgebroidData A);
    NerveModel(AlgebroidData A, PolyMap sigma);

    const AlgebroidData& algebroid() const { return A_; }
    const PolyMap& involution() const { return sigma_; }

    std::size_t object_dim(const WeilAlgebra& v) const override { return A_.d + (v.dim() - 1) * A_.r; }
    PolyMap eval_generator(const WTerm& node) const override;
    PolyMap eval_tensor(const WTerm& node) const override;
    PolyMap eval_pair(const WTerm& node, const PolyMap& a, const PolyMap& b) const override;

private:
    AlgebroidData A_;
    PolyMap sigma_;
};

ProlongationSpace nerve_object(const AlgebroidData& A, const WeilAlgebra& V);
// U x h for h: A.S -> A.S2.
PolyMap left_whisker(const AlgebroidData& A, const WeilAlgebra& U, const WeilAlgebra& S, const WeilAlgebra& S2,
                     const PolyMap& h);
// A.(left x g x right) for a generator g; kind Proj uses (i, n), Id and Bang use annot.
PolyMap nerve_generator_map(const AlgebroidData& A, GenKind kind, const WeilAlgebra& left, const WeilAlgebra& right,
                            unsigned i = 0, unsigned n = 0, const WeilAlgebra& annot = WeilAlgebra());
PolyMap nerve_eval(const AlgebroidData& A, const TermPtr& t);
PolyMap nerve_eval(const NerveModel& m, const TermPtr& t);

CheckReport check_functoriality(const NerveModel& m, const std::vector<std::pair<TermPtr, TermPtr>>& pairs,
                                std::mt19937_64& rng);

// Naturality squares of alpha for p at V in {N, W, W*W} are pullbacks. With
// identify_fibers the apex carries a duplicated fiber block that both legs only see summed.
CheckReport check_cartesian_p(const AlgebroidData& A, bool identify_fibers = false);

// L'(A): base (x, v) = total space of A, fiber (u, w).
AlgebroidData lie_tangent(const AlgebroidData& A);
// Flat L(L'(A)) -> L2(A).
PolyMap lie_tangent_identification(const AlgebroidData& A);
CheckReport check_lie_tangent_table(const AlgebroidData& A);
// X -> ((x, X), u -> (u, DX[rho u])) as a morphism A -> L'(A), and back.
AlgebroidMorphism section_to_morphism(const AlgebroidData& A, const Section& X);
CheckReport check_section_bijection(const AlgebroidData& A, const Section& X);

}  // namespace tcat
