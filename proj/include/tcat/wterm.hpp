#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "tcat/poly.hpp"
#include "tcat/weil.hpp"

namespace tcat {

struct WTerm;
using TermPtr = std::shared_ptr<const WTerm>;

struct WTerm {
    enum class Kind { Gen, Compose, Tensor, Pair };
    Kind kind = Kind::Gen;
    GenKind gen = GenKind::Id;
    WeilAlgebra annot;       // for ! and id
    unsigned i = 0, n = 0;   // for proj
    TermPtr a, b;            // Compose: a after b; Tensor: a * b; Pair: <a, b>
    std::size_t pair_pos = 0;
    WeilAlgebra src, tgt;
    WeilMorphism denotation;
};

TermPtr make_gen(GenKind kind, const WeilAlgebra& annot = WeilAlgebra(), unsigned i = 0, unsigned n = 0);
TermPtr make_id(const WeilAlgebra& v);
TermPtr make_compose(const TermPtr& g, const TermPtr& f);
TermPtr make_tensor(const TermPtr& a, const TermPtr& b);
// Pairing at factor k (0-based) of the targets.
TermPtr make_pairing(const TermPtr& a, const TermPtr& b, std::size_t k);
TermPtr make_pairing(const TermPtr& a, const TermPtr& b);

TermPtr parse_term(const std::string& text);
std::string print_term(const TermPtr& t);
bool same_tree(const TermPtr& a, const TermPtr& b);
bool contains_gen(const TermPtr& t, GenKind kind);
std::size_t term_size(const TermPtr& t);

WeilMorphism eval_weil(const TermPtr& t);
// Throws InputError when boundaries differ.
bool terms_equal(const TermPtr& t1, const TermPtr& t2);

// A model of the term language in polynomial maps.
class ModelInterface {
public:
    virtual ~ModelInterface() = default;
    virtual std::size_t object_dim(const WeilAlgebra& v) const = 0;
    virtual PolyMap eval_generator(const WTerm& node) const = 0;
    virtual PolyMap eval_tensor(const WTerm& node) const = 0;
    virtual PolyMap eval_pair(const WTerm& node, const PolyMap& a, const PolyMap& b) const = 0;
};

PolyMap eval_model(const TermPtr& t, const ModelInterface& m);

// Coordinates laid out as one block per basis monomial: the unit block has
// unit_size entries, every other block var_size.
struct BlockLayout {
    std::size_t unit_size = 0;
    std::size_t var_size = 0;
    std::size_t offset(std::size_t mono) const { return mono == 0 ? 0 : unit_size + (mono - 1) * var_size; }
    std::size_t size(std::size_t mono) const { return mono == 0 ? unit_size : var_size; }
    std::size_t total(const WeilAlgebra& v) const { return unit_size + (v.dim() - 1) * var_size; }
};

// Tupling into the fibered sum: blocks of the pair's target are read from a or b by label.
PolyMap pair_by_labels(const WTerm& node, const PolyMap& a, const PolyMap& b, const BlockLayout& layout);

// Random terms and equal-denotation pairs.
TermPtr random_term_from(std::mt19937_64& rng, const WeilAlgebra& src, unsigned steps, std::size_t max_dim);
TermPtr random_term_into(std::mt19937_64& rng, const WeilAlgebra& tgt, unsigned steps, std::size_t max_dim);
std::pair<TermPtr, TermPtr> random_equal_pair(std::mt19937_64& rng, std::size_t max_dim = 16);
// The fixed equation list (lhs, rhs, label).
struct TermEquation {
    std::string name, lhs, rhs;
};
const std::vector<TermEquation>& tangent_equations();

// A term without c denoting phi (source a single factor W_n), or nullptr if the
// construction does not apply.
TermPtr synthesize_c_free(const WeilMorphism& phi);
// All morphisms W_n -> V with image coefficients in 0..max_coeff.
std::vector<WeilMorphism> enumerate_morphisms(unsigned n, const WeilAlgebra& v, unsigned max_coeff);

}  // namespace tcat
