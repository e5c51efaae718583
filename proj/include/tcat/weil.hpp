#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tcat {

using Nat = mpz_class;

// Tensor product W_{n1} x ... x W_{nk}; the empty list is N.
// Basis monomials are indexed in mixed radix with the first factor least
// significant: index = sum_i sel_i * prod_{j<i} (n_j + 1), sel_i = 0 for the unit.
class WeilAlgebra {
public:
    WeilAlgebra() = default;
    explicit WeilAlgebra(std::vector<unsigned> widths);

    const std::vector<unsigned>& widths() const { return widths_; }
    std::size_t factors() const { return widths_.size(); }
    std::size_t dim() const { return dim_; }
    std::size_t generators() const;
    bool is_unit() const { return widths_.empty(); }

    std::vector<unsigned> selection(std::size_t index) const;
    std::size_t index(const std::vector<unsigned>& sel) const;
    // Basis index of generator g (ordered by factor, then variable).
    std::size_t generator_index(std::size_t g) const;
    std::pair<std::size_t, unsigned> generator_position(std::size_t g) const;
    std::optional<std::size_t> multiply(std::size_t a, std::size_t b) const;
    unsigned degree(std::size_t index) const;

    std::string monomial_name(std::size_t index) const;
    std::string str() const;
    static WeilAlgebra parse(const std::string& text);

    bool operator==(const WeilAlgebra& o) const { return widths_ == o.widths_; }
    bool operator!=(const WeilAlgebra& o) const { return widths_ != o.widths_; }

private:
    std::vector<unsigned> widths_;
    std::vector<std::size_t> strides_;
    std::size_t dim_ = 1;
};

WeilAlgebra make_weil(const std::vector<unsigned>& widths);
WeilAlgebra tensor(const WeilAlgebra& a, const WeilAlgebra& b);

class WeilElement {
public:
    WeilElement() = default;
    explicit WeilElement(WeilAlgebra a) : alg_(std::move(a)) {}
    static WeilElement unit(const WeilAlgebra& a);
    static WeilElement basis(const WeilAlgebra& a, std::size_t index, const Nat& c = 1);
    static WeilElement parse(const WeilAlgebra& a, const std::string& text);

    const WeilAlgebra& algebra() const { return alg_; }
    const std::map<std::size_t, Nat>& coefficients() const { return coeffs_; }
    Nat coefficient(std::size_t index) const;
    void add(std::size_t index, const Nat& c);
    bool is_zero() const { return coeffs_.empty(); }

    WeilElement& operator+=(const WeilElement& o);
    friend WeilElement operator+(WeilElement a, const WeilElement& b) { return a += b; }
    bool operator==(const WeilElement& o) const { return alg_ == o.alg_ && coeffs_ == o.coeffs_; }
    bool operator!=(const WeilElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    WeilAlgebra alg_;
    std::map<std::size_t, Nat> coeffs_;
};

WeilElement element_mul(const WeilElement& a, const WeilElement& b);
// Image under the algebra inclusion as the given tensor block: offset factors on the left
// and total algebra `into`.
WeilElement embed(const WeilElement& e, const WeilAlgebra& into, std::size_t factor_offset);

class WeilMorphism {
public:
    WeilMorphism() = default;
    WeilMorphism(WeilAlgebra src, WeilAlgebra tgt, std::vector<WeilElement> images);

    const WeilAlgebra& source() const { return src_; }
    const WeilAlgebra& target() const { return tgt_; }
    const std::vector<WeilElement>& images() const { return images_; }

    // Empty if the images are nilpotent and respect the relations.
    std::string validation_error() const;
    WeilElement apply(const WeilElement& e) const;
    WeilElement apply_basis(std::size_t index) const;
    // Column mu holds the image of basis monomial mu.
    std::vector<std::vector<Nat>> matrix() const;

    bool operator==(const WeilMorphism& o) const;
    bool operator!=(const WeilMorphism& o) const { return !(*this == o); }
    std::string str() const;

private:
    WeilAlgebra src_, tgt_;
    std::vector<WeilElement> images_;
};

enum class GenKind { P, Zero, Plus, Ell, Flip, Bang, Id, Proj };

WeilMorphism generator(GenKind kind, const WeilAlgebra& obj = WeilAlgebra(), unsigned i = 0, unsigned n = 0);
WeilMorphism compose_morphisms(const WeilMorphism& g, const WeilMorphism& f);
WeilMorphism tensor_morphisms(const WeilMorphism& f, const WeilMorphism& g);
bool morphisms_equal(const WeilMorphism& f, const WeilMorphism& g);
WeilMorphism identity_morphism(const WeilAlgebra& a);
WeilMorphism bang(const WeilAlgebra& a);
// id_U x f x id_V
WeilMorphism whisker(const WeilAlgebra& u, const WeilMorphism& f, const WeilAlgebra& v);

// Kills the variables of factor k of the target.
WeilMorphism augmentation(const WeilMorphism& f, std::size_t k);
// Induced map into the fibered sum U x W_{n+m} x V of U x W_n x V and U x W_m x V over U x V,
// pairing at factor k. Throws std::invalid_argument when augmentations differ.
WeilMorphism pair_morphisms(const WeilMorphism& f, const WeilMorphism& g, std::size_t k);

// mu: W2 -> W x W, x1 -> x, x2 -> xy.
WeilMorphism vertical_lift_mu();

struct TransverseSquare {
    // Apex S with top: S -> B, left: S -> C; cospan right: B -> D, bottom: C -> D.
    WeilMorphism top, left, right, bottom;
    std::string provenance;

    bool commutes() const;
    std::size_t total_dimension() const;
};

enum class BaseSquare { FiberedSum, VerticalLift, Identity };

TransverseSquare base_square(BaseSquare tag, unsigned n = 1, unsigned m = 1, const WeilAlgebra& obj = WeilAlgebra({1}));
TransverseSquare transverse_square(BaseSquare tag, const WeilAlgebra& left, const WeilAlgebra& right, unsigned n = 1,
                                   unsigned m = 1, const WeilAlgebra& obj = WeilAlgebra({1}));
// Parses e.g. "W * fibered-sum(1,2) * W2", "vertical-lift", "identity(W2)".
TransverseSquare parse_square(const std::string& text);
// Every whiskered base square with corner dimensions at most max_dim.
std::vector<TransverseSquare> enumerate_squares(std::size_t max_dim);

}  // namespace tcat
