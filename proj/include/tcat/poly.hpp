#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tcat/report.hpp"

namespace tcat {

using Rat = mpq_class;
using Exponent = std::vector<std::uint16_t>;

// Graded order: higher total degree first, ties broken lexicographically (descending).
struct ExponentOrder {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class Polynomial {
public:
    using Terms = std::map<Exponent, Rat, ExponentOrder>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rat& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    unsigned degree() const;

    void add_term(const Exponent& e, const Rat& c);
    Rat coefficient(const Exponent& e) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rat& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rat& c) { return a *= c; }
    friend Polynomial operator*(const Rat& c, Polynomial a) { return a *= c; }
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned k) const;
    Polynomial derivative(std::size_t i) const;
    // Substitute vals[i] for variable i; all vals share one arity.
    Polynomial substitute(const std::vector<Polynomial>& vals, std::size_t out_nvars) const;
    Rat evaluate(const std::vector<Rat>& point) const;
    // Variable i becomes variable map[i] of a space with new_nvars variables.
    Polynomial rename(std::size_t new_nvars, const std::vector<std::size_t>& map) const;
    bool depends_on(std::size_t i) const;

    std::string str() const;
    std::string str(const std::vector<std::string>& names) const;

    static Polynomial parse(const std::string& text, std::size_t nvars);
    static Polynomial parse(const std::string& text, const std::vector<std::string>& names);

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

std::vector<std::string> default_names(std::size_t n);

// Polynomial map Q^src -> Q^tgt.
struct PolyMap {
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::vector<Polynomial> comps;

    PolyMap() = default;
    PolyMap(std::size_t s, std::vector<Polynomial> c);

    static PolyMap identity(std::size_t n);
    static PolyMap zero(std::size_t src, std::size_t tgt);
    // Coordinate selection: component k is variable idx[k].
    static PolyMap select(std::size_t src, const std::vector<std::size_t>& idx);
    static PolyMap linear(const std::vector<std::vector<Rat>>& rows, std::size_t src);
    static PolyMap parse(const std::vector<std::string>& comps, std::size_t src);

    bool operator==(const PolyMap& o) const;
    bool operator!=(const PolyMap& o) const { return !(*this == o); }
    std::string str() const;
    unsigned degree() const;
};

// g after f.
PolyMap compose(const PolyMap& g, const PolyMap& f);
PolyMap pair(const PolyMap& f, const PolyMap& g);
PolyMap product(const PolyMap& f, const PolyMap& g);
PolyMap add(const PolyMap& f, const PolyMap& g);
PolyMap sub(const PolyMap& f, const PolyMap& g);
PolyMap scale(const PolyMap& f, const Rat& c);
// Projections out of a product src = a + b.
PolyMap proj_first(std::size_t a, std::size_t b);
PolyMap proj_second(std::size_t a, std::size_t b);

// D[f](x, v) = J_f(x) v, variables ordered x then v.
PolyMap differential(const PolyMap& f);
bool is_linear(const PolyMap& f);

// Describes the first differing component of two maps, empty if equal.
std::string difference_witness(const PolyMap& lhs, const PolyMap& rhs);

Polynomial random_polynomial(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg, int coeff_bound,
                             unsigned max_terms = 4);
PolyMap random_map(std::mt19937_64& rng, std::size_t src, std::size_t tgt, unsigned max_deg, int coeff_bound);

// CD.1 .. CD.7 on the sample; companions with composable shapes are drawn from rng.
CheckReport check_cdc_axioms(const std::vector<PolyMap>& sample, std::uint64_t seed);

}  // namespace tcat
