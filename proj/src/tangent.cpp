#include "tcat/tangent.hpp"

#include "tcat/limits.hpp"

namespace tcat {

namespace {

using VPoly = std::vector<Polynomial>;

struct Table {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> products;
};

Table product_table(const WeilAlgebra& v)
{
    Table t;
    for (std::size_t a = 0; a < v.dim(); ++a)
        for (std::size_t b = 0; b < v.dim(); ++b)
            if (auto c = v.multiply(a, b))
                t.products.emplace_back(a, b, *c);
    return t;
}

VPoly vmul(const VPoly& x, const VPoly& y, const Table& t, std::size_t nvars)
{
    VPoly out(x.size(), Polynomial(nvars));
    for (const auto& [a, b, c] : t.products) {
        if (x[a].is_zero() || y[b].is_zero())
            continue;
        out[c] += x[a] * y[b];
    }
    return out;
}

}  // namespace

PolyMap weil_prolong(const WeilAlgebra& v, const PolyMap& f)
{
    std::size_t n = f.src, m = f.tgt, dim = v.dim();
    if (dim == 1)
        return f;
    std::size_t nv = n * dim;
    Table table = product_table(v);
    std::vector<VPoly> points(n, VPoly(dim, Polynomial(nv)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t mu = 0; mu < dim; ++mu)
            points[i][mu] = Polynomial::variable(nv, mu * n + i);
    std::vector<std::vector<VPoly>> powers(n);
    auto power = [&](std::size_t i, unsigned k) -> const VPoly& {
        auto& cache = powers[i];
        if (cache.empty()) {
            VPoly one(dim, Polynomial(nv));
            one[0] = Polynomial::constant(nv, 1);
            cache.push_back(one);
        }
        while (cache.size() <= k)
            cache.push_back(vmul(cache.back(), points[i], table, nv));
        return cache[k];
    };
    std::vector<Polynomial> comps(m * dim, Polynomial(nv));
    for (std::size_t j = 0; j < m; ++j) {
        VPoly acc(dim, Polynomial(nv));
        for (const auto& [e, c] : f.comps[j].terms()) {
            VPoly term(dim, Polynomial(nv));
            term[0] = Polynomial::constant(nv, c);
            for (std::size_t i = 0; i < n; ++i)
                if (e[i])
                    term = vmul(term, power(i, e[i]), table, nv);
            for (std::size_t mu = 0; mu < dim; ++mu)
                acc[mu] += term[mu];
        }
        for (std::size_t psi = 0; psi < dim; ++psi)
            comps[psi * m + j] = acc[psi];
    }
    return PolyMap(nv, comps);
}

PolyMap relabel(const WeilMorphism& phi, std::size_t n)
{
    auto mat = phi.matrix();
    std::size_t dv = phi.source().dim(), du = phi.target().dim();
    std::size_t nv = n * dv;
    std::vector<Polynomial> comps;
    for (std::size_t psi = 0; psi < du; ++psi)
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial p(nv);
            for (std::size_t mu = 0; mu < dv; ++mu)
                if (mat[psi][mu] != 0)
                    p += Polynomial::variable(nv, mu * n + i) * Rat(mat[psi][mu]);
            comps.push_back(p);
        }
    return PolyMap(nv, comps);
}

PolyMap structure_nat(GenKind kind, std::size_t n)
{
    return relabel(generator(kind), n);
}

PolyMap tangent(const PolyMap& f)
{
    return weil_prolong(WeilAlgebra({1}), f);
}

PolyMap pair_over_base(const PolyMap& f, const PolyMap& g, std::size_t n)
{
    std::vector<Polynomial> c(f.comps.begin(), f.comps.begin() + static_cast<long>(n));
    c.insert(c.end(), f.comps.begin() + static_cast<long>(n), f.comps.end());
    c.insert(c.end(), g.comps.begin() + static_cast<long>(n), g.comps.end());
    return PolyMap(f.src, c);
}

PolyMap mu_map(std::size_t n)
{
    WeilAlgebra W2({2}), W2W({2, 1});
    // x1 -> x1, x2 -> x2 t
    WeilMorphism spread(W2, W2W, {WeilElement::basis(W2W, 1), WeilElement::basis(W2W, 2 + 3)});
    return compose(tangent(structure_nat(GenKind::Plus, n)), relabel(spread, n));
}

PolyMap interleave(const WeilAlgebra& v, std::size_t n, std::size_t m)
{
    std::vector<std::size_t> idx;
    for (std::size_t mu = 0; mu < v.dim(); ++mu)
        for (std::size_t i = 0; i < n; ++i)
            idx.push_back(mu * (n + m) + i);
    for (std::size_t mu = 0; mu < v.dim(); ++mu)
        for (std::size_t i = 0; i < m; ++i)
            idx.push_back(mu * (n + m) + n + i);
    return PolyMap::select(v.dim() * (n + m), idx);
}

PolyMap TangentModel::eval_generator(const WTerm& node) const
{
    return relabel(node.denotation, n_);
}

PolyMap TangentModel::eval_tensor(const WTerm& node) const
{
    // (t1 * t2) = t2 at T^{Y1} n  after  T^{X2} applied to t1
    PolyMap first = weil_prolong(node.b->src, eval_model(node.a, *this));
    TangentModel outer(n_ * node.a->tgt.dim());
    return compose(eval_model(node.b, outer), first);
}

PolyMap TangentModel::eval_pair(const WTerm& node, const PolyMap& a, const PolyMap& b) const
{
    return pair_by_labels(node, a, b, BlockLayout{n_, n_});
}

namespace {

void expect_eq(CheckReport& r, const std::string& name, const PolyMap& lhs, const PolyMap& rhs,
               const std::string& context = "")
{
    std::string w = difference_witness(lhs, rhs);
    r.accumulate(name, w.empty(), context.empty() ? w : context + ": " + w);
}

}  // namespace

CheckReport check_tangent_axioms(std::size_t n, const std::vector<PolyMap>& sample)
{
    CheckReport r;
    const WeilAlgebra W({1}), W2({2}), W3({3}), WW({1, 1});
    PolyMap p = structure_nat(GenKind::P, n), z = structure_nat(GenKind::Zero, n);
    PolyMap plus = structure_nat(GenKind::Plus, n), ell = structure_nat(GenKind::Ell, n);
    PolyMap c = structure_nat(GenKind::Flip, n);
    PolyMap idT = PolyMap::identity(2 * n);
    auto pi = [&](unsigned i, unsigned k) { return relabel(generator(GenKind::Proj, {}, i, k), n); };

    // additive bundle
    expect_eq(r, "additive projection-zero", compose(p, z), PolyMap::identity(n));
    expect_eq(r, "additive additive-unit", compose(plus, pair_over_base(idT, compose(z, p), n)), idT);
    expect_eq(r, "additive additive-commutativity", compose(plus, pair_over_base(pi(2, 2), pi(1, 2), n)), plus);
    {
        PolyMap left = compose(plus, pair_over_base(compose(plus, pair_over_base(pi(1, 3), pi(2, 3), n)), pi(3, 3), n));
        PolyMap right = compose(plus, pair_over_base(pi(1, 3), compose(plus, pair_over_base(pi(2, 3), pi(3, 3), n)), n));
        expect_eq(r, "additive additive-associativity", left, right);
    }
    expect_eq(r, "additive projection-addition", compose(p, plus), compose(p, pi(1, 2)));

    // flip
    PolyMap cT = relabel(generator(GenKind::Flip), 2 * n), Tc = tangent(c);
    PolyMap lT = relabel(generator(GenKind::Ell), 2 * n), Tl = tangent(ell);
    expect_eq(r, "flip involution", compose(c, c), PolyMap::identity(4 * n));
    expect_eq(r, "flip yang-baxter", compose(cT, compose(Tc, cT)), compose(Tc, compose(cT, Tc)));
    expect_eq(r, "flip lift-flip", compose(lT, c), compose(Tc, compose(cT, Tl)));
    expect_eq(r, "flip flip-projection", compose(tangent(p), c), relabel(generator(GenKind::P), 2 * n));
    expect_eq(r, "flip flip-zero", compose(c, tangent(z)), relabel(generator(GenKind::Zero), 2 * n));
    {
        // c after T.+ equals +.T after the swap T(T_2) -> T_2(T)
        WeilAlgebra W2W({2, 1}), WW2({1, 2});
        WeilMorphism swap(W2W, WW2,
                          {WeilElement::basis(WW2, 2), WeilElement::basis(WW2, 4), WeilElement::basis(WW2, 1)});
        expect_eq(r, "flip flip-additive", compose(c, tangent(plus)),
                  compose(relabel(generator(GenKind::Plus), 2 * n), relabel(swap, n)));
    }

    // lift
    expect_eq(r, "lift lift-zero", compose(ell, z), compose(tangent(z), z));
    {
        WeilAlgebra W2W({2, 1});
        WeilMorphism ll(W2, W2W, {WeilElement::basis(W2W, 1 + 3), WeilElement::basis(W2W, 2 + 3)});
        expect_eq(r, "lift lift-additive", compose(ell, plus), compose(tangent(plus), relabel(ll, n)));
    }
    expect_eq(r, "lift coassociativity", compose(lT, ell), compose(Tl, ell));
    expect_eq(r, "lift symmetry", compose(c, ell), ell);
    expect_eq(r, "lift lift-projection", compose(tangent(p), ell), compose(z, p));
    {
        PolyMap mu = mu_map(n);
        PolyMap left = compose(p, pi(1, 2));
        LimitResult res = certify_pullback(mu, left, tangent(p), z);
        r.add("lift universality", res.ok, res.witness);
        PolyMap expected = relabel(vertical_lift_mu(), n);
        expect_eq(r, "lift universality", mu, expected, "mu shape");
    }

    // naturality against sample maps
    for (const auto& f : sample) {
        if (f.src != n)
            continue;
        std::size_t m = f.tgt;
        std::string ctx = "f = " + f.str();
        PolyMap Tf = tangent(f), TTf = weil_prolong(WW, f), T2f = weil_prolong(W2, f);
        expect_eq(r, "additive naturality", compose(structure_nat(GenKind::P, m), Tf), compose(f, p), ctx);
        expect_eq(r, "additive naturality", compose(Tf, z), compose(structure_nat(GenKind::Zero, m), f), ctx);
        expect_eq(r, "additive naturality", compose(structure_nat(GenKind::Plus, m), T2f), compose(Tf, plus), ctx);
        expect_eq(r, "flip naturality", compose(structure_nat(GenKind::Flip, m), TTf), compose(TTf, c), ctx);
        expect_eq(r, "lift naturality", compose(structure_nat(GenKind::Ell, m), Tf), compose(TTf, ell), ctx);
        expect_eq(r, "T functoriality", tangent(compose(f, PolyMap::identity(n))), Tf, ctx);
    }
    for (const char* name : {"additive naturality", "flip naturality", "lift naturality", "T functoriality"})
        r.accumulate(name, true);
    return r;
}

CheckReport check_naturality(const WeilMorphism& phi, const PolyMap& f)
{
    CheckReport r;
    PolyMap lhs = compose(relabel(phi, f.tgt), weil_prolong(phi.source(), f));
    PolyMap rhs = compose(weil_prolong(phi.target(), f), relabel(phi, f.src));
    expect_eq(r, "naturality", lhs, rhs, phi.str());
    return r;
}

CheckReport check_strictness(const WeilAlgebra& u, const WeilAlgebra& v, const PolyMap& f)
{
    CheckReport r;
    expect_eq(r, "strictness", weil_prolong(tensor(u, v), f), weil_prolong(v, weil_prolong(u, f)),
              u.str() + " * " + v.str());
    return r;
}

CheckReport check_transverse(const TransverseSquare& sq, std::size_t n)
{
    CheckReport r;
    LimitResult res = certify_pullback(relabel(sq.top, n), relabel(sq.left, n), relabel(sq.right, n),
                                       relabel(sq.bottom, n));
    r.add("transverse " + sq.provenance, res.ok, res.witness);
    return r;
}

CheckReport check_product_preservation(const WeilAlgebra& v, const PolyMap& f, const PolyMap& g)
{
    CheckReport r;
    PolyMap in = interleave(v, f.src, g.src), out = interleave(v, f.tgt, g.tgt);
    PolyMap lhs = compose(out, weil_prolong(v, product(f, g)));
    PolyMap rhs = compose(product(weil_prolong(v, f), weil_prolong(v, g)), in);
    expect_eq(r, "product preservation", lhs, rhs, v.str());
    return r;
}

}  // namespace tcat
