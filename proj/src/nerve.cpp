#include "tcat/nerve.hpp"

#include "tcat/limits.hpp"
#include "tcat/tangent.hpp"

namespace tcat {

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t count)
{
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < count; ++i)
        v.push_back(from + i);
    return v;
}

std::vector<std::size_t> join(std::vector<std::size_t> a, const std::vector<std::size_t>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

PolyMap inverse_selection(const PolyMap& sel)
{
    std::vector<std::size_t> idx(sel.tgt);
    for (std::size_t k = 0; k < sel.tgt; ++k) {
        const Exponent& e = sel.comps[k].terms().begin()->first;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                idx[i] = k;
    }
    return PolyMap::select(sel.tgt, idx);
}

WeilAlgebra prepend_w(unsigned n, const WeilAlgebra& s)
{
    std::vector<unsigned> w{n};
    w.insert(w.end(), s.widths().begin(), s.widths().end());
    return WeilAlgebra(w);
}

void expect_eq(CheckReport& r, const std::string& name, const PolyMap& lhs, const PolyMap& rhs,
               const std::string& context = "")
{
    std::string w = difference_witness(lhs, rhs);
    r.accumulate(name, w.empty(), w.empty() || context.empty() ? w : context + ": " + w);
}

const WeilAlgebra kN;
const WeilAlgebra kW({1});
const WeilAlgebra kWW({1, 1});

}  // namespace

NerveModel::NerveModel(AlgebroidData A) : A_(std::move(A)), sigma_(involution_from_bracket(A_)) {}

NerveModel::NerveModel(AlgebroidData A, PolyMap sigma) : A_(std::move(A)), sigma_(std::move(sigma)) {}

PolyMap NerveModel::eval_generator(const WTerm& node) const
{
    const std::size_t d = A_.d, r = A_.r;
    switch (node.gen) {
    case GenKind::P:
        return PolyMap::select(d + r, range(0, d));
    case GenKind::Zero: {
        std::vector<Polynomial> c;
        for (std::size_t i = 0; i < d; ++i)
            c.push_back(Polynomial::variable(d, i));
        for (std::size_t a = 0; a < r; ++a)
            c.emplace_back(d);
        return PolyMap(d, c);
    }
    case GenKind::Plus: {
        std::size_t nv = d + 2 * r;
        std::vector<Polynomial> c;
        for (std::size_t i = 0; i < d; ++i)
            c.push_back(Polynomial::variable(nv, i));
        for (std::size_t a = 0; a < r; ++a)
            c.push_back(Polynomial::variable(nv, d + a) + Polynomial::variable(nv, d + r + a));
        return PolyMap(nv, c);
    }
    case GenKind::Ell:
        return lift_hat(A_);
    case GenKind::Flip:
        return sigma_;
    case GenKind::Bang:
        return PolyMap::select(object_dim(node.annot), range(0, d));
    case GenKind::Id:
        return PolyMap::identity(object_dim(node.annot));
    case GenKind::Proj:
        return PolyMap::select(d + node.n * r, join(range(0, d), range(d + (node.i - 1) * r, r)));
    }
    throw std::logic_error("nerve: unknown generator");
}

PolyMap NerveModel::eval_tensor(const WTerm& node) const
{
    const WTerm& a = *node.a;
    const WTerm& b = *node.b;
    // (a * b) = (a * Y') after (X * b)
    PolyMap left = left_whisker(A_, a.src, b.src, b.tgt, eval_model(node.b, *this));
    PolyMap fa = eval_model(node.a, *this);
    PolyMap right = b.tgt.is_unit() ? fa : whisker_right(A_, a.denotation, b.tgt, fa);
    return compose(right, left);
}

PolyMap NerveModel::eval_pair(const WTerm& node, const PolyMap& a, const PolyMap& b) const
{
    return pair_by_labels(node, a, b, BlockLayout{A_.d, A_.r});
}

ProlongationSpace nerve_object(const AlgebroidData& A, const WeilAlgebra& V)
{
    return prolongation_space(A, V);
}

PolyMap left_whisker(const AlgebroidData& A, const WeilAlgebra& U, const WeilAlgebra& S, const WeilAlgebra& S2,
                     const PolyMap& h)
{
    PolyMap out = h;
    WeilAlgebra s = S, s2 = S2;
    for (std::size_t k = U.factors(); k-- > 0;) {
        out = whisker_left_once(A, U.widths()[k], s, s2, out);
        s = prepend_w(U.widths()[k], s);
        s2 = prepend_w(U.widths()[k], s2);
    }
    return out;
}

PolyMap nerve_generator_map(const AlgebroidData& A, GenKind kind, const WeilAlgebra& left, const WeilAlgebra& right,
                            unsigned i, unsigned n, const WeilAlgebra& annot)
{
    NerveModel m(A);
    TermPtr g = make_gen(kind, annot, i, n);
    PolyMap core = m.eval_generator(*g);
    PolyMap mid = right.is_unit() ? core : whisker_right(A, g->denotation, right, core);
    return left_whisker(A, left, tensor(g->src, right), tensor(g->tgt, right), mid);
}

PolyMap nerve_eval(const NerveModel& m, const TermPtr& t)
{
    return eval_model(t, m);
}

PolyMap nerve_eval(const AlgebroidData& A, const TermPtr& t)
{
    return eval_model(t, NerveModel(A));
}

CheckReport check_functoriality(const NerveModel& m, const std::vector<std::pair<TermPtr, TermPtr>>& pairs,
                                std::mt19937_64& rng)
{
    CheckReport rep;
    rep.add("equal images", true);
    rep.add("composition", true);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [t1, t2] = pairs[k];
        std::string ctx = print_term(t1) + " vs " + print_term(t2);
        if (!terms_equal(t1, t2)) {
            rep.accumulate("equal images", false, ctx + ": denotations differ");
            continue;
        }
        PolyMap e1 = nerve_eval(m, t1);
        expect_eq(rep, "equal images", e1, nerve_eval(m, t2), ctx);
        if (k % 10 == 0) {
            TermPtr g = random_term_from(rng, t1->tgt, 2, 8);
            expect_eq(rep, "composition", nerve_eval(m, make_compose(g, t1)), compose(nerve_eval(m, g), e1),
                      print_term(g) + " after " + print_term(t1));
        }
    }
    return rep;
}

CheckReport check_cartesian_p(const AlgebroidData& A, bool identify_fibers)
{
    CheckReport rep;
    for (const WeilAlgebra& V : {kN, kW, kWW}) {
        WeilAlgebra wv = tensor(kW, V), wwv = tensor(kWW, V);
        PolyMap top = nerve_generator_map(A, GenKind::P, kW, V);
        PolyMap left = embed_tangent(A, wwv);
        PolyMap right = embed_tangent(A, wv);
        PolyMap bottom = tangent(nerve_generator_map(A, GenKind::P, kN, V));
        if (identify_fibers) {
            // duplicate the last fiber block; the legs see only the sum
            std::size_t n = top.src;
            std::vector<Polynomial> c;
            for (std::size_t i = 0; i < n; ++i) {
                Polynomial p = Polynomial::variable(n + A.r, i);
                if (i + A.r >= n)
                    p += Polynomial::variable(n + A.r, i + A.r);
                c.push_back(p);
            }
            PolyMap sum(n + A.r, c);
            top = compose(top, sum);
            left = compose(left, sum);
        }
        LimitResult res = certify_pullback(top, left, right, bottom);
        rep.add("p-cartesian at " + V.str(), res.ok, res.witness);
    }
    // naturality of alpha for the other generators, at N only
    struct G {
        GenKind kind;
        const char* name;
    };
    for (G g : {G{GenKind::Zero, "0"}, G{GenKind::Plus, "+"}, G{GenKind::Ell, "l"}, G{GenKind::Flip, "c"}}) {
        TermPtr t = make_gen(g.kind);
        PolyMap lhs = compose(embed_tangent(A, tensor(kW, t->tgt)), nerve_generator_map(A, g.kind, kW, kN));
        PolyMap rhs = compose(tangent(nerve_generator_map(A, g.kind, kN, kN)), embed_tangent(A, tensor(kW, t->src)));
        expect_eq(rep, std::string("alpha natural for ") + g.name, lhs, rhs);
    }
    return rep;
}

// ---- the prolongation tangent structure ---------------------------------

namespace {

// L'(A) flat (x, v, u, w) -> L(A) flat (x; u, v, w)
PolyMap lie_tangent_to_L(const AlgebroidData& A)
{
    const std::size_t d = A.d, r = A.r;
    return PolyMap::select(d + 3 * r, join(join(join(range(0, d), range(d + r, r)), range(d, r)), range(d + 2 * r, r)));
}

AlgebroidData lie_tangent_anchored(const AlgebroidData& A)
{
    const std::size_t d = A.d, r = A.r, nb = d + r;
    std::vector<std::size_t> xs = range(0, d);
    std::vector<std::vector<Polynomial>> rho(nb, std::vector<Polynomial>(2 * r, Polynomial(nb)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < r; ++a)
            rho[i][a] = A.rho[i][a].rename(nb, xs);
    for (std::size_t b = 0; b < r; ++b)
        rho[d + b][r + b] = Polynomial::constant(nb, 1);
    AlgebroidData Z = zero_bracket(nb, 2 * r);
    return make_algebroid(nb, 2 * r, rho, Z.C, A.name.empty() ? "" : "L'(" + A.name + ")");
}

}  // namespace

PolyMap lie_tangent_identification(const AlgebroidData& A)
{
    const std::size_t d = A.d, r = A.r;
    // L2 order: x, u_x, u_y, u_xy, u_z, u_xz, u_yz, u_xyz
    std::vector<std::size_t> idx = range(0, d);
    for (std::size_t from : {d + r, d + 3 * r, d + 5 * r, d, d + 2 * r, d + 4 * r, d + 6 * r})
        idx = join(idx, range(from, r));
    return PolyMap::select(d + 7 * r, idx);
}

AlgebroidData lie_tangent(const AlgebroidData& A)
{
    CheckReport se = check_structure_equations(A);
    if (!se.ok())
        throw InputError("lie-tangent needs an algebroid satisfying the structure equations");
    AlgebroidData L = lie_tangent_anchored(A);
    PolyMap P = lie_tangent_identification(A);
    PolyMap sigma2 = compose(inverse_selection(P), compose(sigma_times_c(A, involution_from_bracket(A)), P));
    L.C = bracket_from_involution(L, sigma2);
    return L;
}

CheckReport check_lie_tangent_table(const AlgebroidData& A)
{
    CheckReport rep;
    const std::size_t d = A.d, r = A.r;
    AlgebroidData L = lie_tangent(A);
    PolyMap Q = lie_tangent_to_L(A);
    PolyMap Qi = inverse_selection(Q);
    PolyMap P = lie_tangent_identification(A);
    PolyMap sigma = involution_from_bracket(A);

    PolyMap pTA = PolyMap::select(2 * (d + r), range(0, d + r));
    expect_eq(rep, "pi' = p.pi1", PolyMap::select(d + 3 * r, range(0, d + r)), compose(pTA, compose(l_proj1(A), Q)));

    PolyMap xi_w = whisker_right(A, generator(GenKind::Zero), kW, nerve_generator_map(A, GenKind::Zero, kN, kN));
    PolyMap xi_L = nerve_generator_map(L, GenKind::Zero, kN, kN);
    expect_eq(rep, "xi' = (xi.pi, 0)", xi_L, compose(Qi, xi_w));

    PolyMap lam_w = whisker_right(A, generator(GenKind::Ell), kW, lift_hat(A));
    expect_eq(rep, "lambda' = lambda x l", compose(P, lift_hat(L)), compose(lam_w, Q));

    expect_eq(rep, "rho' = pi1", anchor_map(L), compose(l_proj1(A), Q));

    PolyMap sig_L = involution_from_bracket(L);
    expect_eq(rep, "sigma' = sigma x c", compose(P, sig_L), compose(sigma_times_c(A, sigma), P));
    PolyMap c_w = whisker_right(A, generator(GenKind::Flip), kW, sigma);
    expect_eq(rep, "sigma' = sigma x c", compose(P, sig_L), compose(c_w, P));

    // closed form: C'((a, a'), (b, b')) = (C(a, b), 0)
    bool closed = true;
    for (std::size_t g = 0; g < 2 * r && closed; ++g)
        for (std::size_t a = 0; a < 2 * r && closed; ++a)
            for (std::size_t b = 0; b < 2 * r && closed; ++b) {
                Polynomial want(d + r);
                if (g < r && a < r && b < r)
                    want = A.C[g][a][b].rename(d + r, range(0, d));
                closed = L.C[g][a][b] == want;
            }
    rep.add("bracket' closed form", closed, closed ? "" : "extracted bracket differs from (C(a,b), 0)");
    return rep;
}

AlgebroidMorphism section_to_morphism(const AlgebroidData& A, const Section& X)
{
    const std::size_t d = A.d, r = A.r;
    std::vector<Polynomial> base;
    for (std::size_t i = 0; i < d; ++i)
        base.push_back(Polynomial::variable(d, i));
    base.insert(base.end(), X.begin(), X.end());
    std::vector<std::vector<Polynomial>> F(2 * r, std::vector<Polynomial>(r, Polynomial(d)));
    for (std::size_t a = 0; a < r; ++a)
        F[a][a] = Polynomial::constant(d, 1);
    for (std::size_t g = 0; g < r; ++g)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t j = 0; j < d; ++j)
                F[r + g][a] += X[g].derivative(j) * A.rho[j][a];
    return AlgebroidMorphism{PolyMap(d, base), F};
}

CheckReport check_section_bijection(const AlgebroidData& A, const Section& X)
{
    CheckReport rep;
    const std::size_t d = A.d, r = A.r;
    AlgebroidData L = lie_tangent(A);
    AlgebroidMorphism f = section_to_morphism(A, X);
    rep.merge(check_morphism(A, L, f), "morphism ");

    // (id, TX.rho) built from maps
    PolyMap Xmap = f.base;
    PolyMap s = compose(l_retraction(A), pair(PolyMap::identity(d + r), compose(tangent(Xmap), anchor_map(A))));
    expect_eq(rep, "section of projection", compose(l_proj0(A), s), PolyMap::identity(d + r));
    expect_eq(rep, "matches morphism", compose(lie_tangent_to_L(A), morphism_map(A, L, f)), s);
    Section back(f.base.comps.begin() + static_cast<long>(d), f.base.comps.end());
    rep.add("round trip", back == X);
    return rep;
}

}  // namespace tcat
