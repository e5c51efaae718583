#include "tcat/bundle.hpp"

#include <numeric>

#include "tcat/limits.hpp"
#include "tcat/tangent.hpp"

namespace tcat {

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t count)
{
    std::vector<std::size_t> v(count);
    std::iota(v.begin(), v.end(), from);
    return v;
}

void expect_eq(CheckReport& r, const std::string& name, const PolyMap& lhs, const PolyMap& rhs)
{
    std::string w = difference_witness(lhs, rhs);
    r.accumulate(name, w.empty(), w);
}

// Maps into TX given by a base part and a tangent part.
PolyMap tangent_point(const PolyMap& base, const PolyMap& vel)
{
    return pair(base, vel);
}

}  // namespace

PolyMap TrivialBundle::q() const
{
    return PolyMap::select(total(), range(0, d));
}

PolyMap TrivialBundle::xi() const
{
    return pair(PolyMap::identity(d), PolyMap::zero(d, k));
}

PolyMap TrivialBundle::lift() const
{
    std::size_t n = total();
    PolyMap base = pair(q(), PolyMap::zero(n, k));
    PolyMap vel = pair(PolyMap::zero(n, d), PolyMap::select(n, range(d, k)));
    return tangent_point(base, vel);
}

PolyMap TrivialBundle::fiber_add() const
{
    std::size_t n = d + 2 * k;
    PolyMap m = PolyMap::select(n, range(0, d));
    PolyMap e1 = PolyMap::select(n, range(d, k)), e2 = PolyMap::select(n, range(d + k, k));
    return pair(m, add(e1, e2));
}

std::string validate_action(const ScalarAction& a)
{
    std::size_t n = a.total;
    if (a.a.src != n + 1 || a.a.tgt != n)
        return "action must map 1+" + std::to_string(n) + " variables to " + std::to_string(n);
    // a(1, e) = e
    PolyMap one = pair(PolyMap(n, {Polynomial::constant(n, 1)}), PolyMap::identity(n));
    std::string w = difference_witness(compose(a.a, one), PolyMap::identity(n));
    if (!w.empty())
        return "unit law a(1,e) = e fails: " + w;
    // a(s t, e) = a(s, a(t, e)) over variables (s, t, e)
    std::size_t m = n + 2;
    Polynomial s = Polynomial::variable(m, 0), t = Polynomial::variable(m, 1);
    PolyMap e = PolyMap::select(m, range(2, n));
    PolyMap st_e = pair(PolyMap(m, {s * t}), e);
    PolyMap t_e = pair(PolyMap(m, {t}), e);
    PolyMap lhs = compose(a.a, st_e);
    PolyMap rhs = compose(a.a, pair(PolyMap(m, {s}), compose(a.a, t_e)));
    w = difference_witness(lhs, rhs);
    if (!w.empty())
        return "action law a(st,e) = a(s,a(t,e)) fails: " + w;
    return "";
}

Lift euler_vector_field(const ScalarAction& a)
{
    std::string err = validate_action(a);
    if (!err.empty())
        throw InputError(err);
    std::size_t n = a.total;
    // T.a at ((0, e), (1, 0)): base a(0,e), velocity d/dt a at t = 0
    PolyMap at_zero = pair(PolyMap::zero(n, 1), PolyMap::identity(n));
    PolyMap Ta = tangent(a.a);
    std::vector<Polynomial> point = at_zero.comps;
    point.push_back(Polynomial::constant(n, 1));
    for (std::size_t i = 0; i < n; ++i)
        point.push_back(Polynomial(n));
    PolyMap full = compose(Ta, PolyMap(n, point));
    return Lift{n, full};
}

CheckReport check_lift(const Lift& l)
{
    CheckReport r;
    std::size_t n = l.total;
    PolyMap ell = structure_nat(GenKind::Ell, n);
    expect_eq(r, "coassociativity", compose(tangent(l.lambda), l.lambda), compose(ell, l.lambda));
    PolyMap e = compose(structure_nat(GenKind::P, n), l.lambda);
    expect_eq(r, "idempotent", compose(e, e), e);
    // T.e after lambda = 0 after e
    expect_eq(r, "vertical", compose(tangent(e), l.lambda), compose(structure_nat(GenKind::Zero, n), e));
    return r;
}

PolyMap bundle_mu(const TrivialBundle& b, const PolyMap& lambda)
{
    // (m,e,e') -> T(+_q)(0(m,e), lambda(m,e'))
    std::size_t n = b.d + 2 * b.k, N = b.total();
    PolyMap x = PolyMap::select(n, range(0, N));
    std::vector<std::size_t> yi = range(0, b.d);
    for (std::size_t i = 0; i < b.k; ++i)
        yi.push_back(N + i);
    PolyMap y = PolyMap::select(n, yi);
    PolyMap zx = compose(structure_nat(GenKind::Zero, N), x);
    PolyMap ly = compose(lambda, y);
    // point of T(E x_M E): (m, e, e', dm, de, de') taken from the two tangent points
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < b.d; ++i)
        c.push_back(zx.comps[i]);
    for (std::size_t i = 0; i < b.k; ++i)
        c.push_back(zx.comps[b.d + i]);
    for (std::size_t i = 0; i < b.k; ++i)
        c.push_back(ly.comps[b.d + i]);
    for (std::size_t i = 0; i < b.d; ++i)
        c.push_back(zx.comps[N + i]);
    for (std::size_t i = 0; i < b.k; ++i)
        c.push_back(zx.comps[N + b.d + i]);
    for (std::size_t i = 0; i < b.k; ++i)
        c.push_back(ly.comps[N + b.d + i]);
    return compose(tangent(b.fiber_add()), PolyMap(n, c));
}

PolyMap bundle_nu(const TrivialBundle& b, const PolyMap& lambda)
{
    // (m, dm, e) -> T.xi(m, dm) +_p lambda(m, e)
    std::size_t n = 2 * b.d + b.k, N = b.total();
    PolyMap v = PolyMap::select(n, range(0, 2 * b.d));
    std::vector<std::size_t> yi = range(0, b.d);
    for (std::size_t i = 0; i < b.k; ++i)
        yi.push_back(2 * b.d + i);
    PolyMap y = PolyMap::select(n, yi);
    PolyMap a = compose(tangent(b.xi()), v), l = compose(lambda, y);
    return compose(structure_nat(GenKind::Plus, N), pair_over_base(a, l, N));
}

CheckReport check_universality(const TrivialBundle& b, const std::optional<PolyMap>& lambda_opt)
{
    CheckReport r;
    PolyMap lambda = lambda_opt ? *lambda_opt : b.lift();
    std::size_t N = b.total();
    PolyMap q = b.q();

    PolyMap mu = bundle_mu(b, lambda);
    PolyMap left = compose(q, PolyMap::select(b.d + 2 * b.k, range(0, N)));
    LimitResult m = certify_pullback(mu, left, tangent(q), structure_nat(GenKind::Zero, b.d));
    r.add("mu pullback", m.ok, m.witness);

    PolyMap nu = bundle_nu(b, lambda);
    LimitResult v = certify_pullback(nu, PolyMap::select(2 * b.d + b.k, range(0, b.d)),
                                     structure_nat(GenKind::P, N), b.xi());
    r.add("nu pullback", v.ok, v.witness);

    // non-singularity: lambda equalizes T.e and 0.p, also after T and T^2
    PolyMap e = compose(structure_nat(GenKind::P, N), lambda);
    PolyMap f = tangent(e), g = compose(structure_nat(GenKind::Zero, N), structure_nat(GenKind::P, N));
    LimitResult base_fork;
    for (unsigned power = 0; power <= 2; ++power) {
        WeilAlgebra V(std::vector<unsigned>(power, 1));
        LimitResult res = certify_equalizer(weil_prolong(V, lambda), weil_prolong(V, f), weil_prolong(V, g));
        r.accumulate("non-singular", res.ok, "T^" + std::to_string(power) + ": " + res.witness);
        if (power == 0)
            base_fork = res;
    }

    if (base_fork.ok) {
        // addition recovered: R(lambda(y1) + lambda(y2)) = y1 +_q y2
        std::size_t n = b.d + 2 * b.k;
        PolyMap y1 = PolyMap::select(n, range(0, N));
        std::vector<std::size_t> yi = range(0, b.d);
        for (std::size_t i = 0; i < b.k; ++i)
            yi.push_back(N + i);
        PolyMap y2 = PolyMap::select(n, yi);
        PolyMap sum = compose(structure_nat(GenKind::Plus, N),
                              pair_over_base(compose(lambda, y1), compose(lambda, y2), N));
        PolyMap recovered = compose(base_fork.retraction, sum);
        std::string w = difference_witness(recovered, b.fiber_add());
        r.add("addition recovered", w.empty(), w);
    } else {
        r.add("addition recovered", false, "no retraction: lift is singular");
    }
    return r;
}

Connection make_connection(const TrivialBundle& b, const PolyMap& kappa, const PolyMap& nabla)
{
    std::size_t N = b.total();
    if (kappa.src != 2 * N || kappa.tgt != N)
        throw InputError("connection: kappa must map " + std::to_string(2 * N) + " -> " + std::to_string(N));
    if (nabla.src != N + b.d || nabla.tgt != 2 * N)
        throw InputError("connection: nabla must map " + std::to_string(N + b.d) + " -> " + std::to_string(2 * N));
    return Connection{b, kappa, nabla};
}

Connection trivial_connection(const TrivialBundle& b)
{
    std::size_t N = b.total();
    // kappa(m,e,dm,de) = (m,de)
    PolyMap kappa = PolyMap::select(2 * N, [&] {
        auto v = range(0, b.d);
        for (std::size_t i = 0; i < b.k; ++i)
            v.push_back(N + b.d + i);
        return v;
    }());
    // nabla(m,e,dm) = (m,e,dm,0)
    PolyMap nabla = pair(PolyMap::identity(N + b.d), PolyMap::zero(N + b.d, b.k));
    return Connection{b, kappa, nabla};
}

CheckReport check_connection(const Connection& c)
{
    CheckReport r;
    const TrivialBundle& b = c.bundle;
    std::size_t N = b.total(), d = b.d, k = b.k, S = N + d;
    PolyMap lambda = b.lift();
    PolyMap p = structure_nat(GenKind::P, N);
    PolyMap ell = structure_nat(GenKind::Ell, N), flip = structure_nat(GenKind::Flip, N);

    expect_eq(r, "kappa retraction", compose(c.kappa, lambda), PolyMap::identity(N));
    // (p, T.q): TE -> E x_M TM
    PolyMap pTq = pair(p, PolyMap::select(2 * N, [&] {
                           auto v = range(N, d);
                           return v;
                       }()));
    expect_eq(r, "nabla section", compose(pTq, c.nabla), PolyMap::identity(S));

    PolyMap Tk = tangent(c.kappa);
    expect_eq(r, "kappa linear over p", compose(lambda, c.kappa), compose(Tk, ell));
    expect_eq(r, "kappa linear over T.q", compose(lambda, c.kappa), compose(Tk, compose(flip, tangent(lambda))));

    // lifts on E x_M TM over TM (in e) and over E (in dm)
    auto sel = [&](std::size_t i) { return Polynomial::variable(S, i); };
    auto zero = Polynomial(S);
    std::vector<Polynomial> l1, l2;
    for (std::size_t i = 0; i < d; ++i) l1.push_back(sel(i));
    for (std::size_t i = 0; i < k; ++i) l1.push_back(zero);
    for (std::size_t i = 0; i < d; ++i) l1.push_back(sel(N + i));
    for (std::size_t i = 0; i < d; ++i) l1.push_back(zero);
    for (std::size_t i = 0; i < k; ++i) l1.push_back(sel(d + i));
    for (std::size_t i = 0; i < d; ++i) l1.push_back(zero);
    for (std::size_t i = 0; i < N; ++i) l2.push_back(sel(i));
    for (std::size_t i = 0; i < d; ++i) l2.push_back(zero);
    for (std::size_t i = 0; i < N; ++i) l2.push_back(zero);
    for (std::size_t i = 0; i < d; ++i) l2.push_back(sel(N + i));
    PolyMap Tn = tangent(c.nabla);
    expect_eq(r, "nabla linear over TM", compose(Tn, PolyMap(S, l1)),
              compose(flip, compose(tangent(lambda), c.nabla)));
    expect_eq(r, "nabla linear over E", compose(Tn, PolyMap(S, l2)), compose(ell, c.nabla));

    // full: kappa.nabla = xi.q.pi0 and nabla(p,T.q) +_p mu(p,kappa) = id
    PolyMap pi0 = PolyMap::select(S, range(0, N));
    expect_eq(r, "full kappa-nabla", compose(c.kappa, c.nabla), compose(b.xi(), compose(b.q(), pi0)));
    {
        PolyMap h = compose(c.nabla, pTq);
        std::vector<Polynomial> pk = p.comps;
        PolyMap kap = c.kappa;
        for (std::size_t i = 0; i < k; ++i)
            pk.push_back(kap.comps[d + i]);
        PolyMap v = compose(bundle_mu(b, lambda), PolyMap(2 * N, pk));
        PolyMap sum = compose(structure_nat(GenKind::Plus, N), pair_over_base(h, v, N));
        expect_eq(r, "full decomposition", sum, PolyMap::identity(2 * N));
    }
    PolyMap TTk = compose(c.kappa, Tk);
    expect_eq(r, "flat", compose(TTk, flip), TTk);
    return r;
}

}  // namespace tcat
