#include "tcat/limits.hpp"

#include "tcat/linalg.hpp"

namespace tcat {

namespace {

// The coefficient of y_k when p is linear in y_k, else nullopt.
std::optional<Polynomial> linear_coefficient(const Polynomial& p, std::size_t k)
{
    Polynomial coeff(p.nvars());
    bool seen = false;
    for (const auto& [e, c] : p.terms()) {
        if (e[k] > 1)
            return std::nullopt;
        if (e[k] == 1) {
            Exponent f = e;
            f[k] = 0;
            coeff.add_term(f, c);
            seen = true;
        }
    }
    if (!seen)
        return std::nullopt;
    return coeff;
}

bool find_retraction(const PolyMap& K, PolyMap& R, std::string& witness)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < K.src; ++i) {
        Polynomial v = Polynomial::variable(K.src, i);
        std::size_t j = 0;
        while (j < K.tgt && K.comps[j] != v)
            ++j;
        if (j == K.tgt)
            break;
        idx.push_back(j);
    }
    if (idx.size() == K.src) {
        R = PolyMap::select(K.tgt, idx);
        return true;
    }
    auto parts = affine_parts(K);
    if (!parts) {
        witness = "comparison map is neither a coordinate embedding nor affine";
        return false;
    }
    const auto& [A, b] = *parts;
    auto L = left_inverse(A, K.src);
    if (!L) {
        auto ker = kernel(A, K.src);
        std::string v;
        for (std::size_t i = 0; i < ker[0].size(); ++i)
            v += (i ? "," : "") + ker[0][i].get_str();
        witness = "comparison map not injective, kernel vector (" + v + ")";
        return false;
    }
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < K.src; ++i) {
        Polynomial p(K.tgt);
        for (std::size_t j = 0; j < K.tgt; ++j) {
            p += Polynomial::variable(K.tgt, j) * (*L)[i][j];
            p -= Polynomial::constant(K.tgt, (*L)[i][j] * b[j]);
        }
        comps.push_back(p);
    }
    R = PolyMap(K.tgt, comps);
    return true;
}

}  // namespace

bool parametrize(std::size_t nvars, std::vector<Polynomial> eqs, PolyMap& param, std::string& witness)
{
    std::vector<Polynomial> sol;  // current expression of each coordinate
    for (std::size_t i = 0; i < nvars; ++i)
        sol.push_back(Polynomial::variable(nvars, i));
    std::vector<bool> eliminated(nvars, false);

    for (;;) {
        std::vector<Polynomial> live;
        for (auto& e : eqs)
            if (!e.is_zero())
                live.push_back(e);
        eqs.swap(live);
        if (eqs.empty())
            break;
        bool progress = false;
        for (std::size_t q = 0; q < eqs.size() && !progress; ++q) {
            for (std::size_t k = 0; k < nvars && !progress; ++k) {
                if (eliminated[k])
                    continue;
                auto c = linear_coefficient(eqs[q], k);
                if (!c || !c->is_constant())
                    continue;
                Rat a = c->constant_term();
                // y_k = -(eq - a*y_k)/a
                Polynomial rest = eqs[q] - Polynomial::variable(nvars, k) * a;
                Polynomial value = rest * (Rat(-1) / a);
                std::vector<Polynomial> subst = [&] {
                    std::vector<Polynomial> s;
                    for (std::size_t i = 0; i < nvars; ++i)
                        s.push_back(i == k ? value : Polynomial::variable(nvars, i));
                    return s;
                }();
                for (auto& e : eqs)
                    e = e.substitute(subst, nvars);
                for (auto& s : sol)
                    s = s.substitute(subst, nvars);
                eliminated[k] = true;
                progress = true;
            }
        }
        if (!progress) {
            witness = "cannot solve limit equations, residual " + eqs[0].str();
            return false;
        }
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < nvars; ++i)
        if (!eliminated[i])
            free.push_back(i);
    std::vector<std::size_t> back(nvars, 0);
    for (std::size_t j = 0; j < free.size(); ++j)
        back[free[j]] = j;
    std::vector<Polynomial> comps;
    for (auto& s : sol)
        comps.push_back(s.rename(free.size(), back));
    param = PolyMap(free.size(), comps);
    return true;
}

LimitResult certify_limit(const PolyMap& K, const std::vector<Polynomial>& eqs)
{
    LimitResult res;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        Polynomial v = eqs[i].substitute(K.comps, K.src);
        if (!v.is_zero()) {
            res.witness = "cone does not commute, equation " + std::to_string(i + 1) + " gives " + v.str();
            return res;
        }
    }
    if (!find_retraction(K, res.retraction, res.witness))
        return res;
    if (compose(res.retraction, K) != PolyMap::identity(K.src)) {
        res.witness = "retraction fails: " + difference_witness(compose(res.retraction, K), PolyMap::identity(K.src));
        return res;
    }
    if (!parametrize(K.tgt, eqs, res.parametrization, res.witness))
        return res;
    const PolyMap& phi = res.parametrization;
    PolyMap back = compose(K, compose(res.retraction, phi));
    if (back != phi) {
        res.witness = "limit point outside the image of the comparison: " + difference_witness(back, phi);
        return res;
    }
    res.ok = true;
    return res;
}

LimitResult certify_pullback(const PolyMap& top, const PolyMap& left, const PolyMap& right, const PolyMap& bottom)
{
    if (top.src != left.src || right.src != top.tgt || bottom.src != left.tgt || right.tgt != bottom.tgt)
        throw std::invalid_argument("certify_pullback: shape mismatch");
    std::size_t b = top.tgt, c = left.tgt;
    PolyMap lhs = compose(right, proj_first(b, c));
    PolyMap rhs = compose(bottom, proj_second(b, c));
    std::vector<Polynomial> eqs;
    for (std::size_t i = 0; i < lhs.tgt; ++i)
        eqs.push_back(lhs.comps[i] - rhs.comps[i]);
    return certify_limit(pair(top, left), eqs);
}

LimitResult certify_equalizer(const PolyMap& e, const PolyMap& f, const PolyMap& g)
{
    std::vector<Polynomial> eqs;
    for (std::size_t i = 0; i < f.tgt; ++i)
        eqs.push_back(f.comps[i] - g.comps[i]);
    return certify_limit(e, eqs);
}

}  // namespace tcat
