#include "tcat/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace tcat {

static unsigned total_degree(const Exponent& e)
{
    return std::accumulate(e.begin(), e.end(), 0u);
}

bool ExponentOrder::operator()(const Exponent& a, const Exponent& b) const
{
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(std::size_t nvars, const Rat& c)
{
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i)
{
    Polynomial p(nvars);
    Exponent e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, 1);
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rat Polynomial::constant_term() const
{
    return coefficient(Exponent(nvars_, 0));
}

unsigned Polynomial::degree() const
{
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

void Polynomial::add_term(const Exponent& e, const Rat& c)
{
    if (c == 0)
        return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0)
        terms_.erase(it);
}

Rat Polynomial::coefficient(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (terms_.empty() && nvars_ == 0)
        nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (terms_.empty() && nvars_ == 0)
        nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rat& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_)
        kv.second *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    Polynomial out(std::max(a.nvars_, b.nvars_));
    Exponent e(out.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator-() const
{
    Polynomial p = *this;
    for (auto& kv : p.terms_)
        kv.second = -kv.second;
    return p;
}

bool Polynomial::operator==(const Polynomial& o) const
{
    if (terms_.size() != o.terms_.size())
        return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
        if (e != it->first || c != it->second)
            return false;
        ++it;
    }
    return true;
}

Polynomial Polynomial::pow(unsigned k) const
{
    Polynomial result = constant(nvars_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t i) const
{
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0)
            continue;
        Exponent f = e;
        f[i] -= 1;
        out.add_term(f, c * e[i]);
    }
    return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& vals, std::size_t out_nvars) const
{
    // powers[i][k] = vals[i]^k, filled lazily
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty())
            cache.push_back(constant(out_nvars, 1));
        while (cache.size() <= k)
            cache.push_back(cache.back() * vals[i]);
        return cache[k];
    };
    Polynomial out(out_nvars);
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(out_nvars, c);
        for (std::size_t i = 0; i < nvars_ && !term.is_zero(); ++i)
            if (e[i])
                term = term * power(i, e[i]);
        out += term;
    }
    return out;
}

Rat Polynomial::evaluate(const std::vector<Rat>& point) const
{
    Rat total = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                t *= point[i];
        total += t;
    }
    return total;
}

Polynomial Polynomial::rename(std::size_t new_nvars, const std::vector<std::size_t>& map) const
{
    Polynomial out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponent f(new_nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i)
            f[map[i]] += e[i];
        out.add_term(f, c);
    }
    return out;
}

bool Polynomial::depends_on(std::size_t i) const
{
    for (const auto& kv : terms_)
        if (kv.first[i])
            return true;
    return false;
}

std::vector<std::string> default_names(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("x" + std::to_string(i + 1));
    return names;
}

std::string Polynomial::str() const
{
    return str(default_names(nvars_));
}

std::string Polynomial::str(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            if (!mono.empty())
                mono += "*";
            mono += names[i];
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << mono;
        else
            os << mag.get_str() << "*" << mono;
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& s, const std::vector<std::string>& names) : s_(s), names_(names) {}

    Polynomial run()
    {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError("polynomial \"" + s_ + "\": " + msg + " at position " + std::to_string(pos_), pos_);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr()
    {
        Polynomial p = term();
        for (;;) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                return p;
        }
    }

    Polynomial term()
    {
        Polynomial p = unary();
        for (;;) {
            if (eat('*')) {
                p = p * unary();
            } else if (eat('/')) {
                std::size_t at = pos_;
                Polynomial d = unary();
                if (!d.is_constant() || d.constant_term() == 0) {
                    pos_ = at;
                    fail("division by a non-constant or zero");
                }
                p *= Rat(1) / d.constant_term();
            } else {
                return p;
            }
        }
    }

    Polynomial unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        Polynomial base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    Polynomial atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')'))
                fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return Polynomial::constant(names_.size(), Rat(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            auto it = std::find(names_.begin(), names_.end(), id);
            if (it == names_.end()) {
                pos_ = start;
                fail("unknown variable '" + id + "'");
            }
            return Polynomial::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, std::size_t nvars)
{
    return parse(text, default_names(nvars));
}

Polynomial Polynomial::parse(const std::string& text, const std::vector<std::string>& names)
{
    std::vector<std::string> n = names;
    Polynomial p = PolyParser(text, n).run();
    if (p.nvars_ != names.size()) {
        Polynomial q(names.size());
        for (const auto& [e, c] : p.terms_)
            q.add_term(e.empty() ? Exponent(names.size(), 0) : e, c);
        return q;
    }
    return p;
}

PolyMap::PolyMap(std::size_t s, std::vector<Polynomial> c) : src(s), tgt(c.size()), comps(std::move(c))
{
    for (auto& p : comps)
        if (p.nvars() != src) {
            Polynomial q(src);
            for (const auto& [e, k] : p.terms()) {
                Exponent f(src, 0);
                for (std::size_t i = 0; i < e.size() && i < src; ++i)
                    f[i] = e[i];
                q.add_term(f, k);
            }
            p = q;
        }
}

PolyMap PolyMap::identity(std::size_t n)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return select(n, idx);
}

PolyMap PolyMap::zero(std::size_t src, std::size_t tgt)
{
    return PolyMap(src, std::vector<Polynomial>(tgt, Polynomial(src)));
}

PolyMap PolyMap::select(std::size_t src, const std::vector<std::size_t>& idx)
{
    std::vector<Polynomial> c;
    for (auto i : idx)
        c.push_back(Polynomial::variable(src, i));
    return PolyMap(src, std::move(c));
}

PolyMap PolyMap::linear(const std::vector<std::vector<Rat>>& rows, std::size_t src)
{
    std::vector<Polynomial> c;
    for (const auto& row : rows) {
        Polynomial p(src);
        for (std::size_t j = 0; j < src; ++j)
            p += Polynomial::variable(src, j) * row[j];
        c.push_back(p);
    }
    return PolyMap(src, std::move(c));
}

PolyMap PolyMap::parse(const std::vector<std::string>& texts, std::size_t src)
{
    std::vector<Polynomial> c;
    for (const auto& t : texts)
        c.push_back(Polynomial::parse(t, src));
    return PolyMap(src, std::move(c));
}

bool PolyMap::operator==(const PolyMap& o) const
{
    return src == o.src && tgt == o.tgt && comps == o.comps;
}

std::string PolyMap::str() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i)
            s += ", ";
        s += comps[i].str();
    }
    return s + ")";
}

unsigned PolyMap::degree() const
{
    unsigned d = 0;
    for (const auto& p : comps)
        d = std::max(d, p.degree());
    return d;
}

PolyMap compose(const PolyMap& g, const PolyMap& f)
{
    if (g.src != f.tgt)
        throw std::invalid_argument("compose: dimension mismatch " + std::to_string(f.tgt) + " vs " +
                                    std::to_string(g.src));
    std::vector<Polynomial> c;
    c.reserve(g.tgt);
    for (const auto& p : g.comps)
        c.push_back(p.substitute(f.comps, f.src));
    return PolyMap(f.src, std::move(c));
}

PolyMap pair(const PolyMap& f, const PolyMap& g)
{
    if (f.src != g.src)
        throw std::invalid_argument("pair: source mismatch");
    std::vector<Polynomial> c = f.comps;
    c.insert(c.end(), g.comps.begin(), g.comps.end());
    return PolyMap(f.src, std::move(c));
}

PolyMap proj_first(std::size_t a, std::size_t b)
{
    std::vector<std::size_t> idx(a);
    std::iota(idx.begin(), idx.end(), 0);
    return PolyMap::select(a + b, idx);
}

PolyMap proj_second(std::size_t a, std::size_t b)
{
    std::vector<std::size_t> idx(b);
    std::iota(idx.begin(), idx.end(), a);
    return PolyMap::select(a + b, idx);
}

PolyMap product(const PolyMap& f, const PolyMap& g)
{
    return pair(compose(f, proj_first(f.src, g.src)), compose(g, proj_second(f.src, g.src)));
}

PolyMap add(const PolyMap& f, const PolyMap& g)
{
    if (f.src != g.src || f.tgt != g.tgt)
        throw std::invalid_argument("add: shape mismatch");
    PolyMap h = f;
    for (std::size_t i = 0; i < h.tgt; ++i)
        h.comps[i] += g.comps[i];
    return h;
}

PolyMap sub(const PolyMap& f, const PolyMap& g)
{
    return add(f, scale(g, -1));
}

PolyMap scale(const PolyMap& f, const Rat& c)
{
    PolyMap h = f;
    for (auto& p : h.comps)
        p *= c;
    return h;
}

PolyMap differential(const PolyMap& f)
{
    std::size_t n = f.src;
    std::vector<std::size_t> xs(n);
    std::iota(xs.begin(), xs.end(), 0);
    std::vector<Polynomial> c;
    for (const auto& p : f.comps) {
        Polynomial lifted = p.rename(2 * n, xs);
        Polynomial d(2 * n);
        for (std::size_t i = 0; i < n; ++i)
            d += lifted.derivative(i) * Polynomial::variable(2 * n, n + i);
        c.push_back(d);
    }
    return PolyMap(2 * n, std::move(c));
}

bool is_linear(const PolyMap& f)
{
    std::size_t n = f.src;
    PolyMap zv = pair(PolyMap::zero(n, n), PolyMap::identity(n));
    return compose(differential(f), zv) == f;
}

std::string difference_witness(const PolyMap& lhs, const PolyMap& rhs)
{
    if (lhs.src != rhs.src || lhs.tgt != rhs.tgt)
        return "shape " + std::to_string(lhs.src) + "->" + std::to_string(lhs.tgt) + " vs " +
               std::to_string(rhs.src) + "->" + std::to_string(rhs.tgt);
    for (std::size_t i = 0; i < lhs.tgt; ++i) {
        Polynomial d = lhs.comps[i] - rhs.comps[i];
        if (!d.is_zero())
            return "component " + std::to_string(i + 1) + " differs by " + d.str();
    }
    return "";
}

Polynomial random_polynomial(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg, int coeff_bound,
                             unsigned max_terms)
{
    std::uniform_int_distribution<unsigned> nterms(1, max_terms);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::uniform_int_distribution<std::size_t> var(0, nvars ? nvars - 1 : 0);
    std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
    Polynomial p(nvars);
    unsigned k = nterms(rng);
    for (unsigned t = 0; t < k; ++t) {
        Exponent e(nvars, 0);
        unsigned d = nvars ? deg(rng) : 0;
        for (unsigned j = 0; j < d; ++j)
            e[var(rng)] += 1;
        p.add_term(e, coeff(rng));
    }
    return p;
}

PolyMap random_map(std::mt19937_64& rng, std::size_t src, std::size_t tgt, unsigned max_deg, int coeff_bound)
{
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < tgt; ++i)
        c.push_back(random_polynomial(rng, src, max_deg, coeff_bound));
    return PolyMap(src, std::move(c));
}

namespace {

void check_eq(CheckReport& r, const std::string& name, const PolyMap& f, const PolyMap& lhs, const PolyMap& rhs)
{
    std::string w = difference_witness(lhs, rhs);
    r.accumulate(name, w.empty(), w.empty() ? "" : "f = " + f.str() + ": " + w);
}

}  // namespace

CheckReport check_cdc_axioms(const std::vector<PolyMap>& sample, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    CheckReport r;
    for (const auto& f : sample) {
        std::size_t n = f.src, m = f.tgt;
        PolyMap Df = differential(f);

        // CD.1: D[f+g] = D[f]+D[g], D[0] = 0
        PolyMap g = random_map(rng, n, m, 3, 3);
        check_eq(r, "CD.1", f, differential(add(f, g)), add(Df, differential(g)));
        check_eq(r, "CD.1", f, differential(PolyMap::zero(n, m)), PolyMap::zero(2 * n, m));

        // CD.2: additive in the direction
        PolyMap x = PolyMap::select(3 * n, [&] { std::vector<std::size_t> v(n); std::iota(v.begin(), v.end(), 0); return v; }());
        PolyMap v = PolyMap::select(3 * n, [&] { std::vector<std::size_t> w(n); std::iota(w.begin(), w.end(), n); return w; }());
        PolyMap w = PolyMap::select(3 * n, [&] { std::vector<std::size_t> u(n); std::iota(u.begin(), u.end(), 2 * n); return u; }());
        check_eq(r, "CD.2", f, compose(Df, pair(x, add(v, w))), add(compose(Df, pair(x, v)), compose(Df, pair(x, w))));
        check_eq(r, "CD.2", f, compose(Df, pair(proj_first(n, n), PolyMap::zero(2 * n, n))), PolyMap::zero(2 * n, m));

        // CD.3: identity and projections
        check_eq(r, "CD.3", f, differential(PolyMap::identity(n)), proj_second(n, n));
        for (std::size_t i = 0; i < n; ++i) {
            PolyMap pi = PolyMap::select(n, {i});
            check_eq(r, "CD.3", f, differential(pi), compose(pi, proj_second(n, n)));
        }

        // CD.4: pairing
        PolyMap h = random_map(rng, n, dim(rng), 3, 3);
        check_eq(r, "CD.4", f, differential(pair(f, h)), pair(Df, differential(h)));

        // CD.5: chain rule D[k.f] = D[k].(f.pi0, D[f])
        PolyMap k = random_map(rng, m, dim(rng), 2, 3);
        check_eq(r, "CD.5", f, differential(compose(k, f)),
                 compose(differential(k), pair(compose(f, proj_first(n, n)), Df)));

        // CD.6: D[D[f]]((a,0),(0,d)) = D[f](a,d)
        PolyMap DDf = differential(Df);
        PolyMap a = proj_first(n, n), d = proj_second(n, n), z = PolyMap::zero(2 * n, n);
        check_eq(r, "CD.6", f, compose(DDf, pair(pair(a, z), pair(z, d))), Df);

        // CD.7: D[D[f]]((a,b),(c,d)) = D[D[f]]((a,c),(b,d))
        std::vector<std::size_t> swap;
        for (std::size_t i = 0; i < n; ++i) swap.push_back(i);
        for (std::size_t i = 0; i < n; ++i) swap.push_back(2 * n + i);
        for (std::size_t i = 0; i < n; ++i) swap.push_back(n + i);
        for (std::size_t i = 0; i < n; ++i) swap.push_back(3 * n + i);
        check_eq(r, "CD.7", f, DDf, compose(DDf, PolyMap::select(4 * n, swap)));
    }
    for (const char* name : {"CD.1", "CD.2", "CD.3", "CD.4", "CD.5", "CD.6", "CD.7"})
        r.accumulate(name, true);
    return r;
}

}  // namespace tcat
