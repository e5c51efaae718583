#include "tcat/wterm.hpp"

#include <cctype>
#include <functional>

#include "tcat/report.hpp"

namespace tcat {

namespace {

std::shared_ptr<WTerm> node(WTerm::Kind k)
{
    auto t = std::make_shared<WTerm>();
    t->kind = k;
    return t;
}

[[noreturn]] void boundary_error(const std::string& what, const WeilAlgebra& a, const WeilAlgebra& b,
                                 std::size_t pos = std::string::npos)
{
    std::string msg = "boundary mismatch in " + what + ": " + a.str() + " vs " + b.str();
    if (pos != std::string::npos)
        msg += " at position " + std::to_string(pos);
    throw InputError(msg, pos);
}

}  // namespace

TermPtr make_gen(GenKind kind, const WeilAlgebra& annot, unsigned i, unsigned n)
{
    auto t = node(WTerm::Kind::Gen);
    t->gen = kind;
    t->annot = annot;
    t->i = i;
    t->n = n;
    try {
        t->denotation = generator(kind, annot, i, n);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    t->src = t->denotation.source();
    t->tgt = t->denotation.target();
    return t;
}

TermPtr make_id(const WeilAlgebra& v)
{
    return make_gen(GenKind::Id, v);
}

TermPtr make_compose(const TermPtr& g, const TermPtr& f)
{
    if (f->tgt != g->src)
        boundary_error("composition", f->tgt, g->src);
    auto t = node(WTerm::Kind::Compose);
    t->a = g;
    t->b = f;
    t->src = f->src;
    t->tgt = g->tgt;
    t->denotation = compose_morphisms(g->denotation, f->denotation);
    return t;
}

TermPtr make_tensor(const TermPtr& a, const TermPtr& b)
{
    auto t = node(WTerm::Kind::Tensor);
    t->a = a;
    t->b = b;
    t->src = tensor(a->src, b->src);
    t->tgt = tensor(a->tgt, b->tgt);
    t->denotation = tensor_morphisms(a->denotation, b->denotation);
    return t;
}

TermPtr make_pairing(const TermPtr& a, const TermPtr& b, std::size_t k)
{
    if (a->src != b->src)
        boundary_error("pairing sources", a->src, b->src);
    auto t = node(WTerm::Kind::Pair);
    t->a = a;
    t->b = b;
    t->pair_pos = k;
    try {
        t->denotation = pair_morphisms(a->denotation, b->denotation, k);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("pairing ") + a->tgt.str() + " with " + b->tgt.str() + ": " + e.what());
    }
    t->src = a->src;
    t->tgt = t->denotation.target();
    return t;
}

static std::optional<std::size_t> default_pair_position(const WeilAlgebra& x, const WeilAlgebra& y)
{
    if (x.factors() == 1 && y.factors() == 1)
        return 0;
    if (x.factors() != y.factors() || x.factors() == 0)
        return std::nullopt;
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < x.factors(); ++i)
        if (x.widths()[i] != y.widths()[i]) {
            if (pos)
                return std::nullopt;
            pos = i;
        }
    return pos;
}

TermPtr make_pairing(const TermPtr& a, const TermPtr& b)
{
    auto k = default_pair_position(a->tgt, b->tgt);
    if (!k)
        throw InputError("pairing " + a->tgt.str() + " with " + b->tgt.str() + ": factor position needed, write <t1,t2>{k}");
    return make_pairing(a, b, *k);
}

namespace {

class TermParser {
public:
    explicit TermParser(const std::string& s) : s_(s) {}

    TermPtr run()
    {
        TermPtr t = comp();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return t;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at = std::string::npos) const
    {
        if (at == std::string::npos)
            at = pos_;
        throw InputError("term \"" + s_ + "\": " + msg + " at position " + std::to_string(at), at);
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

    void expect(char c)
    {
        if (!eat(c))
            fail(std::string("expected '") + c + "'");
    }

    // Wraps constructor errors with the position of the operator.
    template <class F>
    TermPtr at(std::size_t where, F&& f)
    {
        try {
            return f();
        } catch (const InputError& e) {
            if (e.pos != std::string::npos)
                throw;
            fail(e.what(), where);
        }
    }

    TermPtr comp()
    {
        TermPtr t = tens();
        for (;;) {
            skip();
            std::size_t where = pos_;
            if (!eat('.'))
                return t;
            TermPtr rhs = tens();
            t = at(where, [&] { return make_compose(t, rhs); });
        }
    }

    TermPtr tens()
    {
        TermPtr t = atom();
        for (;;) {
            skip();
            std::size_t where = pos_;
            if (!eat('*'))
                return t;
            TermPtr rhs = atom();
            t = at(where, [&] { return make_tensor(t, rhs); });
        }
    }

    WeilAlgebra annotation()
    {
        expect('{');
        std::size_t start = pos_;
        std::size_t close = s_.find('}', pos_);
        if (close == std::string::npos)
            fail("expected '}'");
        pos_ = close + 1;
        try {
            return WeilAlgebra::parse(s_.substr(start, close - start));
        } catch (const InputError& e) {
            fail(e.what(), start);
        }
    }

    unsigned number()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
    }

    TermPtr atom()
    {
        skip();
        std::size_t start = pos_;
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            TermPtr t = comp();
            expect(')');
            return t;
        }
        if (c == '<') {
            ++pos_;
            TermPtr a = comp();
            expect(',');
            TermPtr b = comp();
            expect('>');
            skip();
            if (pos_ < s_.size() && s_[pos_] == '{') {
                ++pos_;
                unsigned k = number();
                expect('}');
                if (k == 0)
                    fail("pair position starts at 1", start);
                return at(start, [&] { return make_pairing(a, b, k - 1); });
            }
            return at(start, [&] { return make_pairing(a, b); });
        }
        if (c == '0') {
            ++pos_;
            return make_gen(GenKind::Zero);
        }
        if (c == '+') {
            ++pos_;
            return make_gen(GenKind::Plus);
        }
        if (c == '!') {
            ++pos_;
            skip();
            if (pos_ >= s_.size() || s_[pos_] != '{')
                fail("'!' needs an object annotation such as !{W2}");
            return make_gen(GenKind::Bang, annotation());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "p")
                return make_gen(GenKind::P);
            if (id == "l")
                return make_gen(GenKind::Ell);
            if (id == "c")
                return make_gen(GenKind::Flip);
            if (id == "id") {
                skip();
                if (pos_ >= s_.size() || s_[pos_] != '{')
                    fail("'id' needs an object annotation such as id{W}");
                return make_id(annotation());
            }
            if (id == "proj") {
                expect('{');
                unsigned i = number();
                expect(',');
                unsigned n = number();
                expect('}');
                return at(start, [&] { return make_gen(GenKind::Proj, WeilAlgebra(), i, n); });
            }
            fail("unknown generator '" + id + "'", start);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace

TermPtr parse_term(const std::string& text)
{
    return TermParser(text).run();
}

std::string print_term(const TermPtr& t)
{
    switch (t->kind) {
    case WTerm::Kind::Gen:
        switch (t->gen) {
        case GenKind::P: return "p";
        case GenKind::Zero: return "0";
        case GenKind::Plus: return "+";
        case GenKind::Ell: return "l";
        case GenKind::Flip: return "c";
        case GenKind::Bang: return "!{" + t->annot.str() + "}";
        case GenKind::Id: return "id{" + t->annot.str() + "}";
        case GenKind::Proj: return "proj{" + std::to_string(t->i) + "," + std::to_string(t->n) + "}";
        }
        break;
    case WTerm::Kind::Compose: {
        std::string rhs = print_term(t->b);
        if (t->b->kind == WTerm::Kind::Compose)
            rhs = "(" + rhs + ")";
        return print_term(t->a) + " . " + rhs;
    }
    case WTerm::Kind::Tensor: {
        std::string lhs = print_term(t->a), rhs = print_term(t->b);
        if (t->a->kind == WTerm::Kind::Compose)
            lhs = "(" + lhs + ")";
        if (t->b->kind == WTerm::Kind::Compose || t->b->kind == WTerm::Kind::Tensor)
            rhs = "(" + rhs + ")";
        return lhs + " * " + rhs;
    }
    case WTerm::Kind::Pair: {
        std::string s = "<" + print_term(t->a) + ", " + print_term(t->b) + ">";
        if (t->a->tgt.factors() > 1 || t->b->tgt.factors() > 1)
            s += "{" + std::to_string(t->pair_pos + 1) + "}";
        return s;
    }
    }
    return "?";
}

bool same_tree(const TermPtr& x, const TermPtr& y)
{
    if (x->kind != y->kind)
        return false;
    switch (x->kind) {
    case WTerm::Kind::Gen:
        return x->gen == y->gen && x->annot == y->annot && x->i == y->i && x->n == y->n;
    case WTerm::Kind::Pair:
        if (x->pair_pos != y->pair_pos)
            return false;
        [[fallthrough]];
    default:
        return same_tree(x->a, y->a) && same_tree(x->b, y->b);
    }
}

bool contains_gen(const TermPtr& t, GenKind kind)
{
    if (t->kind == WTerm::Kind::Gen)
        return t->gen == kind;
    return contains_gen(t->a, kind) || contains_gen(t->b, kind);
}

std::size_t term_size(const TermPtr& t)
{
    if (t->kind == WTerm::Kind::Gen)
        return 1;
    return 1 + term_size(t->a) + term_size(t->b);
}

WeilMorphism eval_weil(const TermPtr& t)
{
    return t->denotation;
}

bool terms_equal(const TermPtr& t1, const TermPtr& t2)
{
    if (t1->src != t2->src)
        boundary_error("equality (sources)", t1->src, t2->src);
    if (t1->tgt != t2->tgt)
        boundary_error("equality (targets)", t1->tgt, t2->tgt);
    return morphisms_equal(eval_weil(t1), eval_weil(t2));
}

PolyMap eval_model(const TermPtr& t, const ModelInterface& m)
{
    switch (t->kind) {
    case WTerm::Kind::Gen:
        return m.eval_generator(*t);
    case WTerm::Kind::Compose:
        return compose(eval_model(t->a, m), eval_model(t->b, m));
    case WTerm::Kind::Tensor:
        return m.eval_tensor(*t);
    case WTerm::Kind::Pair:
        return m.eval_pair(*t, eval_model(t->a, m), eval_model(t->b, m));
    }
    throw std::logic_error("eval_model: bad node");
}

PolyMap pair_by_labels(const WTerm& node, const PolyMap& a, const PolyMap& b, const BlockLayout& layout)
{
    const WeilAlgebra& y = node.tgt;
    const WeilAlgebra& y1 = node.a->tgt;
    const WeilAlgebra& y2 = node.b->tgt;
    std::size_t k = node.pair_pos;
    unsigned w1 = y1.widths()[k];
    std::vector<Polynomial> comps;
    for (std::size_t mono = 0; mono < y.dim(); ++mono) {
        auto sel = y.selection(mono);
        const PolyMap* from = &a;
        std::size_t src_mono;
        if (sel[k] <= w1) {
            src_mono = y1.index(sel);
        } else {
            sel[k] -= w1;
            src_mono = y2.index(sel);
            from = &b;
        }
        std::size_t off = layout.offset(src_mono);
        for (std::size_t j = 0; j < layout.size(mono); ++j)
            comps.push_back(from->comps[off + j]);
    }
    return PolyMap(a.src, comps);
}

// ---- random terms -------------------------------------------------------

namespace {

const std::vector<TermPtr>& moves()
{
    static const std::vector<TermPtr> m = [] {
        std::vector<TermPtr> v;
        for (const char* s : {"p", "0", "+", "l", "c", "proj{1,2}", "proj{2,2}", "<id{W}, 0 . !{W}>",
                              "<0 . !{W}, id{W}>", "(+ * id{W}) . <(id{W} * 0) . proj{1,2}, l . proj{2,2}>{1}"})
            v.push_back(parse_term(s));
        return v;
    }();
    return m;
}

WeilAlgebra slice(const WeilAlgebra& v, std::size_t from, std::size_t to)
{
    return WeilAlgebra(std::vector<unsigned>(v.widths().begin() + static_cast<long>(from),
                                             v.widths().begin() + static_cast<long>(to)));
}

TermPtr whiskered(const WeilAlgebra& u, const TermPtr& g, const WeilAlgebra& v)
{
    TermPtr t = g;
    if (!u.is_unit())
        t = make_tensor(make_id(u), t);
    if (!v.is_unit())
        t = make_tensor(t, make_id(v));
    return t;
}

struct Placement {
    TermPtr g;
    std::size_t pos, len;
};

// Positions where `side` (source or target of a move) occurs as a run of factors of v.
std::vector<Placement> placements(const WeilAlgebra& v, bool by_source, std::size_t max_dim)
{
    std::vector<Placement> out;
    for (const auto& g : moves()) {
        const WeilAlgebra& match = by_source ? g->src : g->tgt;
        const WeilAlgebra& repl = by_source ? g->tgt : g->src;
        std::size_t len = match.factors();
        for (std::size_t p = 0; p + len <= v.factors(); ++p) {
            if (slice(v, p, p + len) != match)
                continue;
            std::size_t d = v.dim() / match.dim() * repl.dim();
            if (d <= max_dim)
                out.push_back({g, p, len});
        }
    }
    return out;
}

}  // namespace

TermPtr random_term_from(std::mt19937_64& rng, const WeilAlgebra& src, unsigned steps, std::size_t max_dim)
{
    TermPtr t = make_id(src);
    for (unsigned s = 0; s < steps; ++s) {
        auto opts = placements(t->tgt, true, max_dim);
        if (opts.empty())
            break;
        const auto& pl = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
        TermPtr step = whiskered(slice(t->tgt, 0, pl.pos), pl.g, slice(t->tgt, pl.pos + pl.len, t->tgt.factors()));
        t = s == 0 ? step : make_compose(step, t);
    }
    return t;
}

TermPtr random_term_into(std::mt19937_64& rng, const WeilAlgebra& tgt, unsigned steps, std::size_t max_dim)
{
    TermPtr t = make_id(tgt);
    for (unsigned s = 0; s < steps; ++s) {
        auto opts = placements(t->src, false, max_dim);
        if (opts.empty())
            break;
        const auto& pl = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
        TermPtr step = whiskered(slice(t->src, 0, pl.pos), pl.g, slice(t->src, pl.pos + pl.len, t->src.factors()));
        t = s == 0 ? step : make_compose(t, step);
    }
    return t;
}

const std::vector<TermEquation>& tangent_equations()
{
    static const std::vector<TermEquation> eqs = {
        {"involution", "c . c", "id{W*W}"},
        {"yang-baxter", "(c * id{W}) . (id{W} * c) . (c * id{W})", "(id{W} * c) . (c * id{W}) . (id{W} * c)"},
        {"symmetric-comultiplication", "c . l", "l"},
        {"coassociativity", "(l * id{W}) . l", "(id{W} * l) . l"},
        {"projection-zero", "p . 0", "id{N}"},
        {"additive-unit", "+ . <0 . !{W}, id{W}>", "id{W}"},
        {"additive-commutativity", "+ . <proj{2,2}, proj{1,2}>", "+"},
        {"additive-associativity", "+ . <+ . <proj{1,3}, proj{2,3}>, proj{3,3}>",
         "+ . <proj{1,3}, + . <proj{2,3}, proj{3,3}>>"},
        {"lift-zero", "l . 0", "(id{W} * 0) . 0"},
        {"lift-additive", "l . +", "(+ * id{W}) . <l . proj{1,2}, l . proj{2,2}>{1}"},
        {"lift-projection", "(p * id{W}) . l", "0 . p"},
        {"lift-flip", "(l * id{W}) . c", "(id{W} * c) . (c * id{W}) . (id{W} * l)"},
    };
    return eqs;
}

namespace {

const std::vector<TermEquation>& extra_equations()
{
    static const std::vector<TermEquation> eqs = {
        {"flip-projection", "(p * id{W}) . c", "id{W} * p"},
        {"lift-projection-right", "(id{W} * p) . l", "0 . p"},
        {"projection-sum", "p . +", "p . proj{1,2}"},
        {"terminal", "p . p * id{W}", "!{W*W}"},
        {"unit-tensor", "l * id{N}", "l"},
        {"mu-projection", "(p * id{W}) . (+ * id{W}) . <(id{W} * 0) . proj{1,2}, l . proj{2,2}>{1}",
         "0 . !{W2}"},
    };
    return eqs;
}

// Semantics-preserving syntactic rewrite applied at a random node.
TermPtr rewrite_once(std::mt19937_64& rng, const TermPtr& t)
{
    std::uniform_int_distribution<int> coin(0, 5);
    // descend with some probability
    if (t->kind != WTerm::Kind::Gen && coin(rng) < 3) {
        if (t->kind == WTerm::Kind::Compose)
            return coin(rng) < 3 ? make_compose(rewrite_once(rng, t->a), t->b) : make_compose(t->a, rewrite_once(rng, t->b));
        if (t->kind == WTerm::Kind::Tensor)
            return coin(rng) < 3 ? make_tensor(rewrite_once(rng, t->a), t->b) : make_tensor(t->a, rewrite_once(rng, t->b));
        if (t->kind == WTerm::Kind::Pair)
            return coin(rng) < 3 ? make_pairing(rewrite_once(rng, t->a), t->b, t->pair_pos)
                                 : make_pairing(t->a, rewrite_once(rng, t->b), t->pair_pos);
    }
    switch (coin(rng)) {
    case 0:
        return make_compose(make_id(t->tgt), t);
    case 1:
        return make_compose(t, make_id(t->src));
    case 2:
        if (t->kind == WTerm::Kind::Tensor) {
            // interchange
            if (coin(rng) % 2)
                return make_compose(make_tensor(t->a, make_id(t->b->tgt)), make_tensor(make_id(t->a->src), t->b));
            return make_compose(make_tensor(make_id(t->a->tgt), t->b), make_tensor(t->a, make_id(t->b->src)));
        }
        return make_tensor(t, make_id(WeilAlgebra()));
    case 3:
        if (t->kind == WTerm::Kind::Compose && t->b->kind == WTerm::Kind::Compose)
            return make_compose(make_compose(t->a, t->b->a), t->b->b);
        if (t->kind == WTerm::Kind::Compose && t->a->kind == WTerm::Kind::Compose)
            return make_compose(t->a->a, make_compose(t->a->b, t->b));
        return make_compose(make_id(t->tgt), t);
    case 4:
        if (t->kind == WTerm::Kind::Tensor && t->a->kind == WTerm::Kind::Tensor)
            return make_tensor(t->a->a, make_tensor(t->a->b, t->b));
        if (t->kind == WTerm::Kind::Tensor && t->b->kind == WTerm::Kind::Tensor)
            return make_tensor(make_tensor(t->a, t->b->a), t->b->b);
        return make_tensor(make_id(WeilAlgebra()), t);
    default:
        if (t->tgt.is_unit() && !(t->kind == WTerm::Kind::Gen && t->gen == GenKind::Bang))
            return make_gen(GenKind::Bang, t->src);
        return make_compose(t, make_id(t->src));
    }
}

}  // namespace

std::pair<TermPtr, TermPtr> random_equal_pair(std::mt19937_64& rng, std::size_t max_dim)
{
    std::vector<TermEquation> pool = tangent_equations();
    const auto& extra = extra_equations();
    pool.insert(pool.end(), extra.begin(), extra.end());
    const auto& eq = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    TermPtr lhs = parse_term(eq.lhs), rhs = parse_term(eq.rhs);

    static const char* whisk[] = {"N", "N", "W", "W2", "W*W"};
    std::uniform_int_distribution<int> pick(0, 4);
    WeilAlgebra u, v;
    for (int attempt = 0; attempt < 8; ++attempt) {
        u = WeilAlgebra::parse(whisk[pick(rng)]);
        v = WeilAlgebra::parse(whisk[pick(rng)]);
        std::size_t d = std::max(lhs->src.dim(), lhs->tgt.dim()) * u.dim() * v.dim();
        if (d <= max_dim)
            break;
        u = v = WeilAlgebra();
    }
    lhs = whiskered(u, lhs, v);
    rhs = whiskered(u, rhs, v);
    std::uniform_int_distribution<unsigned> steps(0, 2);
    TermPtr pre = random_term_into(rng, lhs->src, steps(rng), max_dim);
    TermPtr post = random_term_from(rng, lhs->tgt, steps(rng), max_dim);
    auto wrap = [&](const TermPtr& core) {
        TermPtr t = core;
        if (!(pre->kind == WTerm::Kind::Gen && pre->gen == GenKind::Id))
            t = make_compose(t, pre);
        if (!(post->kind == WTerm::Kind::Gen && post->gen == GenKind::Id))
            t = make_compose(post, t);
        return t;
    };
    lhs = wrap(lhs);
    rhs = wrap(rhs);
    std::uniform_int_distribution<int> nrw(0, 2);
    for (int k = nrw(rng); k > 0; --k)
        lhs = rewrite_once(rng, lhs);
    for (int k = nrw(rng); k > 0; --k)
        rhs = rewrite_once(rng, rhs);
    if (print_term(lhs) == print_term(rhs))
        rhs = make_compose(make_id(rhs->tgt), rhs);
    return {lhs, rhs};
}

// ---- c-free synthesis ---------------------------------------------------

namespace {

TermPtr tensor_all(const std::vector<TermPtr>& parts)
{
    TermPtr t;
    for (const auto& p : parts)
        t = t ? make_tensor(t, p) : p;
    return t ? t : make_id(WeilAlgebra());
}

TermPtr zero_into(unsigned m)
{
    TermPtr z = make_gen(GenKind::Zero);
    return m == 1 ? z : make_pairing(z, zero_into(m - 1), 0);
}

TermPtr zero_into(const WeilAlgebra& v)
{
    std::vector<TermPtr> parts;
    for (unsigned w : v.widths())
        parts.push_back(zero_into(w));
    return tensor_all(parts);
}

TermPtr inject(unsigned var, unsigned m)
{
    TermPtr id = make_id(WeilAlgebra({1}));
    TermPtr zero = make_compose(make_gen(GenKind::Zero), make_gen(GenKind::Bang, WeilAlgebra({1})));
    std::function<TermPtr(unsigned)> from = [&](unsigned t) -> TermPtr {
        TermPtr here = t == var ? id : zero;
        return t == m ? here : make_pairing(here, from(t + 1), 0);
    };
    return from(1);
}

TermPtr ell_chain(unsigned f)
{
    if (f == 1)
        return make_id(WeilAlgebra({1}));
    if (f == 2)
        return make_gen(GenKind::Ell);
    std::vector<unsigned> rest(f - 2, 1);
    return make_compose(make_tensor(make_gen(GenKind::Ell), make_id(WeilAlgebra(rest))), ell_chain(f - 1));
}

// W_N -> W sending z_s to x for s in set, 0 otherwise.
TermPtr sum_proj(unsigned N, const std::vector<unsigned>& set)
{
    if (set.empty())
        return make_compose(make_gen(GenKind::Zero), make_gen(GenKind::Bang, WeilAlgebra({N})));
    TermPtr first = make_gen(GenKind::Proj, WeilAlgebra(), set[0], N);
    if (set.size() == 1)
        return first;
    std::vector<unsigned> rest(set.begin() + 1, set.end());
    return make_compose(make_gen(GenKind::Plus), make_pairing(first, sum_proj(N, rest), 0));
}

}  // namespace

TermPtr synthesize_c_free(const WeilMorphism& phi)
{
    const WeilAlgebra& src = phi.source();
    const WeilAlgebra& v = phi.target();
    if (src.factors() != 1)
        return nullptr;
    unsigned n = src.widths()[0];
    TermPtr bang_src = make_gen(GenKind::Bang, src);
    if (v.is_unit())
        return bang_src;

    struct Slot {
        unsigned gen;
        std::size_t mono;
    };
    std::vector<Slot> slots;
    for (unsigned j = 0; j < n; ++j)
        for (const auto& [mono, c] : phi.images()[j].coefficients())
            for (Nat k = 0; k < c; ++k)
                slots.push_back({j, mono});
    if (slots.empty())
        return make_compose(zero_into(v), bang_src);

    // a factor in which every monomial selects a variable
    std::optional<std::size_t> common;
    for (std::size_t f = 0; f < v.factors() && !common; ++f) {
        bool all = true;
        for (const auto& s : slots)
            all = all && v.selection(s.mono)[f] != 0;
        if (all)
            common = f;
    }
    if (!common)
        return nullptr;
    std::size_t k = *common;

    std::vector<unsigned> wide = v.widths();
    wide[k] = 1;
    TermPtr paired;
    for (std::size_t s = slots.size(); s-- > 0;) {
        auto sel = v.selection(slots[s].mono);
        std::vector<TermPtr> parts;
        unsigned used = 0;
        for (std::size_t f = 0; f < v.factors(); ++f) {
            if (f == k) {
                parts.push_back(make_id(WeilAlgebra({1})));
                ++used;
            } else if (sel[f]) {
                parts.push_back(inject(sel[f], v.widths()[f]));
                ++used;
            } else {
                parts.push_back(zero_into(v.widths()[f]));
            }
        }
        TermPtr g = make_compose(tensor_all(parts), ell_chain(used));
        TermPtr h = make_compose(g, make_gen(GenKind::Proj, WeilAlgebra(), slots[s].gen + 1, n));
        paired = paired ? make_pairing(h, paired, k) : h;
    }

    unsigned N = static_cast<unsigned>(slots.size());
    unsigned mk = v.widths()[k];
    std::function<TermPtr(unsigned)> merge = [&](unsigned t) -> TermPtr {
        std::vector<unsigned> set;
        for (unsigned s = 0; s < N; ++s)
            if (v.selection(slots[s].mono)[k] == t)
                set.push_back(s + 1);
        TermPtr here = sum_proj(N, set);
        return t == mk ? here : make_pairing(here, merge(t + 1), 0);
    };
    TermPtr m = merge(1);
    TermPtr out = whiskered(slice(v, 0, k), m, slice(v, k + 1, v.factors()));
    return make_compose(out, paired);
}

std::vector<WeilMorphism> enumerate_morphisms(unsigned n, const WeilAlgebra& v, unsigned max_coeff)
{
    WeilAlgebra src({n});
    std::size_t nonunit = v.dim() - 1;
    std::size_t per_gen = 1;
    for (std::size_t i = 0; i < nonunit; ++i)
        per_gen *= (max_coeff + 1);
    std::vector<WeilElement> choices;
    for (std::size_t code = 0; code < per_gen; ++code) {
        WeilElement e(v);
        std::size_t c = code;
        for (std::size_t mono = 1; mono <= nonunit; ++mono) {
            e.add(mono, static_cast<unsigned long>(c % (max_coeff + 1)));
            c /= (max_coeff + 1);
        }
        // square-zero is necessary for every generator image
        if (element_mul(e, e).is_zero())
            choices.push_back(e);
    }
    std::vector<WeilMorphism> out;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        std::vector<WeilElement> im;
        for (unsigned j = 0; j < n; ++j)
            im.push_back(choices[idx[j]]);
        WeilMorphism phi(src, v, im);
        if (phi.validation_error().empty())
            out.push_back(phi);
        std::size_t j = 0;
        while (j < n && ++idx[j] == choices.size())
            idx[j++] = 0;
        if (j == n)
            break;
    }
    return out;
}

}  // namespace tcat
