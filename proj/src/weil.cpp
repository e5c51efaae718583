#include "tcat/weil.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tcat/report.hpp"

namespace tcat {

WeilAlgebra::WeilAlgebra(std::vector<unsigned> widths) : widths_(std::move(widths))
{
    for (unsigned w : widths_)
        if (w == 0)
            throw std::invalid_argument("make_weil: zero width (use the empty list for N)");
    dim_ = 1;
    for (unsigned w : widths_) {
        strides_.push_back(dim_);
        dim_ *= (w + 1);
    }
}

WeilAlgebra make_weil(const std::vector<unsigned>& widths)
{
    return WeilAlgebra(widths);
}

WeilAlgebra tensor(const WeilAlgebra& a, const WeilAlgebra& b)
{
    std::vector<unsigned> w = a.widths();
    w.insert(w.end(), b.widths().begin(), b.widths().end());
    return WeilAlgebra(w);
}

std::size_t WeilAlgebra::generators() const
{
    return std::accumulate(widths_.begin(), widths_.end(), std::size_t(0));
}

std::vector<unsigned> WeilAlgebra::selection(std::size_t index) const
{
    std::vector<unsigned> sel(widths_.size());
    for (std::size_t i = 0; i < widths_.size(); ++i) {
        sel[i] = static_cast<unsigned>(index % (widths_[i] + 1));
        index /= (widths_[i] + 1);
    }
    return sel;
}

std::size_t WeilAlgebra::index(const std::vector<unsigned>& sel) const
{
    std::size_t idx = 0;
    for (std::size_t i = 0; i < widths_.size(); ++i)
        idx += sel[i] * strides_[i];
    return idx;
}

std::pair<std::size_t, unsigned> WeilAlgebra::generator_position(std::size_t g) const
{
    for (std::size_t i = 0; i < widths_.size(); ++i) {
        if (g < widths_[i])
            return {i, static_cast<unsigned>(g + 1)};
        g -= widths_[i];
    }
    throw std::out_of_range("generator index");
}

std::size_t WeilAlgebra::generator_index(std::size_t g) const
{
    auto [f, v] = generator_position(g);
    return v * strides_[f];
}

std::optional<std::size_t> WeilAlgebra::multiply(std::size_t a, std::size_t b) const
{
    std::size_t out = 0;
    for (std::size_t i = 0; i < widths_.size(); ++i) {
        std::size_t r = widths_[i] + 1;
        std::size_t da = a % r, db = b % r;
        if (da && db)
            return std::nullopt;
        out += (da + db) * strides_[i];
        a /= r;
        b /= r;
    }
    return out;
}

unsigned WeilAlgebra::degree(std::size_t index) const
{
    unsigned d = 0;
    for (unsigned s : selection(index))
        d += s != 0;
    return d;
}

static std::string factor_letter(std::size_t k)
{
    static const char* letters = "xyzuvwst";
    if (k < 8)
        return std::string(1, letters[k]);
    return "a" + std::to_string(k) + "_";
}

std::string WeilAlgebra::monomial_name(std::size_t index) const
{
    auto sel = selection(index);
    std::string s;
    for (std::size_t i = 0; i < sel.size(); ++i) {
        if (!sel[i])
            continue;
        s += factor_letter(i);
        if (widths_[i] > 1)
            s += std::to_string(sel[i]);
    }
    return s.empty() ? "1" : s;
}

std::string WeilAlgebra::str() const
{
    if (widths_.empty())
        return "N";
    std::string s;
    for (std::size_t i = 0; i < widths_.size(); ++i) {
        if (i)
            s += "*";
        s += widths_[i] == 1 ? "W" : "W" + std::to_string(widths_[i]);
    }
    return s;
}

WeilAlgebra WeilAlgebra::parse(const std::string& text)
{
    std::vector<unsigned> widths;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto fail = [&](const std::string& msg) {
        throw InputError("algebra \"" + text + "\": " + msg + " at position " + std::to_string(pos), pos);
    };
    auto number = [&]() -> unsigned {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos)
            fail("expected a number");
        return static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
    };
    for (;;) {
        skip();
        if (pos >= text.size())
            fail("expected N or W");
        if (text[pos] == 'N') {
            ++pos;
        } else if (text[pos] == 'W') {
            ++pos;
            unsigned w = 1;
            if (pos < text.size() && text[pos] == '{') {
                ++pos;
                w = number();
                if (pos >= text.size() || text[pos] != '}')
                    fail("expected '}'");
                ++pos;
            } else if (pos < text.size() && text[pos] == '_') {
                ++pos;
                w = number();
            } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                w = number();
            }
            if (w == 0)
                fail("zero width");
            unsigned reps = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                reps = number();
            }
            for (unsigned r = 0; r < reps; ++r)
                widths.push_back(w);
        } else {
            fail("expected N or W");
        }
        skip();
        if (pos == text.size())
            break;
        if (text[pos] != '*')
            fail("expected '*'");
        ++pos;
    }
    return WeilAlgebra(widths);
}

WeilElement WeilElement::unit(const WeilAlgebra& a)
{
    return basis(a, 0);
}

WeilElement WeilElement::basis(const WeilAlgebra& a, std::size_t index, const Nat& c)
{
    WeilElement e(a);
    e.add(index, c);
    return e;
}

Nat WeilElement::coefficient(std::size_t index) const
{
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Nat(0) : it->second;
}

void WeilElement::add(std::size_t index, const Nat& c)
{
    if (c == 0)
        return;
    coeffs_[index] += c;
}

WeilElement& WeilElement::operator+=(const WeilElement& o)
{
    if (alg_ != o.alg_)
        throw std::invalid_argument("element addition: algebra mismatch");
    for (const auto& [i, c] : o.coeffs_)
        add(i, c);
    return *this;
}

std::string WeilElement::str() const
{
    if (coeffs_.empty())
        return "0";
    std::string s;
    for (const auto& [i, c] : coeffs_) {
        if (!s.empty())
            s += " + ";
        if (i == 0)
            s += c.get_str();
        else if (c == 1)
            s += alg_.monomial_name(i);
        else
            s += c.get_str() + alg_.monomial_name(i);
    }
    return s;
}

WeilElement WeilElement::parse(const WeilAlgebra& a, const std::string& text)
{
    std::vector<std::string> names;
    std::vector<std::size_t> gens;
    for (std::size_t g = 0; g < a.generators(); ++g) {
        gens.push_back(a.generator_index(g));
        names.push_back(a.monomial_name(gens.back()));
    }
    WeilElement out(a);
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) {
        throw InputError("element \"" + text + "\": " + msg + " at position " + std::to_string(pos), pos);
    };
    auto skip = [&] {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos]))))
            ++pos;
    };
    skip();
    if (pos < text.size() && text[pos] == '0' && text.find_first_not_of(" 0") == std::string::npos)
        return out;
    for (;;) {
        skip();
        Nat coeff = 1;
        bool have_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            coeff = Nat(text.substr(start, pos - start));
            have_coeff = true;
            skip();
            if (pos < text.size() && text[pos] == '*')
                ++pos;
        }
        std::size_t mono = 0;
        bool have_var = false;
        for (;;) {
            skip();
            if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
                break;
            std::size_t start = pos++;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            std::string id = text.substr(start, pos - start);
            auto it = std::find(names.begin(), names.end(), id);
            if (it == names.end()) {
                pos = start;
                fail("unknown variable '" + id + "' in " + a.str());
            }
            auto prod = a.multiply(mono, gens[static_cast<std::size_t>(it - names.begin())]);
            if (!prod)
                mono = SIZE_MAX;
            else if (mono != SIZE_MAX)
                mono = *prod;
            have_var = true;
            skip();
            if (pos < text.size() && text[pos] == '*')
                ++pos;
        }
        if (!have_coeff && !have_var)
            fail("expected a term");
        if (mono != SIZE_MAX)
            out.add(mono, coeff);
        skip();
        if (pos == text.size())
            break;
        if (text[pos] != '+')
            fail("expected '+'");
        ++pos;
    }
    return out;
}

WeilElement element_mul(const WeilElement& a, const WeilElement& b)
{
    if (a.algebra() != b.algebra())
        throw std::invalid_argument("element_mul: algebra mismatch " + a.algebra().str() + " vs " + b.algebra().str());
    WeilElement out(a.algebra());
    for (const auto& [i, c] : a.coefficients())
        for (const auto& [j, d] : b.coefficients())
            if (auto k = a.algebra().multiply(i, j))
                out.add(*k, c * d);
    return out;
}

WeilElement embed(const WeilElement& e, const WeilAlgebra& into, std::size_t factor_offset)
{
    WeilElement out(into);
    const WeilAlgebra& a = e.algebra();
    for (const auto& [i, c] : e.coefficients()) {
        std::vector<unsigned> sel(into.factors(), 0);
        auto s = a.selection(i);
        for (std::size_t f = 0; f < s.size(); ++f)
            sel[factor_offset + f] = s[f];
        out.add(into.index(sel), c);
    }
    return out;
}

WeilMorphism::WeilMorphism(WeilAlgebra src, WeilAlgebra tgt, std::vector<WeilElement> images)
    : src_(std::move(src)), tgt_(std::move(tgt)), images_(std::move(images))
{
    if (images_.size() != src_.generators())
        throw std::invalid_argument("WeilMorphism: wrong number of generator images");
    for (const auto& e : images_)
        if (e.algebra() != tgt_)
            throw std::invalid_argument("WeilMorphism: image outside target");
}

std::string WeilMorphism::validation_error() const
{
    for (std::size_t g = 0; g < images_.size(); ++g)
        if (images_[g].coefficient(0) != 0)
            return "image of generator " + std::to_string(g + 1) + " has a unit term";
    std::size_t g0 = 0;
    for (unsigned w : src_.widths()) {
        for (unsigned j = 0; j < w; ++j)
            for (unsigned k = j; k < w; ++k)
                if (!element_mul(images_[g0 + j], images_[g0 + k]).is_zero())
                    return "relation violated by generators " + std::to_string(g0 + j + 1) + ", " +
                           std::to_string(g0 + k + 1);
        g0 += w;
    }
    return "";
}

WeilElement WeilMorphism::apply_basis(std::size_t index) const
{
    auto sel = src_.selection(index);
    WeilElement out = WeilElement::unit(tgt_);
    std::size_t g0 = 0;
    for (std::size_t f = 0; f < sel.size(); ++f) {
        if (sel[f])
            out = element_mul(out, images_[g0 + sel[f] - 1]);
        g0 += src_.widths()[f];
    }
    return out;
}

WeilElement WeilMorphism::apply(const WeilElement& e) const
{
    if (e.algebra() != src_)
        throw std::invalid_argument("apply: element of " + e.algebra().str() + " given to map from " + src_.str());
    WeilElement out(tgt_);
    for (const auto& [i, c] : e.coefficients()) {
        WeilElement img = apply_basis(i);
        for (const auto& [j, d] : img.coefficients())
            out.add(j, c * d);
    }
    return out;
}

std::vector<std::vector<Nat>> WeilMorphism::matrix() const
{
    std::vector<std::vector<Nat>> m(tgt_.dim(), std::vector<Nat>(src_.dim(), Nat(0)));
    for (std::size_t mu = 0; mu < src_.dim(); ++mu) {
        WeilElement img = apply_basis(mu);
        for (const auto& [psi, c] : img.coefficients())
            m[psi][mu] = c;
    }
    return m;
}

bool WeilMorphism::operator==(const WeilMorphism& o) const
{
    return src_ == o.src_ && tgt_ == o.tgt_ && images_ == o.images_;
}

std::string WeilMorphism::str() const
{
    std::string s = src_.str() + " -> " + tgt_.str() + ": ";
    if (images_.empty())
        return s + "(no generators)";
    for (std::size_t g = 0; g < images_.size(); ++g) {
        if (g)
            s += ", ";
        s += src_.monomial_name(src_.generator_index(g)) + " |-> " + images_[g].str();
    }
    return s;
}

WeilMorphism identity_morphism(const WeilAlgebra& a)
{
    std::vector<WeilElement> im;
    for (std::size_t g = 0; g < a.generators(); ++g)
        im.push_back(WeilElement::basis(a, a.generator_index(g)));
    return WeilMorphism(a, a, im);
}

WeilMorphism bang(const WeilAlgebra& a)
{
    return WeilMorphism(a, WeilAlgebra(), std::vector<WeilElement>(a.generators(), WeilElement(WeilAlgebra())));
}

WeilMorphism generator(GenKind kind, const WeilAlgebra& obj, unsigned i, unsigned n)
{
    WeilAlgebra N, W({1}), W2({2}), WW({1, 1});
    switch (kind) {
    case GenKind::P:
        return WeilMorphism(W, N, {WeilElement(N)});
    case GenKind::Zero:
        return WeilMorphism(N, W, {});
    case GenKind::Plus:
        return WeilMorphism(W2, W, {WeilElement::basis(W, 1), WeilElement::basis(W, 1)});
    case GenKind::Ell:
        return WeilMorphism(W, WW, {WeilElement::basis(WW, 3)});
    case GenKind::Flip:
        return WeilMorphism(WW, WW, {WeilElement::basis(WW, 2), WeilElement::basis(WW, 1)});
    case GenKind::Bang:
        return bang(obj);
    case GenKind::Id:
        return identity_morphism(obj);
    case GenKind::Proj: {
        if (n == 0 || i == 0 || i > n)
            throw std::invalid_argument("proj{" + std::to_string(i) + "," + std::to_string(n) + "}: invalid index");
        WeilAlgebra Wn({n});
        std::vector<WeilElement> im;
        for (unsigned j = 1; j <= n; ++j)
            im.push_back(j == i ? WeilElement::basis(W, 1) : WeilElement(W));
        return WeilMorphism(Wn, W, im);
    }
    }
    throw std::invalid_argument("generator: unknown kind");
}

WeilMorphism compose_morphisms(const WeilMorphism& g, const WeilMorphism& f)
{
    if (f.target() != g.source())
        throw std::invalid_argument("compose: boundary mismatch " + f.target().str() + " vs " + g.source().str());
    std::vector<WeilElement> im;
    for (const auto& e : f.images())
        im.push_back(g.apply(e));
    return WeilMorphism(f.source(), g.target(), im);
}

WeilMorphism tensor_morphisms(const WeilMorphism& f, const WeilMorphism& g)
{
    WeilAlgebra src = tensor(f.source(), g.source());
    WeilAlgebra tgt = tensor(f.target(), g.target());
    std::vector<WeilElement> im;
    for (const auto& e : f.images())
        im.push_back(embed(e, tgt, 0));
    for (const auto& e : g.images())
        im.push_back(embed(e, tgt, f.target().factors()));
    return WeilMorphism(src, tgt, im);
}

bool morphisms_equal(const WeilMorphism& f, const WeilMorphism& g)
{
    return f == g;
}

WeilMorphism whisker(const WeilAlgebra& u, const WeilMorphism& f, const WeilAlgebra& v)
{
    return tensor_morphisms(tensor_morphisms(identity_morphism(u), f), identity_morphism(v));
}

// Drops monomials that select a variable of factor k and removes the factor.
static WeilElement kill_factor(const WeilElement& e, const WeilAlgebra& out, std::size_t k)
{
    WeilElement r(out);
    for (const auto& [i, c] : e.coefficients()) {
        auto sel = e.algebra().selection(i);
        if (sel[k])
            continue;
        sel.erase(sel.begin() + static_cast<long>(k));
        r.add(out.index(sel), c);
    }
    return r;
}

WeilMorphism augmentation(const WeilMorphism& f, std::size_t k)
{
    std::vector<unsigned> w = f.target().widths();
    if (k >= w.size())
        throw std::invalid_argument("augmentation: no factor " + std::to_string(k + 1) + " in " + f.target().str());
    w.erase(w.begin() + static_cast<long>(k));
    WeilAlgebra out(w);
    std::vector<WeilElement> im;
    for (const auto& e : f.images())
        im.push_back(kill_factor(e, out, k));
    return WeilMorphism(f.source(), out, im);
}

WeilMorphism pair_morphisms(const WeilMorphism& f, const WeilMorphism& g, std::size_t k)
{
    if (f.source() != g.source())
        throw std::invalid_argument("pair: sources differ: " + f.source().str() + " vs " + g.source().str());
    const auto& wf = f.target().widths();
    const auto& wg = g.target().widths();
    if (wf.size() != wg.size() || k >= wf.size())
        throw std::invalid_argument("pair: targets " + f.target().str() + " and " + g.target().str() +
                                    " have no common factor position " + std::to_string(k + 1));
    for (std::size_t i = 0; i < wf.size(); ++i)
        if (i != k && wf[i] != wg[i])
            throw std::invalid_argument("pair: targets " + f.target().str() + " and " + g.target().str() +
                                        " differ outside factor " + std::to_string(k + 1));
    if (augmentation(f, k) != augmentation(g, k))
        throw std::invalid_argument("pair: augmentations differ");
    std::vector<unsigned> w = wf;
    w[k] = wf[k] + wg[k];
    WeilAlgebra tgt(w);
    std::vector<WeilElement> im;
    for (std::size_t s = 0; s < f.images().size(); ++s) {
        WeilElement out(tgt);
        for (const auto& [i, c] : f.images()[s].coefficients()) {
            auto sel = f.target().selection(i);
            out.add(tgt.index(sel), c);
        }
        for (const auto& [i, c] : g.images()[s].coefficients()) {
            auto sel = g.target().selection(i);
            if (!sel[k])
                continue;  // common part already counted
            sel[k] += wf[k];
            out.add(tgt.index(sel), c);
        }
        im.push_back(out);
    }
    return WeilMorphism(f.source(), tgt, im);
}

WeilMorphism vertical_lift_mu()
{
    WeilAlgebra W2({2}), WW({1, 1});
    return WeilMorphism(W2, WW, {WeilElement::basis(WW, 1), WeilElement::basis(WW, 3)});
}

bool TransverseSquare::commutes() const
{
    if (top.source() != left.source() || right.source() != top.target() || bottom.source() != left.target() ||
        right.target() != bottom.target())
        return false;
    return compose_morphisms(right, top) == compose_morphisms(bottom, left);
}

std::size_t TransverseSquare::total_dimension() const
{
    return std::max({top.source().dim(), top.target().dim(), left.target().dim(), right.target().dim()});
}

TransverseSquare base_square(BaseSquare tag, unsigned n, unsigned m, const WeilAlgebra& obj)
{
    TransverseSquare sq;
    switch (tag) {
    case BaseSquare::FiberedSum: {
        if (n == 0 || m == 0)
            throw std::invalid_argument("fibered-sum: widths must be positive");
        WeilAlgebra S({n + m}), B({n}), C({m});
        std::vector<WeilElement> a, b;
        for (unsigned j = 1; j <= n + m; ++j) {
            a.push_back(j <= n ? WeilElement::basis(B, j) : WeilElement(B));
            b.push_back(j > n ? WeilElement::basis(C, j - n) : WeilElement(C));
        }
        sq.top = WeilMorphism(S, B, a);
        sq.left = WeilMorphism(S, C, b);
        sq.right = bang(B);
        sq.bottom = bang(C);
        sq.provenance = "fibered-sum(" + std::to_string(n) + "," + std::to_string(m) + ")";
        break;
    }
    case BaseSquare::VerticalLift: {
        WeilAlgebra W({1});
        sq.top = vertical_lift_mu();
        sq.left = bang(WeilAlgebra({2}));
        sq.right = tensor_morphisms(generator(GenKind::P), identity_morphism(W));
        sq.bottom = generator(GenKind::Zero);
        sq.provenance = "vertical-lift";
        break;
    }
    case BaseSquare::Identity:
        sq.top = sq.left = sq.right = sq.bottom = identity_morphism(obj);
        sq.provenance = "identity(" + obj.str() + ")";
        break;
    }
    return sq;
}

TransverseSquare transverse_square(BaseSquare tag, const WeilAlgebra& left, const WeilAlgebra& right, unsigned n,
                                   unsigned m, const WeilAlgebra& obj)
{
    TransverseSquare b = base_square(tag, n, m, obj);
    TransverseSquare sq;
    sq.top = whisker(left, b.top, right);
    sq.left = whisker(left, b.left, right);
    sq.right = whisker(left, b.right, right);
    sq.bottom = whisker(left, b.bottom, right);
    sq.provenance = b.provenance;
    if (!left.is_unit())
        sq.provenance = left.str() + " * " + sq.provenance;
    if (!right.is_unit())
        sq.provenance += " * " + right.str();
    if (!sq.commutes())
        throw std::logic_error("transverse square does not commute: " + sq.provenance);
    return sq;
}

TransverseSquare parse_square(const std::string& text)
{
    std::size_t a = std::string::npos, b = std::string::npos;
    std::string core;
    for (const char* tag : {"fibered-sum", "vertical-lift", "identity"}) {
        a = text.find(tag);
        if (a != std::string::npos) {
            core = tag;
            break;
        }
    }
    if (core.empty())
        throw InputError("square \"" + text + "\": expected fibered-sum, vertical-lift or identity", 0);
    b = a + core.size();
    unsigned n = 1, m = 1;
    WeilAlgebra obj({1});
    if (b < text.size() && text[b] == '(') {
        std::size_t close = text.find(')', b);
        if (close == std::string::npos)
            throw InputError("square \"" + text + "\": expected ')'", b);
        std::string args = text.substr(b + 1, close - b - 1);
        if (core == "fibered-sum") {
            std::size_t comma = args.find(',');
            if (comma == std::string::npos)
                throw InputError("square \"" + text + "\": fibered-sum needs (n,m)", b);
            n = static_cast<unsigned>(std::stoul(args.substr(0, comma)));
            m = static_cast<unsigned>(std::stoul(args.substr(comma + 1)));
        } else if (core == "identity") {
            obj = WeilAlgebra::parse(args);
        }
        b = close + 1;
    }
    auto strip = [](std::string s) {
        while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '*'))
            s.pop_back();
        std::size_t i = 0;
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*'))
            ++i;
        return s.substr(i);
    };
    std::string l = strip(text.substr(0, a)), r = strip(text.substr(b));
    WeilAlgebra left = l.empty() ? WeilAlgebra() : WeilAlgebra::parse(l);
    WeilAlgebra right = r.empty() ? WeilAlgebra() : WeilAlgebra::parse(r);
    BaseSquare tag = core == "fibered-sum" ? BaseSquare::FiberedSum
                     : core == "vertical-lift" ? BaseSquare::VerticalLift
                                               : BaseSquare::Identity;
    return transverse_square(tag, left, right, n, m, obj);
}

std::vector<TransverseSquare> enumerate_squares(std::size_t max_dim)
{
    std::vector<WeilAlgebra> whiskers;
    for (const char* s : {"N", "W", "W2", "W3", "W*W", "W2*W", "W*W2", "W*W*W"})
        whiskers.push_back(WeilAlgebra::parse(s));
    std::vector<TransverseSquare> bases;
    for (unsigned n = 1; n <= 4; ++n)
        for (unsigned m = 1; n + m <= 5; ++m)
            bases.push_back(base_square(BaseSquare::FiberedSum, n, m));
    bases.push_back(base_square(BaseSquare::VerticalLift));
    bases.push_back(base_square(BaseSquare::Identity, 1, 1, WeilAlgebra({1})));

    std::vector<TransverseSquare> out;
    for (const auto& base : bases) {
        std::size_t bd = base.total_dimension();
        for (const auto& u : whiskers)
            for (const auto& v : whiskers) {
                if (bd * u.dim() * v.dim() > max_dim)
                    continue;
                BaseSquare tag = base.provenance.rfind("fibered", 0) == 0 ? BaseSquare::FiberedSum
                                 : base.provenance == "vertical-lift"     ? BaseSquare::VerticalLift
                                                                          : BaseSquare::Identity;
                unsigned n = tag == BaseSquare::FiberedSum ? base.top.target().widths()[0] : 1;
                unsigned m = tag == BaseSquare::FiberedSum ? base.left.target().widths()[0] : 1;
                out.push_back(transverse_square(tag, u, v, n, m));
            }
    }
    return out;
}

}  // namespace tcat
