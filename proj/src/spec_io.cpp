#include "tcat/spec_io.hpp"

#include <fstream>
#include <sstream>

namespace tcat {

namespace {

std::size_t get_size(const json& j, const std::string& key)
{
    if (!j.contains(key))
        throw InputError("missing field '" + key + "'");
    const json& v = j.at(key);
    if (!v.is_number_unsigned())
        throw InputError("field '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

const json& get_array(const json& j, const std::string& key, std::size_t expect)
{
    if (!j.contains(key))
        throw InputError("missing field '" + key + "'");
    const json& v = j.at(key);
    if (!v.is_array())
        throw InputError("field '" + key + "' must be an array");
    if (expect != std::string::npos && v.size() != expect)
        throw InputError("field '" + key + "' has " + std::to_string(v.size()) + " entries, expected " +
                         std::to_string(expect));
    return v;
}

Polynomial poly_at(const json& v, const std::vector<std::string>& names, const std::string& where)
{
    if (!v.is_string())
        throw InputError(where + ": polynomial must be a string");
    try {
        return Polynomial::parse(v.get<std::string>(), names);
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what(), e.pos);
    }
}

std::vector<Polynomial> polys(const json& arr, const std::vector<std::string>& names, const std::string& key)
{
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(poly_at(arr[i], names, key + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

json load_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what(), e.byte);
    }
}

void expect_kind(const json& j, const std::string& kind)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InputError("spec has no 'kind' field");
    std::string k = j["kind"].get<std::string>();
    if (k != kind)
        throw InputError("expected a spec of kind '" + kind + "', got '" + k + "'");
}

AlgebroidData algebroid_from_json(const json& j)
{
    expect_kind(j, "algebroid");
    std::size_t d = get_size(j, "base_dim"), r = get_size(j, "rank");
    auto names = default_names(d);
    std::vector<std::vector<Polynomial>> rho;
    const json& anchor = get_array(j, "anchor", d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!anchor[i].is_array() || anchor[i].size() != r)
            throw InputError("anchor[" + std::to_string(i) + "] must be an array of " + std::to_string(r) + " strings");
        rho.push_back(polys(anchor[i], names, "anchor[" + std::to_string(i) + "]"));
    }
    bool alternating = j.value("alternating", true);
    std::vector<std::vector<std::vector<Polynomial>>> C(
        r, std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(r, Polynomial(d))));
    const json& br = j.contains("bracket") ? get_array(j, "bracket", std::string::npos) : json::array();
    for (std::size_t k = 0; k < br.size(); ++k) {
        std::string where = "bracket[" + std::to_string(k) + "]";
        const json& e = br[k];
        if (!e.is_object() || !e.contains("pair") || !e["pair"].is_array() || e["pair"].size() != 2)
            throw InputError(where + ": needs \"pair\": [i, j]");
        std::size_t a = e["pair"][0].get<std::size_t>(), b = e["pair"][1].get<std::size_t>();
        if (a < 1 || a > r || b < 1 || b > r)
            throw InputError(where + ": index out of range 1.." + std::to_string(r));
        if (!e.contains("value") || !e["value"].is_array() || e["value"].size() != r)
            throw InputError(where + ": needs \"value\" with " + std::to_string(r) + " polynomials");
        auto v = polys(e["value"], names, where + ".value");
        --a;
        --b;
        if (alternating && a == b)
            throw InputError(where + ": diagonal entry in an alternating bracket");
        for (std::size_t g = 0; g < r; ++g) {
            C[g][a][b] += v[g];
            if (alternating)
                C[g][b][a] -= v[g];
        }
    }
    return make_algebroid(d, r, rho, C, j.value("name", std::string()));
}

json algebroid_to_json(const AlgebroidData& A)
{
    json j;
    j["kind"] = "algebroid";
    if (!A.name.empty())
        j["name"] = A.name;
    j["base_dim"] = A.d;
    j["rank"] = A.r;
    json anchor = json::array();
    for (const auto& row : A.rho) {
        json jr = json::array();
        for (const auto& p : row)
            jr.push_back(p.str());
        anchor.push_back(jr);
    }
    j["anchor"] = anchor;
    json br = json::array();
    for (std::size_t a = 0; a < A.r; ++a)
        for (std::size_t b = 0; b < A.r; ++b) {
            bool any = false;
            json v = json::array();
            for (std::size_t g = 0; g < A.r; ++g) {
                any = any || !A.C[g][a][b].is_zero();
                v.push_back(A.C[g][a][b].str());
            }
            if (any)
                br.push_back({{"pair", {a + 1, b + 1}}, {"value", v}});
        }
    j["alternating"] = false;
    j["bracket"] = br;
    return j;
}

BundleSpec bundle_from_json(const json& j)
{
    expect_kind(j, "bundle");
    BundleSpec s;
    s.bundle = TrivialBundle{get_size(j, "base_dim"), get_size(j, "fiber_dim")};
    std::size_t n = s.bundle.total();
    if (j.contains("lift"))
        s.lift = PolyMap(n, polys(get_array(j, "lift", 2 * n), default_names(n), "lift"));
    if (j.contains("action")) {
        std::vector<std::string> names{"t"};
        for (const auto& x : default_names(n))
            names.push_back(x);
        s.action = ScalarAction{n, PolyMap(n + 1, polys(get_array(j, "action", n), names, "action"))};
    }
    return s;
}

Connection connection_from_json(const json& j)
{
    expect_kind(j, "connection");
    TrivialBundle b{get_size(j, "base_dim"), get_size(j, "fiber_dim")};
    std::size_t n = b.total();
    PolyMap kappa(2 * n, polys(get_array(j, "kappa", n), default_names(2 * n), "kappa"));
    std::size_t nn = 2 * b.d + b.k;
    PolyMap nabla(nn, polys(get_array(j, "nabla", 2 * n), default_names(nn), "nabla"));
    return make_connection(b, kappa, nabla);
}

Section section_from_json(const json& j, const AlgebroidData& A)
{
    expect_kind(j, "section");
    return polys(get_array(j, "components", A.r), default_names(A.d), "components");
}

Section parse_section(const std::string& text, const AlgebroidData& A)
{
    Section X;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            X.push_back(Polynomial::parse(part, default_names(A.d)));
        } catch (const InputError& e) {
            throw InputError(std::string("section: ") + e.what(),
                             e.pos == std::string::npos ? e.pos : start + e.pos);
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (X.size() != A.r)
        throw InputError("section has " + std::to_string(X.size()) + " components, expected " + std::to_string(A.r));
    return X;
}

std::vector<PolyMap> maps_from_json(const json& j)
{
    expect_kind(j, "map");
    auto one = [](const json& m, const std::string& where) {
        if (!m.is_object())
            throw InputError(where + ": map must be an object");
        std::size_t src = get_size(m, "src");
        return PolyMap(src, polys(get_array(m, "components", std::string::npos), default_names(src),
                                  where + ".components"));
    };
    std::vector<PolyMap> out;
    if (j.contains("maps")) {
        const json& arr = get_array(j, "maps", std::string::npos);
        for (std::size_t i = 0; i < arr.size(); ++i)
            out.push_back(one(arr[i], "maps[" + std::to_string(i) + "]"));
    } else
        out.push_back(one(j, "map"));
    return out;
}

json polymap_to_json(const PolyMap& f)
{
    json c = json::array();
    for (const auto& p : f.comps)
        c.push_back(p.str());
    return {{"src", f.src}, {"components", c}};
}

}  // namespace tcat
