#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include "tcat/algebroid.hpp"
#include "tcat/bundle.hpp"
#include "tcat/nerve.hpp"
#include "tcat/spec_io.hpp"
#include "tcat/suite.hpp"
#include "tcat/tangent.hpp"
#include "tcat/wterm.hpp"

using namespace tcat;

namespace {

struct Output {
    std::string command;
    CheckReport report;
    json result = json::object();
    std::vector<std::string> lines;
};

int emit(const Output& out, bool as_json)
{
    if (as_json) {
        json j = out.report.to_json();
        j["command"] = out.command;
        if (!out.result.empty())
            j["result"] = out.result;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << out.command << '\n';
        for (const auto& l : out.lines)
            std::cout << "  " << l << '\n';
        std::cout << out.report.to_text();
    }
    return out.report.ok() ? 0 : 1;
}

std::string term_type(const TermPtr& t) { return t->src.str() + " -> " + t->tgt.str(); }

Output wone_eval(const std::string& text)
{
    Output out{"wone eval"};
    TermPtr t = parse_term(text);
    WeilMorphism m = eval_weil(t);
    std::string err = m.validation_error();
    out.report.add("well-typed", true);
    out.report.add("denotation is a morphism", err.empty(), err);
    json images = json::array();
    for (const auto& e : m.images())
        images.push_back(e.str());
    out.result = {{"term", print_term(t)}, {"source", t->src.str()}, {"target", t->tgt.str()}, {"images", images}};
    out.lines = {"term: " + print_term(t), "type: " + term_type(t), "denotation: " + m.str()};
    return out;
}

Output wone_equal(const std::string& a, const std::string& b)
{
    Output out{"wone equal"};
    TermPtr t1 = parse_term(a), t2 = parse_term(b);
    bool eq = terms_equal(t1, t2);
    out.report.add("equal denotation", eq, eq ? "" : eval_weil(t1).str() + " vs " + eval_weil(t2).str());
    out.result = {{"lhs", print_term(t1)}, {"rhs", print_term(t2)}, {"type", term_type(t1)}};
    out.lines = {"lhs: " + print_term(t1), "rhs: " + print_term(t2), "type: " + term_type(t1)};
    return out;
}

Output cdc_check(const std::string& file, std::uint64_t seed)
{
    Output out{"cdc check"};
    auto maps = maps_from_json(load_spec(file));
    out.report = check_cdc_axioms(maps, seed);
    out.result = {{"maps", maps.size()}};
    out.lines = {std::to_string(maps.size()) + " map(s)"};
    return out;
}

Output tangent_check(std::size_t n, std::uint64_t seed)
{
    Output out{"tangent check"};
    if (n == 0)
        throw InputError("-n must be positive");
    std::mt19937_64 rng(seed);
    std::vector<PolyMap> sample;
    for (int k = 0; k < 3; ++k)
        sample.push_back(random_map(rng, n, n, 2, 3));
    out.report = check_tangent_axioms(n, sample);
    out.result = {{"n", n}};
    out.lines = {"object Q^" + std::to_string(n)};
    return out;
}

Output algebroid_check(const std::string& file)
{
    Output out{"algebroid check"};
    AlgebroidData A = algebroid_from_json(load_spec(file));
    out.report = check_structure_equations(A);
    out.report.merge(check_involution_axioms(A, involution_from_bracket(A)), "involution ");
    out.result = {{"name", A.name}, {"base_dim", A.d}, {"rank", A.r}};
    out.lines = {"algebroid " + (A.name.empty() ? std::string("(unnamed)") : A.name) + ": base dim " +
                 std::to_string(A.d) + ", rank " + std::to_string(A.r)};
    return out;
}

Section read_section(const std::string& arg, const AlgebroidData& A)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec))
        return section_from_json(load_spec(arg), A);
    return parse_section(arg, A);
}

json section_json(const Section& s)
{
    json j = json::array();
    for (const auto& p : s)
        j.push_back(p.str());
    return j;
}

std::string section_text(const Section& s)
{
    std::string t = "(";
    for (std::size_t i = 0; i < s.size(); ++i)
        t += (i ? ", " : "") + s[i].str();
    return t + ")";
}

Output algebroid_bracket(const std::string& file, const std::string& xs, const std::string& ys)
{
    Output out{"algebroid bracket"};
    AlgebroidData A = algebroid_from_json(load_spec(file));
    Section X = read_section(xs, A), Y = read_section(ys, A);
    Section viaSigma = section_bracket(A, X, Y);
    Section coord = coordinate_bracket(A, X, Y);
    out.report.add("bracket formula", viaSigma == coord, "coordinate formula gives " + section_text(coord));
    out.result = {{"bracket", section_json(viaSigma)}};
    out.lines = {"X = " + section_text(X), "Y = " + section_text(Y), "[X,Y] = " + section_text(viaSigma)};
    return out;
}

Output nerve_object_cmd(const std::string& file, const std::string& alg)
{
    Output out{"nerve object"};
    AlgebroidData A = algebroid_from_json(load_spec(file));
    WeilAlgebra V = WeilAlgebra::parse(alg);
    ProlongationSpace P = nerve_object(A, V);
    out.report.add("dimension", P.dim == A.d + (V.dim() - 1) * A.r,
                   "dimension " + std::to_string(P.dim));
    out.result = {{"algebra", V.str()}, {"dim", P.dim}, {"coordinates", P.coordinates}};
    std::string coords;
    for (const auto& c : P.coordinates)
        coords += (coords.empty() ? "" : " ") + c;
    out.lines = {"A." + V.str() + ": dimension " + std::to_string(P.dim), "coordinates: " + coords};
    return out;
}

Output nerve_functoriality_cmd(const std::string& file, std::uint64_t seed, unsigned count)
{
    Output out{"nerve functoriality"};
    AlgebroidData A = algebroid_from_json(load_spec(file));
    if (!check_structure_equations(A).ok())
        throw InputError("the algebroid fails its structure equations, so its nerve is not a functor");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<TermPtr, TermPtr>> pairs;
    while (pairs.size() < count) {
        auto pr = random_equal_pair(rng, 16);
        if (!same_tree(pr.first, pr.second))
            pairs.push_back(pr);
    }
    out.report = check_functoriality(NerveModel(A), pairs, rng);
    out.result = {{"pairs", pairs.size()}};
    out.lines = {std::to_string(pairs.size()) + " term pairs"};
    return out;
}

Output lie_tangent_cmd(const std::string& file)
{
    Output out{"lie-tangent"};
    AlgebroidData A = algebroid_from_json(load_spec(file));
    AlgebroidData L = lie_tangent(A);
    out.report.merge(check_structure_equations(L), "L' ");
    out.report.merge(check_involution_axioms(L, involution_from_bracket(L)), "L' involution ");
    out.report.merge(check_lie_tangent_table(A), "table ");
    out.result = {{"algebroid", algebroid_to_json(L)}};
    out.lines = {"L'(A): base dim " + std::to_string(L.d) + ", rank " + std::to_string(L.r)};
    return out;
}

Output bundle_check(const std::string& file)
{
    json j = load_spec(file);
    std::string kind = j.is_object() && j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    if (kind == "connection") {
        Output out{"bundle check"};
        Connection c = connection_from_json(j);
        out.report = check_connection(c);
        out.lines = {"connection on Q^" + std::to_string(c.bundle.d) + " x Q^" + std::to_string(c.bundle.k)};
        return out;
    }
    Output out{"bundle check"};
    BundleSpec s = bundle_from_json(j);
    out.lines = {"bundle Q^" + std::to_string(s.bundle.d) + " x Q^" + std::to_string(s.bundle.k)};
    std::optional<PolyMap> lambda = s.lift;
    if (s.action) {
        std::string err = validate_action(*s.action);
        if (!err.empty())
            throw InputError("action: " + err);
        Lift l = euler_vector_field(*s.action);
        out.report.merge(check_lift(l), "euler ");
        out.result["euler_lift"] = polymap_to_json(l.lambda);
        if (!lambda)
            lambda = l.lambda;
    }
    if (s.lift)
        out.report.merge(check_lift(Lift{s.bundle.total(), *s.lift}), "lift ");
    out.report.merge(check_universality(s.bundle, lambda), "non-singular ");
    return out;
}

Output selftest_cmd(const SuiteOptions& opt)
{
    Output out{"selftest"};
    auto results = run_suite(opt);
    out.report = selftest_report(results);
    json rows = json::array();
    for (const auto& r : results)
        rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    out.result = {{"seed", opt.seed}, {"cases", opt.cases}, {"criteria", rows}};
    if (!opt.mutate.empty())
        out.result["mutate"] = opt.mutate;
    out.lines = {"seed " + std::to_string(opt.seed) + ", " + std::to_string(opt.cases) + " cases"};
    for (const auto& r : results)
        out.lines.push_back(std::to_string(r.id) + ". " + r.title + ": " + r.detail);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for tangent categories, Weil algebras and involution algebroids"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    std::uint64_t seed = kDefaultSeed;
    if (const char* env = std::getenv("TCAT_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: TCAT_SEED is not a number\n";
            return 2;
        }
    }
    app.add_flag("--json", as_json, "Print the report as JSON");
    app.add_option("--seed", seed, "Random seed (default from TCAT_SEED)");

    std::string term1, term2, file, xs, ys, alg = "W";
    std::size_t n = 1;
    unsigned pairs = 100;
    SuiteOptions sopt;
    std::function<Output()> action;

    auto* wone = app.add_subcommand("wone", "Terms of the Weil-rig category");
    wone->require_subcommand(1);
    auto* weval = wone->add_subcommand("eval", "Type and denotation of a term");
    weval->add_option("TERM", term1)->required();
    weval->callback([&] { action = [&] { return wone_eval(term1); }; });
    auto* wequal = wone->add_subcommand("equal", "Decide equality of two terms");
    wequal->add_option("T1", term1)->required();
    wequal->add_option("T2", term2)->required();
    wequal->callback([&] { action = [&] { return wone_equal(term1, term2); }; });

    auto* cdc = app.add_subcommand("cdc", "Cartesian differential category axioms");
    cdc->require_subcommand(1);
    auto* cdcc = cdc->add_subcommand("check", "Check the axioms on the maps of a map spec");
    cdcc->add_option("FILE", file)->required();
    cdcc->callback([&] { action = [&] { return cdc_check(file, seed); }; });

    auto* tan = app.add_subcommand("tangent", "Tangent structure of the polynomial model");
    tan->require_subcommand(1);
    auto* tanc = tan->add_subcommand("check", "Check the tangent axioms at Q^n");
    tanc->add_option("-n", n, "Object dimension")->required();
    tanc->callback([&] { action = [&] { return tangent_check(n, seed); }; });

    auto* bun = app.add_subcommand("bundle", "Differential bundles and connections");
    bun->require_subcommand(1);
    auto* bunc = bun->add_subcommand("check", "Check a bundle or connection spec");
    bunc->add_option("FILE", file)->required();
    bunc->callback([&] { action = [&] { return bundle_check(file); }; });

    auto* alb = app.add_subcommand("algebroid", "Involution algebroids");
    alb->require_subcommand(1);
    auto* albc = alb->add_subcommand("check", "Structure equations and involution axioms");
    albc->add_option("FILE", file)->required();
    albc->callback([&] { action = [&] { return algebroid_check(file); }; });
    auto* albb = alb->add_subcommand("bracket", "Bracket of two sections");
    albb->add_option("FILE", file)->required();
    albb->add_option("X", xs, "Section file or comma-separated components")->required();
    albb->add_option("Y", ys, "Section file or comma-separated components")->required();
    albb->callback([&] { action = [&] { return algebroid_bracket(file, xs, ys); }; });

    auto* ner = app.add_subcommand("nerve", "The Weil nerve of an algebroid");
    ner->require_subcommand(1);
    auto* nero = ner->add_subcommand("object", "Coordinates of A.V");
    nero->add_option("FILE", file)->required();
    nero->add_option("-V", alg, "Weil algebra, e.g. W2*W")->required();
    nero->callback([&] { action = [&] { return nerve_object_cmd(file, alg); }; });
    auto* nerf = ner->add_subcommand("functoriality", "Equal terms give equal nerve images");
    nerf->add_option("FILE", file)->required();
    nerf->add_option("--pairs", pairs, "Number of term pairs")->check(CLI::Range(1u, 100000u));
    nerf->callback([&] { action = [&] { return nerve_functoriality_cmd(file, seed, pairs); }; });

    auto* lie = app.add_subcommand("lie-tangent", "The prolongation algebroid L'(A)");
    lie->add_option("FILE", file)->required();
    lie->callback([&] { action = [&] { return lie_tangent_cmd(file); }; });

    auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
    self->add_option("--cases", sopt.cases, "Random maps for the differential axioms")->check(CLI::Range(1u, 1000000u));
    self->add_option("--mutate", sopt.mutate, "Inject a mutant")->check(CLI::IsMember({"bianchi"}));
    self->callback([&] {
        action = [&] {
            sopt.seed = seed;
            return selftest_cmd(sopt);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        return emit(action(), as_json);
    } catch (const InputError& e) {
        if (as_json) {
            json j = {{"status", "error"}, {"error", e.what()}};
            j["position"] = e.pos == std::string::npos ? json(nullptr) : json(e.pos);
            std::cout << j.dump(2) << '\n';
        } else {
            std::cerr << "error: " << e.what();
            if (e.pos != std::string::npos)
                std::cerr << " (at position " << e.pos << ")";
            std::cerr << '\n';
        }
        return 2;
    } catch (const json::exception& e) {
        if (as_json)
            std::cout << json{{"status", "error"}, {"error", e.what()}, {"position", nullptr}}.dump(2) << '\n';
        else
            std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
