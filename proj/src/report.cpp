#include "tcat/report.hpp"

#include <algorithm>
#include <sstream>

namespace tcat {

void CheckReport::add(const std::string& name, bool pass, const std::string& witness)
{
    verdicts_.push_back({name, pass, pass ? std::string() : witness});
}

void CheckReport::accumulate(const std::string& name, bool pass, const std::string& witness)
{
    for (auto& v : verdicts_) {
        if (v.name == name) {
            if (v.pass && !pass) {
                v.pass = false;
                v.witness = witness;
            }
            return;
        }
    }
    add(name, pass, witness);
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix)
{
    for (const auto& v : other.verdicts_)
        accumulate(prefix + v.name, v.pass, v.witness);
}

bool CheckReport::ok() const
{
    return std::all_of(verdicts_.begin(), verdicts_.end(), [](const Verdict& v) { return v.pass; });
}

const Verdict* CheckReport::find(const std::string& name) const
{
    for (const auto& v : verdicts_)
        if (v.name == name)
            return &v;
    return nullptr;
}

bool CheckReport::passed(const std::string& name) const
{
    const Verdict* v = find(name);
    return v && v->pass;
}

std::vector<Verdict> CheckReport::sorted() const
{
    std::vector<Verdict> out = verdicts_;
    std::stable_sort(out.begin(), out.end(),
                     [](const Verdict& a, const Verdict& b) { return a.name < b.name; });
    return out;
}

nlohmann::json CheckReport::to_json() const
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& v : sorted()) {
        nlohmann::json j = {{"name", v.name}, {"pass", v.pass}};
        if (!v.pass && !v.witness.empty())
            j["witness"] = v.witness;
        checks.push_back(j);
    }
    return {{"status", ok() ? "pass" : "fail"}, {"checks", checks}};
}

std::string CheckReport::to_text() const
{
    std::ostringstream os;
    for (const auto& v : sorted()) {
        os << (v.pass ? "PASS " : "FAIL ") << v.name << '\n';
        if (!v.pass && !v.witness.empty())
            os << "     witness: " << v.witness << '\n';
    }
    os << (ok() ? "overall: pass" : "overall: fail") << '\n';
    return os.str();
}

}  // namespace tcat
