#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace tcat {

struct Verdict {
    std::string name;
    bool pass = true;
    std::string witness;
};

// Named verdicts; overall pass iff every verdict passes.
class CheckReport {
public:
    void add(const std::string& name, bool pass, const std::string& witness = "");
    // Folds a verdict into an existing one of the same name (logical and, first witness kept).
    void accumulate(const std::string& name, bool pass, const std::string& witness = "");
    void merge(const CheckReport& other, const std::string& prefix = "");

    bool ok() const;
    bool passed(const std::string& name) const;
    const Verdict* find(const std::string& name) const;
    const std::vector<Verdict>& verdicts() const { return verdicts_; }

    std::vector<Verdict> sorted() const;
    nlohmann::json to_json() const;
    std::string to_text() const;

private:
    std::vector<Verdict> verdicts_;
};

struct InputError : std::runtime_error {
    std::size_t pos;
    InputError(const std::string& msg, std::size_t p = std::string::npos)
        : std::runtime_error(msg), pos(p) {}
};

}  // namespace tcat
