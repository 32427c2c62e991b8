#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace props {

struct Result {
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok) {
            if (failures == 0) first_failure = what;
            ++failures;
        }
    }
    bool passed() const { return failures == 0 && cases > 0; }
};

struct Property {
    std::string module;
    std::string name;
    std::function<Result(std::uint64_t seed)> run;
};

// Every invariant bullet of every module, each with its own randomized sample.
const std::vector<Property>& all();

}  // namespace props

// Readable gtest parameter names instead of byte dumps.
#include <ostream>
namespace props {
inline void PrintTo(const Property& p, std::ostream* os) { *os << p.module << "/" << p.name; }
}  // namespace props
