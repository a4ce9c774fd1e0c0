#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "json_writer.hpp"

namespace midsub {

// Verdict strings are part of the output contract.
namespace verdict {
inline constexpr const char* kC0 = "C0-certified";
inline constexpr const char* kC1Regular = "C1-certified-regular";
inline constexpr const char* kC1Extraordinary = "C1-certified-extraordinary";
inline constexpr const char* kNotCertifiable = "not-certifiable";
inline constexpr const char* kTechniqueInapplicable = "technique-inapplicable";
inline constexpr const char* kInvalidInput = "invalid-input";
}  // namespace verdict

struct Evidence {
    std::string name;
    double value = 0.0;
    std::string note;  // optional; "" omitted from JSON

    Evidence(std::string n, double v, std::string note_ = "")
        : name(std::move(n)), value(v), note(std::move(note_)) {}
};

// Structured verdict with its numeric evidence trail. Every certificate
// carries at least one evidence entry and the theorem names it relies on.
struct Certificate {
    std::string word;
    int valence = 0;          // 0 for regular-mesh certificates
    std::string orientation;  // "", "primal", "dual"
    std::string verdict;
    std::vector<Evidence> evidence;
    std::vector<std::string> provenance;
    std::string note;

    void add(std::string name, double value, std::string note_ = "") {
        evidence.emplace_back(std::move(name), value, std::move(note_));
    }

    bool certified() const {
        return verdict == verdict::kC0 || verdict == verdict::kC1Regular ||
               verdict == verdict::kC1Extraordinary;
    }

    Json to_json(const Config& cfg) const;
};

} // namespace midsub
