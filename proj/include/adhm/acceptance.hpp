#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace adhm {

/// Collects failed checks of one criterion; keeps the first few messages.
class CheckLog {
public:
    void check(bool ok, const std::string& what);
    bool passed() const { return failed_ == 0; }
    std::size_t checks() const { return checks_; }
    std::size_t failed() const { return failed_; }
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::size_t checks_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> messages_;
};

struct Criterion {
    int id = 0;
    std::string name;
    std::string tags;       // space separated, matched by --filter
    double budget_seconds = 0;
    std::function<void(CheckLog&, std::uint64_t seed)> run;
};

const std::vector<Criterion>& acceptance_criteria();

struct CriterionResult {
    int id = 0;
    std::string name;
    bool checks_passed = false;
    double seconds = 0;
    double budget_seconds = 0;
    std::size_t checks = 0;
    std::vector<std::string> messages;

    bool within_budget() const { return seconds < budget_seconds; }
    bool passed() const { return checks_passed && within_budget(); }
    /// "PASS  [3] name (12 checks, within 30 s)" plus failure lines. Elapsed
    /// time is shown only on request so reports stay byte-stable.
    std::string report(bool with_timing = false) const;
};

constexpr std::uint64_t kDefaultSeed = 1729;

/// True when `filter` is empty, equals the id, or is a substring of the name
/// or one of the tags.
bool criterion_matches(const Criterion& c, const std::string& filter);

CriterionResult run_criterion(const Criterion& c, std::uint64_t seed);
/// Runs the matching criteria in id order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed, const std::string& filter = "");

}  // namespace adhm
