#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace frontlab {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

/// Shared artifacts across criteria (the invasion run feeds A4, A7 and A10).
class AcceptanceContext {
  public:
    AcceptanceContext();
    ~AcceptanceContext();
    struct Impl;
    Impl& impl() { return *impl_; }

  private:
    std::unique_ptr<Impl> impl_;
};

std::vector<std::string> acceptance_ids();

CriterionResult run_criterion(const std::string& id, AcceptanceContext& ctx);

/// Runs the listed criteria (all when empty), printing one pass/fail line
/// each; returns the number of failures.
int run_acceptance(std::vector<std::string> ids, std::ostream& out);

}  // namespace frontlab
