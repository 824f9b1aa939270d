// Acceptance checks A1..A10, shared by the `validate` command and the
// acceptance test binary.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qimp {

struct CheckResult {
    std::string id;           ///< "A1".."A10"
    std::string name;
    bool passed = false;
    double measured = 0.0;    ///< worst observed residual (or the measured quantity)
    double tolerance = 0.0;   ///< bound the residual was compared against
    std::string detail;
};

struct ValidationOptions {
    /// Replaces the numeric tolerance of every residual-type check
    /// (A1, A2, A5, A6, A7, A8, A10). Structural checks keep their bounds.
    std::optional<double> tolerance_override;
    double runtime_budget_seconds = 5.0;
};

/// Frozen reference for sup_t ||Lambda_G| - |Lambda_L|| at g = 6 on [0, 10/gamma].
inline constexpr double kReferenceOverlayGap = 0.14737;
inline constexpr double kReferenceOverlayGapRelTol = 0.20;

std::vector<CheckResult> run_acceptance(const ValidationOptions& opts = {});

std::string format_check_line(const CheckResult& r);

}  // namespace qimp
