// Which derivation scheme admits a GKSL equation at a (v, gamma) point.
//
//   local valid   <=>  v <= eta * min(Omega, eps_I)      (weak coupling, eta configurable)
//   global valid  <=>  |Omega_0 - Omega_1| > gamma         (non-degenerate spectrum, strict)

#pragma once

#include "qimp/model.hpp"

#include <string_view>
#include <vector>

namespace qimp {

enum class RegimeLabel { LocalOnly, GlobalOnly, Both, Neither };

std::string_view to_string(RegimeLabel label) noexcept;

inline constexpr double kDefaultEta = 0.1;

struct RegimeBits {
    bool local_valid;
    bool global_valid;
};

/// v and gamma override the corresponding fields of p; the other fields
/// (eps, Delta, eps_I) come from p.
RegimeBits regime_bits(double v, double gamma, const SystemParams& p, double eta = kDefaultEta);
RegimeLabel classify(double v, double gamma, const SystemParams& p, double eta = kDefaultEta);

struct AxisRange {
    double min;
    double max;
    std::size_t steps;

    /// Linear grid; a single step yields {min}.
    std::vector<double> values() const;
};

struct DiagramSpec {
    AxisRange v_range;
    AxisRange gamma_range;
    SystemParams fixed;
    double eta = kDefaultEta;

    /// Throws ParameterError on steps == 0, non-positive ranges, min > max,
    /// min == max with steps > 1, or eta <= 0.
    void validate() const;
};

struct RegimeDiagram {
    std::vector<double> v_axis;
    std::vector<double> gamma_axis;
    std::vector<RegimeLabel> labels;  ///< v-major: labels[iv * gamma_axis.size() + ig]

    RegimeLabel at(std::size_t iv, std::size_t ig) const { return labels[iv * gamma_axis.size() + ig]; }
};

RegimeDiagram regime_diagram(const DiagramSpec& spec);

}  // namespace qimp
