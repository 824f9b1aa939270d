#include "qimp/regimes.hpp"

#include "qimp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qimp {

std::string_view to_string(RegimeLabel label) noexcept {
    switch (label) {
        case RegimeLabel::LocalOnly: return "LocalOnly";
        case RegimeLabel::GlobalOnly: return "GlobalOnly";
        case RegimeLabel::Both: return "Both";
        case RegimeLabel::Neither: return "Neither";
    }
    return "Unknown";
}

RegimeBits regime_bits(double v, double gamma, const SystemParams& p, double eta) {
    if (!(v >= 0.0) || !(gamma > 0.0) || !(eta > 0.0)) {
        throw ParameterError("classify: requires v >= 0, gamma > 0, eta > 0");
    }
    SystemParams q = p;
    q.v = v;
    return {v <= eta * std::min(q.omega(), q.epsilon_I), q.conditioned_splitting_gap() > gamma};
}

RegimeLabel classify(double v, double gamma, const SystemParams& p, double eta) {
    const RegimeBits bits = regime_bits(v, gamma, p, eta);
    if (bits.local_valid && bits.global_valid) {
        return RegimeLabel::Both;
    }
    if (bits.local_valid) {
        return RegimeLabel::LocalOnly;
    }
    if (bits.global_valid) {
        return RegimeLabel::GlobalOnly;
    }
    return RegimeLabel::Neither;
}

std::vector<double> AxisRange::values() const {
    std::vector<double> out(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        out[i] = steps == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    if (steps > 1) {
        out.back() = max;
    }
    return out;
}

namespace {

void validate_axis(const AxisRange& r, const char* name) {
    const std::string n(name);
    if (r.steps == 0) {
        throw ParameterError(n + " range needs at least one step");
    }
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) {
        throw ParameterError(n + " range must be finite");
    }
    if (r.min > r.max) {
        throw ParameterError(n + " range is inverted (min > max)");
    }
    if (r.steps > 1 && r.min == r.max) {
        throw ParameterError(n + " range is empty but more than one step was requested");
    }
}

}  // namespace

void DiagramSpec::validate() const {
    validate_axis(v_range, "v");
    validate_axis(gamma_range, "gamma");
    if (v_range.min < 0.0) {
        throw ParameterError("v range must be non-negative");
    }
    if (!(gamma_range.min > 0.0)) {
        throw ParameterError("gamma range must be positive");
    }
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw ParameterError("eta must be finite and > 0");
    }
    fixed.validate();
}

RegimeDiagram regime_diagram(const DiagramSpec& spec) {
    spec.validate();
    RegimeDiagram d;
    d.v_axis = spec.v_range.values();
    d.gamma_axis = spec.gamma_range.values();
    d.labels.reserve(d.v_axis.size() * d.gamma_axis.size());
    for (double v : d.v_axis) {
        for (double gamma : d.gamma_axis) {
            d.labels.push_back(classify(v, gamma, spec.fixed, spec.eta));
        }
    }
    return d;
}

}  // namespace qimp
