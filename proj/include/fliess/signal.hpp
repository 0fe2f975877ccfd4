#ifndef FLIESS_SIGNAL_HPP
#define FLIESS_SIGNAL_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "fliess/errors.hpp"

namespace fliess {

/// Multi-channel input sampled on a uniform grid over [0, omega].
/// step = omega / (grid_size - 1); all channels share the grid.
///
/// Grids are kept at twice the ODE step resolution (odd grid_size), so the
/// RK4 integrator reads exact midpoint samples instead of interpolating.
class Signal {
public:
    Signal(double omega, std::size_t grid_size, std::size_t channels)
        : omega_(omega), values_(channels, std::vector<double>(grid_size, 0.0)) {
        if (grid_size < 2) throw std::invalid_argument("Signal: need at least 2 grid points");
        if (omega <= 0) throw std::invalid_argument("Signal: omega must be positive");
    }

    /// Samples closed-form channel functions on the grid.
    static Signal sample(double omega, std::size_t grid_size,
                         const std::vector<std::function<double(double)>>& fns) {
        Signal s(omega, grid_size, fns.size());
        for (std::size_t c = 0; c < fns.size(); ++c)
            for (std::size_t i = 0; i < grid_size; ++i) s.values_[c][i] = fns[c](s.time(i));
        return s;
    }

    double omega() const { return omega_; }
    std::size_t grid_size() const { return values_.front().size(); }
    std::size_t channels() const { return values_.size(); }
    double step() const { return omega_ / static_cast<double>(grid_size() - 1); }
    double time(std::size_t i) const { return step() * static_cast<double>(i); }

    double value(std::size_t channel, std::size_t i) const { return values_.at(channel).at(i); }
    std::vector<double>& channel(std::size_t c) { return values_.at(c); }
    const std::vector<double>& channel(std::size_t c) const { return values_.at(c); }

    /// Linear interpolation; t must lie in [0, omega] (small roundoff slack).
    double at(std::size_t channel, double t) const {
        const double h = step();
        const double x = t / h;
        if (t < -1e-12 || t > omega_ + 1e-9 * omega_)
            throw OutOfGrid("Signal::at: t=" + std::to_string(t) + " outside [0, " +
                            std::to_string(omega_) + "]");
        const auto& v = values_.at(channel);
        if (x <= 0) return v.front();
        if (x >= static_cast<double>(v.size() - 1)) return v.back();
        const auto i = static_cast<std::size_t>(x);
        const double frac = x - static_cast<double>(i);
        return v[i] * (1.0 - frac) + v[i + 1] * frac;
    }

private:
    double omega_;
    std::vector<std::vector<double>> values_;
};

/// u_1 = cos t, u_2 = sin t: the standard center-check input on [0, 2*pi].
inline Signal preset_cos_sin(double omega, std::size_t grid_size) {
    return Signal::sample(omega, grid_size,
                          {[](double t) { return std::cos(t); }, [](double t) { return std::sin(t); }});
}

/// u_1 = 1, u_2 = 0: E_{x1}[u](omega) = omega != 0, violating the center
/// precondition on purpose.
inline Signal preset_ramp(double omega, std::size_t grid_size) {
    return Signal::sample(omega, grid_size, {[](double) { return 1.0; }, [](double) { return 0.0; }});
}

inline Signal preset_zero(double omega, std::size_t grid_size, std::size_t channels) {
    return Signal(omega, grid_size, channels);
}

} // namespace fliess

#endif
