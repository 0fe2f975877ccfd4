#ifndef FLIESS_NUMERIC_HPP
#define FLIESS_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fliess/nc_series.hpp"
#include "fliess/signal.hpp"
#include "fliess/toeplitz.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// Default tolerances and bounds of the floating-point layer. Desk-scale
/// determinism: ODE checks at 1e-6 with 1e4 steps over [0, 2*pi], quadrature
/// identities at 1e-5.
struct NumericConfig {
    double ode_tolerance = 1e-6;
    double quadrature_tolerance = 1e-5;
    double blowup_bound = 1e6;
    double denominator_margin = 1e-9;
    double precondition_tolerance = 1e-8;
};

/// E_eta[u] on the whole grid, by one trapezoidal sweep per letter,
/// right-to-left: E_e = 1, E_{x_i eta}(t) = integral of u_i * E_eta.
/// O(grid * |eta|).
inline std::vector<double> iterated_integral_grid(const Word& eta, const Signal& u) {
    if (eta.max_letter() > static_cast<int>(u.channels()))
        throw OutOfGrid("iterated_integral: word uses channel beyond the signal");
    const std::size_t n = u.grid_size();
    const double h = u.step();
    std::vector<double> acc(n, 1.0);
    for (std::size_t pos = eta.length(); pos-- > 0;) {
        const auto& ui = u.channel(static_cast<std::size_t>(eta.at(pos) - 1));
        std::vector<double> next(n, 0.0);
        double run = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            run += 0.5 * h * (ui[i - 1] * acc[i - 1] + ui[i] * acc[i]);
            next[i] = run;
        }
        acc = std::move(next);
    }
    return acc;
}

/// E_eta[u](t) with t inside the grid.
inline double iterated_integral(const Word& eta, const Signal& u, double t) {
    const auto grid = iterated_integral_grid(eta, u);
    const double h = u.step();
    const double x = t / h;
    if (t < -1e-12 || t > u.omega() * (1 + 1e-9))
        throw OutOfGrid("iterated_integral: t outside grid");
    if (x >= static_cast<double>(grid.size() - 1)) return grid.back();
    if (x <= 0) return grid.front();
    const auto i = static_cast<std::size_t>(x);
    const double frac = x - static_cast<double>(i);
    return grid[i] * (1.0 - frac) + grid[i + 1] * frac;
}

/// Truncated Fliess operator F_c[u](t) = sum <c,eta> E_eta[u](t). The caller
/// owns the interpretation of the truncation error beyond the series cap.
inline double fliess_eval(const NCSeries& c, const Signal& u, double t) {
    double total = 0.0;
    for (const auto& [w, q] : c.terms()) total += to_double(q) * iterated_integral(w, u, t);
    return total;
}

/// F_c[u] on the whole grid (one iterated-integral sweep per stored word).
inline std::vector<double> fliess_eval_grid(const NCSeries& c, const Signal& u) {
    std::vector<double> total(u.grid_size(), 0.0);
    for (const auto& [w, q] : c.terms()) {
        const auto grid = iterated_integral_grid(w, u);
        const double qd = to_double(q);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += qd * grid[i];
    }
    return total;
}

/// Trace of an ODE solution at the RK4 step points.
struct Trace {
    std::vector<double> t;
    std::vector<double> z;
    double final() const { return z.back(); }
};

/// Classical RK4 for the degree-(m+1) Abel equation
///   dz/dt = sum_{i=1}^{m} v_i(t) z^{i+1},  z(0) = r.
/// The signal grid must be odd-sized (2*steps + 1): even indices are the
/// step points, odd indices the midpoints, so no interpolation enters the
/// order-4 error budget. Throws Blowup if |z| exceeds the configured bound.
inline Trace integrate_abel(const Signal& v, double r, const NumericConfig& cfg = {}) {
    const std::size_t n = v.grid_size();
    if (n % 2 == 0)
        throw std::invalid_argument("integrate_abel: grid size must be odd (2*steps+1)");
    const std::size_t steps = (n - 1) / 2;
    const std::size_t m = v.channels();
    const double h = 2.0 * v.step();
    auto f = [&](std::size_t grid_idx, double z) {
        double zp = z * z; // z^{i+1} starting at i=1
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            total += v.value(i, grid_idx) * zp;
            zp *= z;
        }
        return total;
    };
    Trace tr;
    tr.t.reserve(steps + 1);
    tr.z.reserve(steps + 1);
    double z = r;
    tr.t.push_back(0.0);
    tr.z.push_back(z);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::size_t g0 = 2 * k, g1 = 2 * k + 1, g2 = 2 * k + 2;
        const double k1 = f(g0, z);
        const double k2 = f(g1, z + 0.5 * h * k1);
        const double k3 = f(g1, z + 0.5 * h * k2);
        const double k4 = f(g2, z + h * k3);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (std::abs(z) > cfg.blowup_bound)
            throw Blowup("integrate_abel: |z| exceeded " + std::to_string(cfg.blowup_bound) +
                         " at t=" + std::to_string(v.time(g2)));
        tr.t.push_back(v.time(g2));
        tr.z.push_back(z);
    }
    return tr;
}

/// Toeplitz affine Fliess operator on a signal:
///   y = F_{d_Toep}[u] u, i.e. y_i = u_i + sum_{j=1}^{m-i} F_{d_j}[u] u_{i+j}.
inline Signal toeplitz_apply(const ToeplitzSeries& d, const Signal& u) {
    const auto m = static_cast<std::size_t>(d.m());
    if (u.channels() != m) throw ShapeMismatch("toeplitz_apply: channel count must equal m");
    Signal y(u.omega(), u.grid_size(), m);
    for (std::size_t i = 1; i <= m; ++i) {
        auto& yi = y.channel(i - 1);
        yi = u.channel(i - 1);
        for (std::size_t j = 1; j + i <= m; ++j) {
            const auto fd = fliess_eval_grid(d.entry(static_cast<int>(j)), u);
            const auto& unext = u.channel(i + j - 1);
            for (std::size_t g = 0; g < yi.size(); ++g) yi[g] += fd[g] * unext[g];
        }
    }
    return y;
}

/// Feedback transform from open-loop inputs u to Abel coefficients v:
///   v_i = u_i - r u_{i+1} / (1 - r E_{x1}[u]),  i < m;   v_m = u_m.
/// Requires 1 - r E_{x1}[u](t) > margin on the whole grid.
inline Signal u_to_v(const Signal& u, double r, const NumericConfig& cfg = {}) {
    const std::size_t m = u.channels();
    const auto ex1 = iterated_integral_grid(Word::letter(1), u);
    Signal v(u.omega(), u.grid_size(), m);
    for (std::size_t i = 0; i < u.grid_size(); ++i) {
        const double denom = 1.0 - r * ex1[i];
        if (denom <= cfg.denominator_margin)
            throw DenominatorVanished("u_to_v: 1 - r*E_{x1}[u] <= margin at t=" +
                                      std::to_string(u.time(i)));
        for (std::size_t c = 0; c + 1 < m; ++c)
            v.channel(c)[i] = u.value(c, i) - r * u.value(c + 1, i) / denom;
        v.channel(m - 1)[i] = u.value(m - 1, i);
    }
    return v;
}

/// Closed-form solution z(t) = r / (1 - r E_{x1}[u](t)) of the transformed
/// Abel equation; r = 1 recovers z = 1/(1 - E_{x1}[u]).
inline double closed_form_solution(const Signal& u, double r, double t,
                                   const NumericConfig& cfg = {}) {
    const double e = iterated_integral(Word::letter(1), u, t);
    const double denom = 1.0 - r * e;
    if (denom <= cfg.denominator_margin)
        throw DenominatorVanished("closed_form_solution: denominator vanished");
    return r / denom;
}

/// One line of a numeric check report.
struct NumericCheck {
    std::string name;
    bool pass = true;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Center condition check: requires E_{x1}[u](omega) ~ 0, then for each r
/// builds v = u_to_v(u, r), integrates, and reports |z(omega) - r|.
inline std::vector<NumericCheck> center_check(const Signal& u, const std::vector<double>& r_samples,
                                              const NumericConfig& cfg = {}) {
    const double e_end = iterated_integral(Word::letter(1), u, u.omega());
    if (std::abs(e_end) > cfg.precondition_tolerance)
        throw PreconditionFailed("center_check: E_{x1}[u](omega) = " + std::to_string(e_end) +
                                 " is not ~ 0");
    std::vector<NumericCheck> checks;
    for (double r : r_samples) {
        NumericCheck c;
        c.name = "center r=" + std::to_string(r);
        c.tolerance = cfg.ode_tolerance;
        const Signal v = u_to_v(u, r, cfg);
        const Trace run = integrate_abel(v, r, cfg);
        c.max_error = std::abs(run.final() - r);
        c.pass = c.max_error < c.tolerance;
        checks.push_back(std::move(c));
    }
    return checks;
}

/// Moment-condition report: for i = 2..m and k = 0..kmax evaluates both
/// sides of   integral_0^omega v_i E^k_{x1}[v] dtau = k! E_{x_i x_1^k}[v](omega)
/// and reports (a) the pairwise quadrature agreement and (b) whether the
/// common value vanishes (the moment condition itself).
struct MomentReport {
    std::vector<NumericCheck> identity;   // both-sides agreement
    std::vector<NumericCheck> vanishing;  // moment values
};

inline MomentReport moment_check(const Signal& v, int kmax, const NumericConfig& cfg = {}) {
    MomentReport rep;
    const std::size_t m = v.channels();
    const auto ex1 = iterated_integral_grid(Word::letter(1), v);
    const double h = v.step();
    for (std::size_t i = 2; i <= m; ++i) {
        for (int k = 0; k <= kmax; ++k) {
            // Left side: trapezoid of v_i(t) * E_{x1}(t)^k.
            double lhs = 0.0;
            const auto& vi = v.channel(i - 1);
            for (std::size_t g = 1; g < v.grid_size(); ++g) {
                const double a = vi[g - 1] * std::pow(ex1[g - 1], k);
                const double b = vi[g] * std::pow(ex1[g], k);
                lhs += 0.5 * h * (a + b);
            }
            // Right side: k! E_{x_i x_1^k}[v](omega).
            Word w = Word::letter(static_cast<int>(i));
            for (int t = 0; t < k; ++t) w = w.append(1);
            const double rhs =
                to_double(Rational(factorial(static_cast<unsigned>(k)))) *
                iterated_integral_grid(w, v).back();
            NumericCheck ident;
            ident.name = "moment-identity i=" + std::to_string(i) + " k=" + std::to_string(k);
            ident.tolerance = cfg.quadrature_tolerance;
            ident.max_error = std::abs(lhs - rhs);
            ident.pass = ident.max_error < ident.tolerance;
            rep.identity.push_back(std::move(ident));
            NumericCheck vanish;
            vanish.name = "moment-vanishing i=" + std::to_string(i) + " k=" + std::to_string(k);
            vanish.tolerance = cfg.quadrature_tolerance;
            vanish.max_error = std::abs(lhs);
            vanish.pass = vanish.max_error < vanish.tolerance;
            rep.vanishing.push_back(std::move(vanish));
        }
    }
    return rep;
}

/// First-moment relation between v = u_to_v(u, r) and u:
///   E_{x_i}[v](omega) = E_{x_i}[u](omega)
///                     - r sum_{k>=0} r^k k! E_{x_{i+1} x_1^k}[u](omega),
/// the k-sum truncated once |r^k k! E| drops below tolerance.
inline std::vector<NumericCheck> uv_moment_equivalence(const Signal& u, double r,
                                                       const NumericConfig& cfg = {}) {
    const Signal v = u_to_v(u, r, cfg);
    const std::size_t m = u.channels();
    std::vector<NumericCheck> checks;
    const auto ex1 = iterated_integral_grid(Word::letter(1), u);
    double max_e = 0.0;
    for (double e : ex1) max_e = std::max(max_e, std::abs(e));
    const double h = u.step();
    for (std::size_t i = 1; i + 1 <= m; ++i) {
        const double lhs = iterated_integral_grid(Word::letter(static_cast<int>(i)), v).back();
        double l1 = 0.0; // trapezoid of |u_{i+1}|
        const auto& unext = u.channel(i);
        for (std::size_t g = 1; g < u.grid_size(); ++g)
            l1 += 0.5 * h * (std::abs(unext[g - 1]) + std::abs(unext[g]));
        double sum = 0.0;
        double rk = r; // r^{k+1} running factor
        Rational kfact = 1;
        for (int k = 0; k <= 512; ++k) {
            // |r^{k+1} k! E_{x_{i+1} x_1^k}| <= r^{k+1} L1(u_{i+1}) max|E_{x1}|^k;
            // stop once the whole remaining tail is negligible.
            const double tail_bound =
                rk * l1 * std::pow(max_e, k) / std::max(1e-12, 1.0 - r * max_e);
            if (tail_bound < cfg.quadrature_tolerance * 1e-3) break;
            Word w = Word::letter(static_cast<int>(i + 1));
            for (int t = 0; t < k; ++t) w = w.append(1);
            sum += rk * to_double(kfact) * iterated_integral_grid(w, u).back();
            rk *= r;
            kfact *= (k + 1);
        }
        const double rhs = iterated_integral_grid(Word::letter(static_cast<int>(i)), u).back() - sum;
        NumericCheck c;
        c.name = "uv-moment i=" + std::to_string(i);
        c.tolerance = cfg.quadrature_tolerance;
        c.max_error = std::abs(lhs - rhs);
        c.pass = c.max_error < c.tolerance;
        checks.push_back(std::move(c));
    }
    return checks;
}

} // namespace fliess

#endif
