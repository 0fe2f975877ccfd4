#ifndef FLIESS_UPOLY_HPP
#define FLIESS_UPOLY_HPP

#include <string>
#include <vector>

#include "fliess/rational.hpp"

namespace fliess {

/// Univariate polynomial over the rationals in the state variable z.
/// Used for vector fields g_i(z) and outputs h_i(z) of realizations.
/// Coefficients are indexed by power; trailing zeros are trimmed and the
/// zero polynomial is the empty sequence.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly zero() { return UPoly{}; }
    static UPoly constant(const Rational& a) { return UPoly({a}); }
    /// a * z^k
    static UPoly monomial(const Rational& a, std::size_t k) {
        std::vector<Rational> v(k + 1, Rational(0));
        v[k] = a;
        return UPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator-(const UPoly& a) { return Rational(-1) * a; }

    friend UPoly operator*(const Rational& q, const UPoly& a) {
        if (q == 0) return UPoly{};
        auto v = a.c_;
        for (auto& x : v) x *= q;
        return UPoly(std::move(v));
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly{};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(v));
    }

    Rational eval(const Rational& z) const {
        Rational r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * z + c_[i];
        return r;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly{};
        std::vector<Rational> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rational(i) * c_[i];
        return UPoly(std::move(v));
    }

    /// True if all nonzero monomials have the same z-degree (zero passes).
    bool is_homogeneous() const {
        int d = -1;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) {
                if (d >= 0) return false;
                d = static_cast<int>(i);
            }
        return true;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0) s += to_short_string(c_[i]);
            else {
                if (c_[i] != 1) s += to_short_string(c_[i]) + "*";
                s += (i == 1) ? "z" : "z^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Lie derivative of an output along a vector field: L_g h = h' * g.
inline UPoly lie_derivative(const UPoly& g, const UPoly& h) { return h.derivative() * g; }

} // namespace fliess

#endif
