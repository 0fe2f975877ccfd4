#ifndef FLIESS_CPOLY_HPP
#define FLIESS_CPOLY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fliess/errors.hpp"
#include "fliess/rational.hpp"

namespace fliess {

/// Commutative monomial over generators of type G: a sorted multiset.
/// G must provide operator<=>, operator==, a degree() and a str() method.
template <typename G>
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<G> gens) : gens_(std::move(gens)) {
        std::sort(gens_.begin(), gens_.end());
    }

    static Monomial one() { return Monomial{}; }
    static Monomial single(G g) { return Monomial(std::vector<G>{std::move(g)}); }

    bool is_one() const { return gens_.empty(); }
    const std::vector<G>& gens() const { return gens_; }
    std::size_t size() const { return gens_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& g : gens_) d += g.degree();
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        std::vector<G> v;
        v.reserve(gens_.size() + o.gens_.size());
        std::merge(gens_.begin(), gens_.end(), o.gens_.begin(), o.gens_.end(),
                   std::back_inserter(v));
        Monomial r;
        r.gens_ = std::move(v);
        return r;
    }

    bool operator==(const Monomial& o) const { return gens_ == o.gens_; }
    auto operator<=>(const Monomial& o) const { return gens_ <=> o.gens_; }

    std::string str() const {
        if (gens_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (i) s += "*";
            s += gens_[i].str();
        }
        return s;
    }

private:
    std::vector<G> gens_;
};

/// Commutative polynomial with rational coefficients over generators G.
/// One implementation, two clients: the Hopf coordinate ring on a^k_eta
/// generators and the classical Faa di Bruno ring on h_i / t_i symbols.
template <typename G>
class CPoly {
public:
    using Mono = Monomial<G>;
    using TermMap = std::map<Mono, Rational>;

    CPoly() = default;

    static CPoly zero() { return CPoly{}; }
    static CPoly one() { return constant(1); }
    static CPoly constant(const Rational& q) {
        CPoly p;
        p.add_term(Mono::one(), q);
        return p;
    }
    static CPoly generator(G g) {
        CPoly p;
        p.add_term(Mono::single(std::move(g)), 1);
        return p;
    }
    static CPoly monomial(Mono m, const Rational& q = 1) {
        CPoly p;
        p.add_term(std::move(m), q);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    Rational coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Mono& m, const Rational& q) {
        if (q == 0) return;
        auto [it, inserted] = terms_.emplace(m, q);
        if (!inserted) {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }

    CPoly& operator+=(const CPoly& o) {
        for (const auto& [m, q] : o.terms_) add_term(m, q);
        return *this;
    }
    CPoly& operator-=(const CPoly& o) {
        for (const auto& [m, q] : o.terms_) add_term(m, -q);
        return *this;
    }

    friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
    friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
    friend CPoly operator-(const CPoly& a) { return Rational(-1) * a; }

    friend CPoly operator*(const Rational& q, const CPoly& a) {
        CPoly r;
        if (q == 0) return r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, q * c);
        return r;
    }

    friend CPoly operator*(const CPoly& a, const CPoly& b) {
        CPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    bool operator==(const CPoly& o) const { return terms_ == o.terms_; }

    /// Ring-morphism substitution G -> Rational. Every generator occurring
    /// in the polynomial must be assigned, else UnboundGenerator.
    Rational substitute(const std::function<Rational(const G&)>& assign) const {
        Rational total = 0;
        for (const auto& [m, c] : terms_) {
            Rational prod = c;
            for (const auto& g : m.gens()) prod *= assign(g);
            total += prod;
        }
        return total;
    }

    Rational substitute(const std::map<G, Rational>& assign) const {
        return substitute([&](const G& g) {
            auto it = assign.find(g);
            if (it == assign.end())
                throw UnboundGenerator("substitute: no assignment for generator " + g.str());
            return it->second;
        });
    }

    /// Ring-morphism substitution G -> CPoly<G2> (generator images may be
    /// polynomials in another ring).
    template <typename G2>
    CPoly<G2> substitute_poly(const std::function<CPoly<G2>(const G&)>& image) const {
        CPoly<G2> total;
        for (const auto& [m, c] : terms_) {
            CPoly<G2> prod = CPoly<G2>::constant(c);
            for (const auto& g : m.gens()) prod = prod * image(g);
            total += prod;
        }
        return total;
    }

    /// True if every monomial (weighted by generator degrees) has the same degree.
    bool is_homogeneous_of_degree(int d) const {
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) { s += "-"; a = -a; }
            } else {
                s += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            if (m.is_one()) s += to_short_string(a);
            else {
                if (a != 1) s += to_short_string(a) + "*";
                s += m.str();
            }
            first = false;
        }
        return s;
    }

private:
    TermMap terms_;
};

} // namespace fliess

#endif
