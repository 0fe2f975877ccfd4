#ifndef FLIESS_HOPF_HPP
#define FLIESS_HOPF_HPP

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fliess/cpoly.hpp"
#include "fliess/nc_series.hpp"
#include "fliess/toeplitz.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// Coordinate function a^k_eta: the linear functional d |-> <d_k, eta> on
/// tuples of series. Generator of the Hopf algebra H^(mbar).
/// Grade ||a^k_eta|| = k + deg(eta) >= 1.
struct CoordGen {
    int root = 1;
    Word word;

    int degree() const { return root + word.degree(); }

    bool operator==(const CoordGen& o) const { return root == o.root && word == o.word; }
    std::strong_ordering operator<=>(const CoordGen& o) const {
        if (auto c = degree() <=> o.degree(); c != 0) return c;
        if (auto c = root <=> o.root; c != 0) return c;
        return word <=> o.word;
    }

    /// Printed as a[k;word], e.g. a[2;x1.x3] or a[1;e].
    std::string str() const { return "a[" + std::to_string(root) + ";" + word.str() + "]"; }
};

using HopfElem = CPoly<CoordGen>;
using HopfMono = Monomial<CoordGen>;

/// Ambient parameters of H^(mbar): alphabet size m (letters in words) and
/// root-index bound mbar <= m.
struct HopfContext {
    int m;
    int mbar;

    HopfContext(int m_, int mbar_) : m(m_), mbar(mbar_) {
        if (m < 1) throw std::invalid_argument("HopfContext: m must be >= 1");
        if (mbar < 1 || mbar > m)
            throw std::invalid_argument("HopfContext: need 1 <= mbar <= m");
    }

    void check(const CoordGen& g) const {
        if (g.root < 1 || g.root > mbar)
            throw std::invalid_argument("CoordGen root " + std::to_string(g.root) +
                                        " outside [1," + std::to_string(mbar) + "]");
        if (g.word.max_letter() > m)
            throw std::invalid_argument("CoordGen word " + g.word.str() + " uses letters beyond x" +
                                        std::to_string(m));
    }

    /// All generators of grade exactly n, in canonical order.
    std::vector<CoordGen> generators_of_grade(int n) const {
        std::vector<CoordGen> out;
        for (int k = 1; k <= mbar && k <= n; ++k)
            for (const auto& w : enumerate_words(m, n - k))
                if (w.degree() == n - k) out.push_back(CoordGen{k, w});
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Element of H^(mbar) (x) H^(mbar) in bilinear normal form: pairs with
/// identical left/right monomials are merged, zero coefficients dropped.
class Tensor {
public:
    using Key = std::pair<HopfMono, HopfMono>;
    using TermMap = std::map<Key, Rational>;

    Tensor() = default;

    static Tensor of(const HopfMono& l, const HopfMono& r, const Rational& q = 1) {
        Tensor t;
        t.add_term(l, r, q);
        return t;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const HopfMono& l, const HopfMono& r, const Rational& q) {
        if (q == 0) return;
        auto [it, inserted] = terms_.emplace(Key{l, r}, q);
        if (!inserted) {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Tensor& operator+=(const Tensor& o) {
        for (const auto& [k, q] : o.terms_) add_term(k.first, k.second, q);
        return *this;
    }
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }

    friend Tensor operator*(const Rational& q, const Tensor& t) {
        Tensor r;
        if (q == 0) return r;
        for (const auto& [k, c] : t.terms_) r.terms_.emplace(k, q * c);
        return r;
    }

    /// Componentwise product (a (x) b)(c (x) d) = ac (x) bd.
    friend Tensor operator*(const Tensor& a, const Tensor& b) {
        Tensor r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first * kb.first, ka.second * kb.second, ca * cb);
        return r;
    }

    bool operator==(const Tensor& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, q] : terms_) {
            if (!first) s += "\n";
            s += to_short_string(q) + " " + k.first.str() + " (x) " + k.second.str();
            first = false;
        }
        return s;
    }

private:
    TermMap terms_;
};

namespace hopf_detail {

/// Right-shift map as a derivation: a^p_eta |-> a^p_{eta x_j} on each factor,
/// and theta~_{x_j} 1 = 0.
inline HopfElem theta_tilde_mono(int j, const HopfMono& mono) {
    HopfElem out;
    const auto& gens = mono.gens();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<CoordGen> v = gens;
        v[i] = CoordGen{gens[i].root, gens[i].word.append(j)};
        out.add_term(HopfMono(std::move(v)), 1);
    }
    return out;
}

inline HopfElem theta_tilde(int j, const HopfElem& p) {
    HopfElem out;
    for (const auto& [mono, q] : p.terms()) out += q * theta_tilde_mono(j, mono);
    return out;
}

/// A_e^(k): multiplication by a^k_e.
inline HopfMono append_empty_root(const HopfMono& mono, int k) {
    return mono * HopfMono::single(CoordGen{k, Word::empty()});
}

} // namespace hopf_detail

/// Coproduct of an empty-word generator:
///   Delta a^l_e = a^l_e (x) 1 + 1 (x) a^l_e + sum_{k=1}^{l-1} a^k_e (x) a^{l-k}_e.
inline Tensor coproduct_empty(int l) {
    if (l < 1) throw std::invalid_argument("coproduct_empty: root must be >= 1");
    const HopfMono one = HopfMono::one();
    auto gen = [](int k) { return HopfMono::single(CoordGen{k, Word::empty()}); };
    Tensor t = Tensor::of(gen(l), one) + Tensor::of(one, gen(l));
    for (int k = 1; k <= l - 1; ++k) t += Tensor::of(gen(k), gen(l - k));
    return t;
}

/// The coderivation intertwiner
///   Theta~_{x_i} = theta~_{x_i} (x) id + id (x) theta~_{x_i}
///                + sum_{j=1}^{i-1} theta~_{x_j} (x) A_e^(i-j)
/// applied to a tensor.
inline Tensor apply_theta_tensor(int i, const Tensor& t) {
    using namespace hopf_detail;
    Tensor out;
    for (const auto& [key, q] : t.terms()) {
        const auto& [l, r] = key;
        const HopfElem left_shift = theta_tilde_mono(i, l);
        for (const auto& [lm, lc] : left_shift.terms()) out.add_term(lm, r, q * lc);
        const HopfElem right_shift = theta_tilde_mono(i, r);
        for (const auto& [rm, rc] : right_shift.terms()) out.add_term(l, rm, q * rc);
        for (int j = 1; j <= i - 1; ++j) {
            const HopfElem jshift = theta_tilde_mono(j, l);
            for (const auto& [lm, lc] : jshift.terms())
                out.add_term(lm, append_empty_root(r, i - j), q * lc);
        }
    }
    return out;
}

/// Coproduct of a generator: Delta a^k_eta = Theta~_eta (Delta a^k_e), the
/// intertwiners applied letter by letter (leftmost letter first).
inline Tensor coproduct(const HopfContext& ctx, const CoordGen& g) {
    ctx.check(g);
    Tensor t = coproduct_empty(g.root);
    for (auto l : g.word.letters()) t = apply_theta_tensor(l, t);
    return t;
}

/// Multiplicative extension of the coproduct to all of H^(mbar);
/// Delta(1) = 1 (x) 1.
inline Tensor coproduct_elem(const HopfContext& ctx, const HopfElem& p) {
    Tensor out;
    for (const auto& [mono, q] : p.terms()) {
        Tensor t = Tensor::of(HopfMono::one(), HopfMono::one());
        for (const auto& g : mono.gens()) t = t * coproduct(ctx, g);
        out += q * t;
    }
    return out;
}

/// Reduced coproduct Delta' a = Delta a - a (x) 1 - 1 (x) a.
inline Tensor reduced_coproduct(const HopfContext& ctx, const CoordGen& g) {
    Tensor t = coproduct(ctx, g);
    const HopfMono mono = HopfMono::single(g);
    t += Tensor::of(mono, HopfMono::one(), -1);
    t += Tensor::of(HopfMono::one(), mono, -1);
    return t;
}

/// Closed-form antipode of the empty-word generators:
///   S a^k_e = -a^k_e + sum_{i=2}^{k} (-1)^i sum_{p_1+...+p_i=k, p_j>0}
///             a^{p_1}_e ... a^{p_i}_e.
inline HopfElem empty_word_antipode(int k) {
    HopfElem out;
    out.add_term(HopfMono::single(CoordGen{k, Word::empty()}), -1);
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            if (parts.size() < 2) return;
            std::vector<CoordGen> gens;
            gens.reserve(parts.size());
            for (int p : parts) gens.push_back(CoordGen{p, Word::empty()});
            const Rational sign = (parts.size() % 2 == 0) ? 1 : -1;
            out.add_term(HopfMono(std::move(gens)), sign);
            return;
        }
        for (int p = 1; p <= remaining; ++p) {
            parts.push_back(p);
            self(self, remaining - p);
            parts.pop_back();
        }
    };
    rec(rec, k);
    return out;
}

/// Classical antipode by the connected-graded convolution recursion
///   S a^l_eta = -a^l_eta - sum S(a')a''  over the reduced coproduct,
/// memoized over (root, word). Every left tensor leg of Delta' on a
/// generator is itself a single generator of strictly smaller grade, which
/// is what makes this recursion well-founded.
class ClassicalAntipode {
public:
    explicit ClassicalAntipode(HopfContext ctx) : ctx_(ctx) {}

    const HopfContext& context() const { return ctx_; }

    const HopfElem& operator()(const CoordGen& g) {
        auto it = memo_.find(g);
        if (it != memo_.end()) return it->second;
        HopfElem s;
        s.add_term(HopfMono::single(g), -1);
        const Tensor reduced = reduced_coproduct(ctx_, g);
        for (const auto& [key, q] : reduced.terms()) {
            const auto& [l, r] = key;
            // Left legs are single generators; see class comment.
            if (l.size() != 1)
                throw std::logic_error("reduced coproduct left leg is not a single generator");
            const HopfElem& sl = (*this)(l.gens().front());
            s -= q * (sl * HopfElem::monomial(r));
        }
        return memo_.emplace(g, std::move(s)).first->second;
    }

    /// Multiplicative extension to monomials and elements (S is an algebra
    /// morphism on the commutative H^(mbar)).
    HopfElem of_monomial(const HopfMono& mono) {
        HopfElem out = HopfElem::one();
        for (const auto& g : mono.gens()) out = out * (*this)(g);
        return out;
    }
    HopfElem of_elem(const HopfElem& p) {
        HopfElem out;
        for (const auto& [mono, q] : p.terms()) out += q * of_monomial(mono);
        return out;
    }

private:
    HopfContext ctx_;
    std::map<CoordGen, HopfElem> memo_;
};

/// Coderivation antipode (linear in word length):
///   S a^k_eta = theta~'_{x_{i_l}} o ... o theta~'_{x_{i_1}} (S a^k_e),
///   theta~'_{x_l} = theta~_{x_l} + sum_{j=1}^{l-1} S(a^{l-j}_e) theta~_{x_j},
/// with the empty-word antipodes taken from the closed form rather than any
/// convolution recursion.
class CoderivationAntipode {
public:
    explicit CoderivationAntipode(HopfContext ctx) : ctx_(ctx) {}

    const HopfContext& context() const { return ctx_; }

    const HopfElem& empty_antipode(int k) {
        auto it = empty_memo_.find(k);
        if (it != empty_memo_.end()) return it->second;
        return empty_memo_.emplace(k, empty_word_antipode(k)).first->second;
    }

    HopfElem operator()(const CoordGen& g) {
        ctx_.check(g);
        HopfElem cur = empty_antipode(g.root);
        for (auto l : g.word.letters()) cur = theta_prime(l, cur);
        return cur;
    }

private:
    HopfElem theta_prime(int l, const HopfElem& p) {
        HopfElem out = hopf_detail::theta_tilde(l, p);
        for (int j = 1; j <= l - 1; ++j)
            out += empty_antipode(l - j) * hopf_detail::theta_tilde(j, p);
        return out;
    }

    HopfContext ctx_;
    std::map<int, HopfElem> empty_memo_;
};

/// Ring-morphism evaluation of a Hopf element against a tuple of series:
/// a^k_eta |-> <d_k, eta>. QueryBeyondCap propagates from the series layer.
inline Rational eval_coord(const HopfElem& p, const std::vector<NCSeries>& d) {
    return p.substitute([&](const CoordGen& g) {
        if (g.root < 1 || g.root > static_cast<int>(d.size()))
            throw UnboundGenerator("eval_coord: root index " + std::to_string(g.root) +
                                   " outside the supplied tuple");
        return d[static_cast<std::size_t>(g.root - 1)].coefficient(g.word);
    });
}

/// Counit: the coefficient of the unit monomial.
inline Rational counit(const HopfElem& p) { return p.coeff(HopfMono::one()); }

/// Grade of a monomial (sum of generator grades).
inline int monomial_grade(const HopfMono& m) { return m.degree(); }

} // namespace fliess

#endif
