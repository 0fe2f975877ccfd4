#ifndef FLIESS_NC_SERIES_HPP
#define FLIESS_NC_SERIES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fliess/errors.hpp"
#include "fliess/rational.hpp"
#include "fliess/word.hpp"

namespace fliess {

/// Noncommutative formal power series over {x_1..x_m} with exact rational
/// coefficients, truncated by word DEGREE (deg x_i = i), not word length.
/// The degree filtration is the one every recursion in this library
/// respects: each graded piece c(n) lives at degree n-1.
///
/// Invariants: no explicit zero coefficients, no stored word of degree > cap,
/// no letter index > m. Operations producing terms above the cap drop them
/// silently (truncation is part of the algebra); only coefficient queries
/// above the cap raise QueryBeyondCap.
class NCSeries {
public:
    using TermMap = std::map<Word, Rational>;

    NCSeries(int m, int cap) : m_(m), cap_(cap) {
        if (m < 1) throw std::invalid_argument("NCSeries: alphabet size must be >= 1");
        if (cap < 0) throw std::invalid_argument("NCSeries: cap must be >= 0");
    }

    static NCSeries zero(int m, int cap) { return NCSeries(m, cap); }

    /// The unit series 1 = 1*e.
    static NCSeries unit(int m, int cap) {
        NCSeries s(m, cap);
        s.add_term(Word::empty(), 1);
        return s;
    }

    static NCSeries monomial(int m, int cap, const Word& w, const Rational& coeff = 1) {
        NCSeries s(m, cap);
        s.add_term(w, coeff);
        return s;
    }

    int alphabet_size() const { return m_; }
    int cap() const { return cap_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// <c, w>: stored coefficient or 0. Words beyond the cap are untracked.
    Rational coefficient(const Word& w) const {
        if (w.degree() > cap_)
            throw QueryBeyondCap("coefficient: word " + w.str() + " has degree beyond cap " +
                                 std::to_string(cap_));
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Accumulates coeff onto word w; drops terms above cap and zero results.
    void add_term(const Word& w, const Rational& coeff) {
        if (coeff == 0) return;
        if (w.degree() > cap_) return;
        if (w.max_letter() > m_)
            throw AlphabetMismatch("add_term: word " + w.str() + " uses letters beyond x" +
                                   std::to_string(m_));
        auto [it, inserted] = terms_.emplace(w, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    NCSeries& operator+=(const NCSeries& o) {
        check_same_alphabet(o);
        cap_ = std::min(cap_, o.cap_);
        prune_above_cap();
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }

    NCSeries& operator-=(const NCSeries& o) {
        check_same_alphabet(o);
        cap_ = std::min(cap_, o.cap_);
        prune_above_cap();
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }

    friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }

    friend NCSeries operator*(const Rational& q, const NCSeries& a) {
        NCSeries r(a.m_, a.cap_);
        if (q == 0) return r;
        for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, q * c);
        return r;
    }

    friend NCSeries operator-(const NCSeries& a) { return Rational(-1) * a; }

    bool operator==(const NCSeries& o) const {
        return m_ == o.m_ && cap_ == o.cap_ && terms_ == o.terms_;
    }

    /// Coefficient-wise equality ignoring cap metadata beyond the shared cap.
    bool agrees_with(const NCSeries& o) const {
        int shared = std::min(cap_, o.cap_);
        for (const auto& [w, c] : terms_)
            if (w.degree() <= shared && o.coefficient(w) != c) return false;
        for (const auto& [w, c] : o.terms_)
            if (w.degree() <= shared && coefficient(w) != c) return false;
        return true;
    }

    /// First word (canonical order) where the two series differ, if any.
    std::pair<bool, Word> first_disagreement(const NCSeries& o) const {
        int shared = std::min(cap_, o.cap_);
        for (const auto& w : enumerate_words(std::max(m_, o.m_), shared))
            if (coefficient(w) != o.coefficient(w)) return {true, w};
        return {false, Word::empty()};
    }

    NCSeries truncated(int new_cap) const {
        NCSeries r(m_, std::min(cap_, new_cap));
        for (const auto& [w, c] : terms_)
            if (w.degree() <= r.cap_) r.terms_.emplace(w, c);
        return r;
    }

    /// Graded piece c(n): the restriction to words of degree exactly n-1.
    NCSeries graded_component(int n) const {
        if (n < 1) throw std::invalid_argument("graded_component: n must be >= 1");
        NCSeries r(m_, cap_);
        for (const auto& [w, c] : terms_)
            if (w.degree() == n - 1) r.terms_.emplace(w, c);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) s += " + ";
            s += to_short_string(c) + " " + w.str();
            first = false;
        }
        return s;
    }

    void check_same_alphabet(const NCSeries& o) const {
        if (m_ != o.m_)
            throw AlphabetMismatch("series over alphabets of size " + std::to_string(m_) +
                                   " and " + std::to_string(o.m_));
    }

private:
    void prune_above_cap() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.degree() > cap_) it = terms_.erase(it);
            else ++it;
        }
    }

    int m_;
    int cap_;
    TermMap terms_;
};

/// Concatenation product; words multiply by juxtaposition.
inline NCSeries concat(const NCSeries& a, const NCSeries& b) {
    a.check_same_alphabet(b);
    NCSeries r(a.alphabet_size(), std::min(a.cap(), b.cap()));
    for (const auto& [wa, ca] : a.terms()) {
        if (wa.degree() > r.cap()) continue;
        for (const auto& [wb, cb] : b.terms()) {
            if (wa.degree() + wb.degree() > r.cap()) continue;
            r.add_term(wa.concat(wb), ca * cb);
        }
    }
    return r;
}

/// Left concatenation by a single letter: x_i * c.
inline NCSeries concat_letter(int i, const NCSeries& c) {
    NCSeries r(c.alphabet_size(), c.cap());
    for (const auto& [w, q] : c.terms()) r.add_term(w.prepend(i), q);
    return r;
}

namespace detail {

/// Shuffle of two bare words as a word->multiplicity map, by dynamic
/// programming over suffix pairs. The multiplicity of each interleaving
/// pattern is exact (BigInt; C(|u|+|v|, |u|) overflows fixed width for
/// long words).
inline std::map<Word, BigInt> word_shuffle(const Word& u, const Word& v) {
    const std::size_t p = u.length(), q = v.length();
    // dp[i][j] = shuffle of u[i..] and v[j..]
    std::vector<std::vector<std::map<Word, BigInt>>> dp(
        p + 1, std::vector<std::map<Word, BigInt>>(q + 1));
    dp[p][q].emplace(Word::empty(), 1);
    for (std::size_t i = p + 1; i-- > 0;) {
        for (std::size_t j = q + 1; j-- > 0;) {
            if (i == p && j == q) continue;
            auto& cell = dp[i][j];
            if (i < p)
                for (const auto& [w, mult] : dp[i + 1][j]) cell[w.prepend(u.at(i))] += mult;
            if (j < q)
                for (const auto& [w, mult] : dp[i][j + 1]) cell[w.prepend(v.at(j))] += mult;
        }
    }
    return dp[0][0];
}

} // namespace detail

/// Shuffle product, the bilinear extension of
///   (x_i u) sh (x_j v) = x_i (u sh (x_j v)) + x_j ((x_i u) sh v),
/// with the empty word as unit. Commutative and associative; dual to the
/// pointwise product of iterated integrals.
inline NCSeries shuffle(const NCSeries& a, const NCSeries& b) {
    a.check_same_alphabet(b);
    NCSeries r(a.alphabet_size(), std::min(a.cap(), b.cap()));
    for (const auto& [wa, ca] : a.terms()) {
        if (wa.degree() > r.cap()) continue;
        for (const auto& [wb, cb] : b.terms()) {
            if (wa.degree() + wb.degree() > r.cap()) continue;
            const Rational cc = ca * cb;
            for (const auto& [w, mult] : detail::word_shuffle(wa, wb))
                r.add_term(w, cc * Rational(mult));
        }
    }
    return r;
}

/// k-th shuffle power; k = 0 gives the unit series.
inline NCSeries shuffle_power(const NCSeries& a, int k) {
    if (k < 0) throw std::invalid_argument("shuffle_power: negative exponent");
    NCSeries r = NCSeries::unit(a.alphabet_size(), a.cap());
    for (int i = 0; i < k; ++i) r = shuffle(r, a);
    return r;
}

/// Shuffle inverse of a series with <c,e> != 0, via the geometric series of
/// the proper part: c = a(1 - p) with p proper, so c^{sh -1} = (sum_k p^{sh k})/a.
/// Each shuffle power of a proper series raises the minimal degree, so the
/// sum terminates at the cap.
inline NCSeries shuffle_inverse(const NCSeries& c) {
    const Rational a = c.coefficient(Word::empty());
    if (a == 0) throw NotInvertible("shuffle_inverse: constant term is zero");
    // p = 1 - c/a  (proper by construction)
    NCSeries p = NCSeries::unit(c.alphabet_size(), c.cap()) - Rational(1) / a * c;
    NCSeries sum = NCSeries::unit(c.alphabet_size(), c.cap());
    NCSeries pk = sum;
    for (int k = 1; k <= c.cap(); ++k) {
        pk = shuffle(pk, p);
        if (pk.is_zero()) break;
        sum += pk;
    }
    return Rational(1) / a * sum;
}

} // namespace fliess

#endif
