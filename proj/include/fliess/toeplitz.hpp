#ifndef FLIESS_TOEPLITZ_HPP
#define FLIESS_TOEPLITZ_HPP

#include <map>
#include <string>
#include <vector>

#include "fliess/errors.hpp"
#include "fliess/nc_series.hpp"

namespace fliess {

/// Unipotent upper-triangular Toeplitz series I + sum_{i=1}^{m-1} d_i N^i,
/// where N is the m x m nilpotent super-diagonal shift (N^n = 0 for n >= m).
/// Only the entry tuple (d_1, ..., d_{m-1}) is stored; the matrix shape is
/// an invariant of the representation, never materialized.
///
/// These are simultaneously the elements of the shuffle group of unipotent
/// Toeplitz matrices and (read as d_delta) the elements of the group of
/// Toeplitz affine Fliess operators under composition.
class ToeplitzSeries {
public:
    /// Identity element 0_delta (matrix I): all entries zero.
    ToeplitzSeries(int m, int cap)
        : m_(m), cap_(cap), entries_(static_cast<std::size_t>(m - 1), NCSeries(m, cap)) {
        if (m < 2) throw std::invalid_argument("ToeplitzSeries: m must be >= 2");
    }

    explicit ToeplitzSeries(std::vector<NCSeries> entries)
        : m_(static_cast<int>(entries.size()) + 1),
          cap_(entries.empty() ? 0 : entries.front().cap()),
          entries_(std::move(entries)) {
        if (entries_.empty()) throw std::invalid_argument("ToeplitzSeries: need >= 1 entry");
        for (const auto& e : entries_) {
            if (e.alphabet_size() != m_)
                throw ShapeMismatch("ToeplitzSeries: entry alphabet must equal matrix size m");
            if (e.cap() != cap_)
                throw ShapeMismatch("ToeplitzSeries: entries must share one cap");
        }
    }

    static ToeplitzSeries identity(int m, int cap) { return ToeplitzSeries(m, cap); }

    int m() const { return m_; }
    int cap() const { return cap_; }

    /// d_i for i in 1..m-1.
    const NCSeries& entry(int i) const { return entries_.at(static_cast<std::size_t>(i - 1)); }
    NCSeries& entry(int i) { return entries_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<NCSeries>& entries() const { return entries_; }

    bool is_identity() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    bool operator==(const ToeplitzSeries& o) const {
        return m_ == o.m_ && cap_ == o.cap_ && entries_ == o.entries_;
    }

    void check_same_shape(const ToeplitzSeries& o) const {
        if (m_ != o.m_) throw ShapeMismatch("Toeplitz operands have different m");
    }

private:
    int m_;
    int cap_;
    std::vector<NCSeries> entries_;
};

/// Componentwise matrix shuffle product. Powers of N add indices, so
/// entry_k(A sh B) = sum_{i+j=k} A_i sh B_j with entry_0 = 1.
inline ToeplitzSeries toeplitz_shuffle(const ToeplitzSeries& a, const ToeplitzSeries& b) {
    a.check_same_shape(b);
    const int m = a.m();
    const int cap = std::min(a.cap(), b.cap());
    ToeplitzSeries r(m, cap);
    for (int k = 1; k <= m - 1; ++k) {
        NCSeries acc = a.entry(k).truncated(cap) + b.entry(k).truncated(cap);
        for (int i = 1; i <= k - 1; ++i) acc += shuffle(a.entry(i), b.entry(k - i)).truncated(cap);
        r.entry(k) = acc;
    }
    return r;
}

/// Shuffle inverse in the unipotent Toeplitz group, as the terminating
/// geometric series sum_k (-Q)^{sh k} of the nilpotent part Q = sum d_i N^i
/// (Q^{sh k} has N-degree >= k, so k stops at m-1). The unipotent constant
/// term makes every element invertible; no precondition.
inline ToeplitzSeries toeplitz_shuffle_inverse(const ToeplitzSeries& a) {
    const int m = a.m();
    const int cap = a.cap();
    // power[i] = entry i of (-Q)^{sh k}, updated in place per k.
    std::vector<NCSeries> power(static_cast<std::size_t>(m), NCSeries(m, cap));
    power[0] = NCSeries::unit(m, cap);
    ToeplitzSeries result(m, cap);
    for (int k = 1; k <= m - 1; ++k) {
        std::vector<NCSeries> next(static_cast<std::size_t>(m), NCSeries(m, cap));
        for (int i = k; i <= m - 1; ++i) {
            NCSeries acc(m, cap);
            for (int j = 1; j <= i - (k - 1); ++j)
                acc += shuffle(Rational(-1) * a.entry(j), power[static_cast<std::size_t>(i - j)]);
            next[static_cast<std::size_t>(i)] = acc;
        }
        power = std::move(next);
        for (int i = 1; i <= m - 1; ++i) result.entry(i) += power[static_cast<std::size_t>(i)];
    }
    return result;
}

/// phi_d(x_i)(e) = x_i e + sum_{j=1}^{m-i} x_{i+j} (d_j sh e). For i = m the
/// sum is empty and this is plain left concatenation by x_m.
inline NCSeries phi_letter(const ToeplitzSeries& d, int i, const NCSeries& e) {
    if (i < 1 || i > d.m()) throw std::invalid_argument("phi_letter: letter out of range");
    NCSeries r = concat_letter(i, e);
    for (int j = 1; j <= d.m() - i; ++j) r += concat_letter(i + j, shuffle(d.entry(j), e));
    return r;
}

/// Mixed composition product c o~ d_delta = sum_eta <c,eta> phi_d(eta)(1),
/// where phi_d is the concatenation homomorphism determined by phi_letter.
/// Left linear in c. phi_d(eta)(1) has minimal degree >= deg(eta), so the
/// cap-truncated input determines the cap-truncated output exactly.
///
/// phi_d(eta)(1) is memoized per call over suffixes of the words of c:
/// phi_d(x_i eta')(1) = phi_d(x_i)(phi_d(eta')(1)).
inline NCSeries mixed_compose(const NCSeries& c, const ToeplitzSeries& d) {
    if (c.alphabet_size() != d.m())
        throw ShapeMismatch("mixed_compose: series alphabet must equal Toeplitz m");
    const int cap = std::min(c.cap(), d.cap());
    std::map<Word, NCSeries> images; // suffix -> phi_d(suffix)(1)
    images.emplace(Word::empty(), NCSeries::unit(d.m(), cap));
    // Suffix closure, computed shortest-first so each lookup hits the memo.
    auto image_of = [&](auto&& self, const Word& w) -> const NCSeries& {
        auto it = images.find(w);
        if (it != images.end()) return it->second;
        const NCSeries& tail_img = self(self, w.tail());
        return images.emplace(w, phi_letter(d, w.head(), tail_img)).first->second;
    };
    NCSeries r(d.m(), cap);
    for (const auto& [w, q] : c.terms()) {
        if (w.degree() > cap) continue;
        r += q * image_of(image_of, w);
    }
    return r;
}

/// Componentwise extension of the mixed composition product to entry tuples.
inline ToeplitzSeries mixed_compose(const ToeplitzSeries& c, const ToeplitzSeries& d) {
    c.check_same_shape(d);
    std::vector<NCSeries> entries;
    entries.reserve(static_cast<std::size_t>(c.m() - 1));
    for (int i = 1; i <= c.m() - 1; ++i) entries.push_back(mixed_compose(c.entry(i), d));
    return ToeplitzSeries(std::move(entries));
}

/// Pre-Lie product, the right linearization of the mixed composition:
///   x_i eta <| d = x_i (eta <| d) + sum_{j=1}^{m-i} x_{i+j} (d_j sh eta),
/// with e <| d = 0. Satisfies c o~ (eps d)_delta = c + eps (c <| d) + O(eps^2).
inline NCSeries pre_lie(const NCSeries& c, const ToeplitzSeries& d) {
    if (c.alphabet_size() != d.m())
        throw ShapeMismatch("pre_lie: series alphabet must equal Toeplitz m");
    const int cap = std::min(c.cap(), d.cap());
    std::map<Word, NCSeries> memo;
    auto word_prelie = [&](auto&& self, const Word& w) -> const NCSeries& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        NCSeries r(d.m(), cap);
        if (!w.is_empty()) {
            const int i = w.head();
            const Word rest = w.tail();
            r = concat_letter(i, self(self, rest));
            NCSeries rest_series = NCSeries::monomial(d.m(), cap, rest);
            for (int j = 1; j <= d.m() - i; ++j)
                r += concat_letter(i + j, shuffle(d.entry(j), rest_series));
        }
        return memo.emplace(w, std::move(r)).first->second;
    };
    NCSeries r(d.m(), cap);
    for (const auto& [w, q] : c.terms()) {
        if (w.degree() > cap) continue;
        r += q * word_prelie(word_prelie, w);
    }
    return r;
}

/// Group product on Toeplitz delta-series:
///   (c_delta o d_delta)_Toep = (c_Toep o~ d_delta) sh d_Toep.
inline ToeplitzSeries group_product(const ToeplitzSeries& c, const ToeplitzSeries& d) {
    return toeplitz_shuffle(mixed_compose(c, d), d);
}

/// Group inverse by graded fixed-point iteration on
///   x_Toep = (d_Toep o~ x_delta)^{sh -1}.
/// The map is an ultrametric contraction freezing one more degree per sweep,
/// so exactly cap+1 sweeps from x = 0_delta give the truncation-exact inverse.
inline ToeplitzSeries group_inverse(const ToeplitzSeries& d) {
    ToeplitzSeries x = ToeplitzSeries::identity(d.m(), d.cap());
    for (int sweep = 0; sweep <= d.cap(); ++sweep)
        x = toeplitz_shuffle_inverse(mixed_compose(d, x));
    return x;
}

/// The delta-power feedback pattern: entries delta_1^{sh i} with the output
/// series c1 substituted, i.e. entry_i = c1^{sh i} for i = 1..m-1. This is
/// the only composition-with-delta semantics the library supports.
inline ToeplitzSeries substitute_delta_powers(const NCSeries& c1, int m) {
    std::vector<NCSeries> entries;
    entries.reserve(static_cast<std::size_t>(m - 1));
    NCSeries pw = NCSeries::unit(c1.alphabet_size(), c1.cap());
    for (int i = 1; i <= m - 1; ++i) {
        pw = shuffle(pw, c1);
        entries.push_back(pw);
    }
    return ToeplitzSeries(std::move(entries));
}

} // namespace fliess

#endif
