#ifndef FLIESS_ABEL_HPP
#define FLIESS_ABEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fliess/nc_series.hpp"
#include "fliess/toeplitz.hpp"
#include "fliess/upoly.hpp"

namespace fliess {

/// Outcome of a coefficient-level identity check, with the first failing
/// word located when the check does not pass.
struct CheckReport {
    bool pass = true;
    std::string name;
    std::optional<Word> first_bad;
    std::string detail;
};

/// Ferfera series c_F = sum_{k<=cap} k! x_1^k over an alphabet of size m.
/// Generating series of dz/dt = z^2 u, z(0) = 1.
inline NCSeries ferfera(int m, int cap) {
    NCSeries s(m, cap);
    Word w = Word::empty();
    for (int k = 0; k <= cap; ++k) {
        s.add_term(w, Rational(factorial(static_cast<unsigned>(k))));
        w = w.append(1);
    }
    return s;
}

/// Devlin's linear recursion for the Abel generating series:
///   c_{A,m}(n) = sum_{i=1}^{m} (n-i) c_{A,m}(n-i) x_i,  n >= 2,
/// with c_{A,m}(1) = 1 and c_{A,m}(n) = 0 for n < 1. Returns the graded
/// pieces for n = 1..cap+1; piece n is degree-homogeneous of degree n-1.
inline std::vector<NCSeries> devlin_pieces(int m, int cap) {
    if (m < 2) throw std::invalid_argument("devlin: m must be >= 2");
    std::vector<NCSeries> pieces;
    pieces.push_back(NCSeries::unit(m, cap)); // n = 1
    for (int n = 2; n <= cap + 1; ++n) {
        NCSeries piece(m, cap);
        for (int i = 1; i <= m && i < n; ++i) {
            const NCSeries& prev = pieces[static_cast<std::size_t>(n - i - 1)];
            for (const auto& [w, c] : prev.terms())
                piece.add_term(w.append(i), Rational(n - i) * c);
        }
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

/// Sum of the Devlin pieces: c_{A,m} truncated at cap.
inline NCSeries devlin(int m, int cap) {
    NCSeries s(m, cap);
    for (const auto& p : devlin_pieces(m, cap)) s += p;
    return s;
}

/// c_{A,m} as the first entry of the Toeplitz group inverse (I - c_F N)^{-1}.
inline NCSeries abel_via_group_inverse(int m, int cap) {
    if (m < 2) throw std::invalid_argument("abel_via_group_inverse: m must be >= 2");
    ToeplitzSeries d(m, cap);
    d.entry(1) = -ferfera(m, cap);
    return group_inverse(d).entry(1);
}

/// c_{A,m} via the closed-loop feedback formula
///   c_{A,m} = c_F o~ (I - c_F N)^{-1}_delta.
inline NCSeries abel_via_feedback(int m, int cap) {
    if (m < 2) throw std::invalid_argument("abel_via_feedback: m must be >= 2");
    ToeplitzSeries d(m, cap);
    d.entry(1) = -ferfera(m, cap);
    return mixed_compose(ferfera(m, cap), group_inverse(d));
}

/// Feedback product c @ d_Toep for the delta-power feedback pattern
/// d = (delta_1, delta_1^{sh 2}, ..., delta_1^{sh m-1}):
///   c @ d_Toep = c o~ (((d_Toep o c)^{sh -1})_delta)^{-1},
/// where d_Toep o c substitutes the first component of c for delta_1.
/// Components beyond the tuple are composed entrywise.
inline std::vector<NCSeries> feedback_product(const std::vector<NCSeries>& c) {
    if (c.empty()) throw ShapeMismatch("feedback_product: empty component tuple");
    const int m = static_cast<int>(c.size());
    for (const auto& comp : c)
        if (comp.alphabet_size() != m)
            throw ShapeMismatch("feedback_product: component alphabet must equal tuple size");
    if (m < 2) throw ShapeMismatch("feedback_product: need m >= 2 components");
    ToeplitzSeries closed = substitute_delta_powers(c.front(), m);
    ToeplitzSeries loop = group_inverse(toeplitz_shuffle_inverse(closed));
    std::vector<NCSeries> out;
    out.reserve(c.size());
    for (const auto& comp : c) out.push_back(mixed_compose(comp, loop));
    return out;
}

/// Fixed-point identity of the feedback product (with y1 the Abel series):
///   c_F o~ (sum_i y1^{sh i} N^i)_delta = y1, checked coefficient-wise.
inline CheckReport verify_fixed_point(int m, int cap) {
    CheckReport rep;
    rep.name = "feedback-fixed-point m=" + std::to_string(m) + " cap=" + std::to_string(cap);
    const NCSeries y1 = devlin(m, cap);
    const NCSeries lhs = mixed_compose(ferfera(m, cap), substitute_delta_powers(y1, m));
    auto [bad, w] = lhs.first_disagreement(y1);
    if (bad) {
        rep.pass = false;
        rep.first_bad = w;
        rep.detail = "first mismatch at " + w.str() + ": " + to_short_string(lhs.coefficient(w)) +
                     " vs " + to_short_string(y1.coefficient(w));
    }
    return rep;
}

/// Generic coefficient-wise comparison wrapped in a report.
inline CheckReport compare_series(const std::string& name, const NCSeries& a, const NCSeries& b) {
    CheckReport rep;
    rep.name = name;
    auto [bad, w] = a.first_disagreement(b);
    if (bad) {
        rep.pass = false;
        rep.first_bad = w;
        rep.detail = "first mismatch at " + w.str() + ": " + to_short_string(a.coefficient(w)) +
                     " vs " + to_short_string(b.coefficient(w));
    }
    return rep;
}

/// Both displayed shuffle recursions for the Abel series,
///   c_{A,m} = 1 + c_{A,m} sh (sum_{i=1}^m x_i c_{A,m}^{sh i-1})
///   c_{A,m} = 1 + sum_{i=1}^m x_i c_{A,m}^{sh i+1},
/// plus the graded corollary
///   c(n) = c(n-1) sh x_1
///        + sum_{i=2}^m sum_{k_1+...+k_i=n-1} c(k_1) sh (x_i (c(k_2) sh ... sh c(k_i))).
inline std::vector<CheckReport> verify_shuffle_identity(int m, int cap) {
    std::vector<CheckReport> reps;
    const NCSeries cA = devlin(m, cap);
    const NCSeries one = NCSeries::unit(m, cap);

    NCSeries inner(m, cap);
    for (int i = 1; i <= m; ++i)
        inner += concat_letter(i, shuffle_power(cA, i - 1));
    reps.push_back(compare_series("shuffle-identity-theorem m=" + std::to_string(m), cA,
                                  one + shuffle(cA, inner)));

    NCSeries direct(m, cap);
    for (int i = 1; i <= m; ++i)
        direct += concat_letter(i, shuffle_power(cA, i + 1));
    reps.push_back(
        compare_series("shuffle-identity-direct m=" + std::to_string(m), cA, one + direct));

    // Graded corollary; pieces index 0 holds c(1).
    const auto pieces = devlin_pieces(m, cap);
    auto piece = [&](int n) -> NCSeries {
        if (n < 1 || n > cap + 1) return NCSeries::zero(m, cap);
        return pieces[static_cast<std::size_t>(n - 1)];
    };
    CheckReport graded;
    graded.name = "shuffle-identity-graded m=" + std::to_string(m);
    for (int n = 2; n <= cap + 1 && graded.pass; ++n) {
        NCSeries rhs = shuffle(piece(n - 1), NCSeries::monomial(m, cap, Word::letter(1)));
        for (int i = 2; i <= m; ++i) {
            // Compositions k_1 + ... + k_i = n-1 with k_j >= 1.
            std::vector<int> ks(static_cast<std::size_t>(i), 1);
            auto rec = [&](auto&& self, int slot, int remaining) -> void {
                if (slot == i - 1) {
                    ks[static_cast<std::size_t>(slot)] = remaining;
                    NCSeries tail = piece(ks[1]);
                    for (int j = 2; j < i; ++j) tail = shuffle(tail, piece(ks[static_cast<std::size_t>(j)]));
                    rhs += shuffle(piece(ks[0]), concat_letter(i, tail));
                    return;
                }
                for (int k = 1; k <= remaining - (i - 1 - slot); ++k) {
                    ks[static_cast<std::size_t>(slot)] = k;
                    self(self, slot + 1, remaining - k);
                }
            };
            if (n - 1 >= i) rec(rec, 0, n - 1);
        }
        auto [bad, w] = piece(n).first_disagreement(rhs);
        if (bad) {
            graded.pass = false;
            graded.first_bad = w;
            graded.detail = "grade n=" + std::to_string(n) + " first mismatch at " + w.str();
        }
    }
    reps.push_back(std::move(graded));
    return reps;
}

/// Differential generator (g_1,...,g_m, z_0, h_1,...,h_{m-1}) with univariate
/// polynomial vector fields and outputs.
struct Realization {
    std::vector<UPoly> g;
    Rational z0;
    std::vector<UPoly> h;

    int m() const { return static_cast<int>(g.size()); }
    int outputs() const { return static_cast<int>(h.size()); }
};

namespace detail {

/// Symbolic coefficient polynomials L_{g_eta} h for all words of degree <= cap,
/// memoized by prefix: poly(w x_i) = L_{g_i}(poly(w)). The word eta is read
/// with its rightmost letter as the outermost Lie derivative, matching
/// <c, x_{j_k}...x_{j_1}> = L_{g_{j_1}}...L_{g_{j_k}} h(z_0).
inline std::map<Word, UPoly> lie_polynomials(const std::vector<UPoly>& g, const UPoly& h, int m,
                                             int cap) {
    std::map<Word, UPoly> polys;
    for (const auto& w : enumerate_words(m, cap)) {
        if (w.is_empty()) {
            polys.emplace(w, h);
            continue;
        }
        const UPoly& parent = polys.at(w.drop_last());
        polys.emplace(w, lie_derivative(g.at(static_cast<std::size_t>(w.last() - 1)), parent));
    }
    return polys;
}

} // namespace detail

/// Series generated by a realization: <c, eta> = L_{g_eta} h_k(z_0).
/// Lie derivatives are kept symbolic; z_0 is substituted only once each
/// word's polynomial is complete.
inline NCSeries generate_from_realization(const Realization& r, int output_index, int cap) {
    const int m = r.m();
    if (output_index < 1 || output_index > r.outputs())
        throw std::invalid_argument("generate_from_realization: output index out of range");
    NCSeries s(m, cap);
    const auto polys =
        detail::lie_polynomials(r.g, r.h.at(static_cast<std::size_t>(output_index - 1)), m, cap);
    for (const auto& [w, p] : polys) s.add_term(w, p.eval(r.z0));
    return s;
}

/// Entries h~_j of H^{-1} = I + sum h~_j N^j by the multinomial expansion of
/// (I + sum h_i N^i)^{-1}, applied to concrete UPoly outputs:
///   h~_j = sum_{k=1}^{j} (-1)^k k! sum_{k_1+...+k_j=k, k_1+2k_2+...+j k_j=j}
///          h_1^{k_1} ... h_j^{k_j} / (k_1! ... k_j!).
inline std::vector<UPoly> toeplitz_inverse_outputs(const std::vector<UPoly>& h) {
    const int n = static_cast<int>(h.size());
    std::vector<UPoly> out(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        UPoly acc;
        std::vector<int> ks(static_cast<std::size_t>(j), 0);
        auto rec = [&](auto&& self, int idx, int parts_left, int weight_left) -> void {
            if (idx == j) {
                if (parts_left != 0 || weight_left != 0) return;
                int k = 0;
                Rational denom = 1;
                UPoly prod = UPoly::constant(1);
                for (int i = 1; i <= j; ++i) {
                    const int ki = ks[static_cast<std::size_t>(i - 1)];
                    k += ki;
                    denom *= Rational(factorial(static_cast<unsigned>(ki)));
                    for (int t = 0; t < ki; ++t) prod = prod * h[static_cast<std::size_t>(i - 1)];
                }
                const Rational sign = (k % 2 == 0) ? 1 : -1;
                acc += sign * Rational(factorial(static_cast<unsigned>(k))) / denom * prod;
                return;
            }
            const int i = idx + 1;
            for (int ki = 0; ki <= parts_left && ki * i <= weight_left; ++ki) {
                ks[static_cast<std::size_t>(idx)] = ki;
                self(self, idx + 1, parts_left - ki, weight_left - ki * i);
            }
        };
        for (int k = 1; k <= j; ++k) rec(rec, 0, k, j);
        out[static_cast<std::size_t>(j - 1)] = acc;
    }
    return out;
}

/// Realization of the inverse Toeplitz affine operator:
///   h~_j = H^{-1}_{1,1+j},  g~_i = g_i + sum_{j=1}^{i-1} g_{i-j} h~_j,
/// same initial point.
inline Realization realization_inverse(const Realization& r) {
    Realization inv;
    inv.z0 = r.z0;
    inv.h = toeplitz_inverse_outputs(r.h);
    inv.g.reserve(r.g.size());
    for (int i = 1; i <= r.m(); ++i) {
        UPoly gi = r.g[static_cast<std::size_t>(i - 1)];
        for (int j = 1; j <= i - 1 && j <= r.outputs(); ++j)
            gi += r.g[static_cast<std::size_t>(i - j - 1)] * inv.h[static_cast<std::size_t>(j - 1)];
        inv.g.push_back(std::move(gi));
    }
    return inv;
}

/// c_{A,m} from the Abel realization (z^2, ..., z^{m+1}, 1, z, ..., z^{m-1}),
/// the inverse of ((z^2, 0, ..., 0), 1, (-z, 0, ..., 0)).
inline Realization abel_realization(int m) {
    Realization r;
    r.z0 = 1;
    for (int i = 1; i <= m; ++i) r.g.push_back(UPoly::monomial(1, static_cast<std::size_t>(i + 1)));
    for (int j = 1; j <= m - 1; ++j) r.h.push_back(UPoly::monomial(1, static_cast<std::size_t>(j)));
    return r;
}

inline NCSeries abel_via_realization(int m, int cap) {
    return generate_from_realization(abel_realization(m), 1, cap);
}

/// Grading-preservation check for Theorem-style inverse realizations.
/// Weight convention: a function monomial z^k weighs k; a vector-field
/// monomial z^k d/dz weighs k-1. With declared degrees deg(g_i) = i and
/// deg(h_j) = j, verifies on the inverse realization that
///   (a) h~_j is z-homogeneous of weight j,
///   (b) g~_i is z-homogeneous of field weight i (z-degree i+1),
///   (c) every symbolic coefficient polynomial L_{g~_eta} h~_k is
///       z-homogeneous of weight deg(eta) + k.
/// Reports only; a violated hypothesis (e.g. a constant h_1 declared
/// degree 1) shows up as a homogeneity failure.
inline CheckReport check_grading_preservation(const Realization& r, int cap) {
    CheckReport rep;
    rep.name = "grading-preservation";
    const Realization inv = realization_inverse(r);
    auto homogeneous_of = [](const UPoly& p, int weight) {
        if (p.is_zero()) return true;
        if (!p.is_homogeneous()) return false;
        return p.degree() == weight;
    };
    for (int j = 1; j <= inv.outputs(); ++j)
        if (!homogeneous_of(inv.h[static_cast<std::size_t>(j - 1)], j)) {
            rep.pass = false;
            rep.detail = "h~_" + std::to_string(j) + " not z-homogeneous of weight " +
                         std::to_string(j) + ": " + inv.h[static_cast<std::size_t>(j - 1)].str();
            return rep;
        }
    for (int i = 1; i <= inv.m(); ++i)
        if (!homogeneous_of(inv.g[static_cast<std::size_t>(i - 1)], i + 1)) {
            rep.pass = false;
            rep.detail = "g~_" + std::to_string(i) + " not of field weight " + std::to_string(i) +
                         ": " + inv.g[static_cast<std::size_t>(i - 1)].str();
            return rep;
        }
    for (int k = 1; k <= inv.outputs(); ++k) {
        const auto polys =
            detail::lie_polynomials(inv.g, inv.h[static_cast<std::size_t>(k - 1)], inv.m(), cap);
        for (const auto& [w, p] : polys)
            if (!homogeneous_of(p, w.degree() + k)) {
                rep.pass = false;
                rep.first_bad = w;
                rep.detail = "L_{g~_eta} h~_" + std::to_string(k) + " at eta=" + w.str() +
                             " not z-homogeneous of weight " + std::to_string(w.degree() + k);
                return rep;
            }
    }
    return rep;
}

} // namespace fliess

#endif
