#ifndef FLIESS_FAA_DI_BRUNO_HPP
#define FLIESS_FAA_DI_BRUNO_HPP

#include <compare>
#include <string>
#include <vector>

#include "fliess/cpoly.hpp"
#include "fliess/rational.hpp"

namespace fliess {

/// Commuting indeterminate of the classical Faa di Bruno side: h_i or the
/// Bell argument t_i, with degree(sym_i) = i.
struct FdbGen {
    char sym = 'h';
    int index = 1;

    int degree() const { return index; }

    bool operator==(const FdbGen& o) const { return sym == o.sym && index == o.index; }
    std::strong_ordering operator<=>(const FdbGen& o) const {
        if (auto c = index <=> o.index; c != 0) return c;
        return sym <=> o.sym;
    }

    std::string str() const { return std::string(1, sym) + std::to_string(index); }
};

using FdbPoly = CPoly<FdbGen>;

inline FdbPoly fdb_h(int i) { return FdbPoly::generator(FdbGen{'h', i}); }
inline FdbPoly fdb_t(int i) { return FdbPoly::generator(FdbGen{'t', i}); }

/// Partial Bell polynomial
///   B_{j,k}(t_1,...,t_l) = sum over k_1+...+k_l=k, k_1+2k_2+...+l k_l=j of
///   j!/(k_1!...k_l!) (t_1/1!)^{k_1} ... (t_l/l!)^{k_l},   l = j-k+1.
inline FdbPoly bell(int j, int k) {
    if (k < 1 || k > j) throw std::invalid_argument("bell: need 1 <= k <= j");
    const int l = j - k + 1;
    FdbPoly acc;
    std::vector<int> ks(static_cast<std::size_t>(l), 0);
    auto rec = [&](auto&& self, int idx, int parts_left, int weight_left) -> void {
        if (idx == l) {
            if (parts_left != 0 || weight_left != 0) return;
            Rational coeff = Rational(factorial(static_cast<unsigned>(j)));
            FdbPoly prod = FdbPoly::one();
            for (int i = 1; i <= l; ++i) {
                const int ki = ks[static_cast<std::size_t>(i - 1)];
                if (ki == 0) continue;
                coeff /= Rational(factorial(static_cast<unsigned>(ki)));
                Rational inv_fact = Rational(1) / Rational(factorial(static_cast<unsigned>(i)));
                for (int t = 0; t < ki; ++t) prod = prod * (inv_fact * fdb_t(i));
            }
            acc += coeff * prod;
            return;
        }
        const int i = idx + 1;
        for (int ki = 0; ki <= parts_left && ki * i <= weight_left; ++ki) {
            ks[static_cast<std::size_t>(idx)] = ki;
            self(self, idx + 1, parts_left - ki, weight_left - ki * i);
        }
    };
    rec(rec, 0, k, j);
    return acc;
}

/// Numeric Bell polynomial evaluation on rational arguments t_1..t_{j-k+1}.
inline Rational bell_eval(int j, int k, const std::vector<Rational>& t) {
    return bell(j, k).substitute([&](const FdbGen& g) {
        if (g.index < 1 || g.index > static_cast<int>(t.size()))
            throw UnboundGenerator("bell_eval: missing argument t" + std::to_string(g.index));
        return t[static_cast<std::size_t>(g.index - 1)];
    });
}

/// Symbolic entries h~_1..h~_{m-1} of H^{-1} = I + sum h~_j N^j for the
/// generic Toeplitz matrix H = I + sum h_j N^j:
///   h~_j = sum_{k=1}^{j} (-1)^k k! sum_{k_1+...+k_j=k, sum i k_i = j}
///          h_1^{k_1}...h_j^{k_j}/(k_1!...k_j!).
/// Each h~_j is degree-homogeneous of degree j under deg(h_i) = i.
inline std::vector<FdbPoly> symbolic_toeplitz_inverse(int m) {
    if (m < 2) throw std::invalid_argument("symbolic_toeplitz_inverse: m must be >= 2");
    std::vector<FdbPoly> out;
    out.reserve(static_cast<std::size_t>(m - 1));
    for (int j = 1; j <= m - 1; ++j) {
        FdbPoly acc;
        std::vector<int> ks(static_cast<std::size_t>(j), 0);
        auto rec = [&](auto&& self, int idx, int parts_left, int weight_left) -> void {
            if (idx == j) {
                if (parts_left != 0 || weight_left != 0) return;
                int k = 0;
                Rational coeff = 1;
                FdbPoly prod = FdbPoly::one();
                for (int i = 1; i <= j; ++i) {
                    const int ki = ks[static_cast<std::size_t>(i - 1)];
                    k += ki;
                    coeff /= Rational(factorial(static_cast<unsigned>(ki)));
                    for (int t = 0; t < ki; ++t) prod = prod * fdb_h(i);
                }
                const Rational sign = (k % 2 == 0) ? 1 : -1;
                acc += sign * Rational(factorial(static_cast<unsigned>(k))) * coeff * prod;
                return;
            }
            const int i = idx + 1;
            for (int ki = 0; ki <= parts_left && ki * i <= weight_left; ++ki) {
                ks[static_cast<std::size_t>(idx)] = ki;
                self(self, idx + 1, parts_left - ki, weight_left - ki * i);
            }
        };
        for (int k = 1; k <= j; ++k) rec(rec, 0, k, j);
        out.push_back(std::move(acc));
    }
    return out;
}

/// M_h, the faithful matrix representation of the diffeomorphism group:
/// entry (row k, col j) = (k!/j!) B_{j,k}(h_1, 2!h_2, ..., (j-k+1)!h_{j-k+1})
/// for k <= j, zero below the diagonal. Row 1 is (h_1, h_2, h_3, ...);
/// the diagonal entry in column i is h_1^i.
inline std::vector<std::vector<FdbPoly>> mh_matrix(int n) {
    if (n < 1) throw std::invalid_argument("mh_matrix: n must be >= 1");
    std::vector<std::vector<FdbPoly>> mh(static_cast<std::size_t>(n),
                                         std::vector<FdbPoly>(static_cast<std::size_t>(n)));
    for (int k = 1; k <= n; ++k)
        for (int j = k; j <= n; ++j) {
            FdbPoly b = bell(j, k).substitute_poly<FdbGen>([](const FdbGen& g) {
                return Rational(factorial(static_cast<unsigned>(g.index))) * fdb_h(g.index);
            });
            mh[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] =
                Rational(factorial(static_cast<unsigned>(k))) /
                Rational(factorial(static_cast<unsigned>(j))) * b;
        }
    return mh;
}

/// Sets h_1 = 1 in a polynomial (the normalization under which M_h becomes
/// unipotent and its inverse top row displays the antipode).
inline FdbPoly set_h1_to_one(const FdbPoly& p) {
    return p.substitute_poly<FdbGen>([](const FdbGen& g) {
        if (g.sym == 'h' && g.index == 1) return FdbPoly::one();
        return FdbPoly::generator(g);
    });
}

/// Inverse of the unipotent (h_1 = 1) M_h by back substitution.
inline std::vector<std::vector<FdbPoly>> mh_matrix_inverse_unipotent(int n) {
    auto mh = mh_matrix(n);
    for (auto& row : mh)
        for (auto& p : row) p = set_h1_to_one(p);
    std::vector<std::vector<FdbPoly>> inv(static_cast<std::size_t>(n),
                                          std::vector<FdbPoly>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = FdbPoly::one();
    // Unit upper triangular: solve column by column.
    for (int col = 0; col < n; ++col)
        for (int row = col - 1; row >= 0; --row) {
            FdbPoly acc;
            for (int k = row + 1; k <= col; ++k)
                acc += mh[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] *
                       inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)];
            inv[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = -acc;
        }
    return inv;
}

/// Classical Faa di Bruno antipode, the (j+1)-th entry of the top row of
/// M_h^{-1} at h_1 = 1:
///   S_FdB(a_{j+1})(h) = 1/(j+1)! sum_{k=1}^{j} (-1)^k
///                       B_{j+k,k}(0, 2!h_2, 3!h_3, ..., (j+1)!h_{j+1}).
inline FdbPoly fdb_antipode_row(int j) {
    if (j < 1) throw std::invalid_argument("fdb_antipode_row: j must be >= 1");
    FdbPoly acc;
    for (int k = 1; k <= j; ++k) {
        FdbPoly b = bell(j + k, k).substitute_poly<FdbGen>([&](const FdbGen& g) -> FdbPoly {
            if (g.index == 1) return FdbPoly::zero();
            if (g.index > j + 1)
                throw std::logic_error("fdb_antipode_row: Bell argument beyond h_{j+1}");
            return Rational(factorial(static_cast<unsigned>(g.index))) * fdb_h(g.index);
        });
        acc += Rational(k % 2 == 0 ? 1 : -1) * b;
    }
    return Rational(1) / Rational(factorial(static_cast<unsigned>(j + 1))) * acc;
}

/// Taylor coefficients of the composition f(h(t)) by the Faa di Bruno
/// formula, in the gamma_j/j! convention: with f(t) = sum beta_n t^n/n! and
/// h(t) = sum_{n>=1} alpha_n t^n/n!,
///   f(h(t)) = sum_j [sum_{k=1}^{j} beta_k B_{j,k}(alpha_1,...)] t^j/j!.
/// Returns (gamma_0, ..., gamma_order); gamma_0 = beta_0.
inline std::vector<Rational> fdb_series_compose(const std::vector<Rational>& beta,
                                                const std::vector<Rational>& alpha, int order) {
    if (order < 0) throw std::invalid_argument("fdb_series_compose: order must be >= 0");
    auto beta_at = [&](int k) {
        return k < static_cast<int>(beta.size()) ? beta[static_cast<std::size_t>(k)] : Rational(0);
    };
    auto alpha_at = [&](int k) {
        return k >= 1 && k <= static_cast<int>(alpha.size()) ? alpha[static_cast<std::size_t>(k - 1)]
                                                             : Rational(0);
    };
    std::vector<Rational> gamma(static_cast<std::size_t>(order) + 1, Rational(0));
    gamma[0] = beta_at(0);
    for (int j = 1; j <= order; ++j) {
        Rational acc = 0;
        for (int k = 1; k <= j; ++k) {
            std::vector<Rational> args;
            for (int i = 1; i <= j - k + 1; ++i) args.push_back(alpha_at(i));
            acc += beta_at(k) * bell_eval(j, k, args);
        }
        gamma[static_cast<std::size_t>(j)] = acc;
    }
    return gamma;
}

} // namespace fliess

#endif
