#ifndef PREPROJ_MOLIEN_HPP
#define PREPROJ_MOLIEN_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "ratfun.hpp"
#include "trace.hpp"

namespace preproj {

inline RatFun hilbert_A(int n) {
    if (n < 3) throw PreconditionError("n must be at least 3");
    return RatFun(Poly(n), Poly{1, -2, 1});
}

inline RatFun hilbert_eA(int n) {
    if (n < 3) throw PreconditionError("n must be at least 3");
    return RatFun(Poly(1), Poly{1, -2, 1});
}

// Adjacency matrix of the doubled n-cycle.
inline RatMatrix double_adjacency(int n) {
    const auto N = static_cast<std::size_t>(n);
    RatMatrix C(N, N);
    for (int i = 1; i <= n; ++i) {
        C(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(wrap(i + 1, n) - 1)) += RatFun(1);
        C(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(wrap(i - 1, n) - 1)) += RatFun(1);
    }
    return C;
}

inline RatMatrix matrix_hilbert_A(int n) {
    if (n < 3) throw PreconditionError("n must be at least 3");
    const auto N = static_cast<std::size_t>(n);
    RatMatrix I = RatMatrix::identity(N);
    RatMatrix M = I - double_adjacency(n) * RatFun::t() + I * RatFun(Poly::monomial(CycNum(1), 2));
    return mat_inverse(M);
}

namespace detail {

inline CycNum inverse_order(const AutGroup& G) {
    return CycNum(Rational(1, static_cast<long>(G.size())));
}

}  // namespace detail

inline RatFun molien_scalar(const AutGroup& G) {
    RatFun sum;
    for (const auto& g : G.elements()) sum += total_trace_closed(g).reduced;
    return sum * RatFun(detail::inverse_order(G));
}

inline std::vector<RatFun> molien_vector(const AutGroup& G) {
    std::vector<RatFun> sum(static_cast<std::size_t>(G.n()));
    for (const auto& g : G.elements()) {
        auto v = vector_trace_closed_34(g);
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += v[j];
    }
    const RatFun scale(detail::inverse_order(G));
    for (auto& e : sum) e *= scale;
    return sum;
}

enum class MatrixStatus { Reconstructed, TruncatedOnly };
enum class MatrixMethod { OracleReconstruction, TwistedIdentity, None };

inline const char* to_string(MatrixStatus s) { return s == MatrixStatus::Reconstructed ? "success" : "truncated-only"; }

inline const char* to_string(MatrixMethod m) {
    switch (m) {
        case MatrixMethod::OracleReconstruction: return "oracle-reconstruction";
        case MatrixMethod::TwistedIdentity: return "twisted-identity";
        default: return "none";
    }
}

struct MolienMatrixResult {
    MatrixStatus status = MatrixStatus::TruncatedOnly;
    MatrixMethod method = MatrixMethod::None;
    std::optional<RatMatrix> matrix;
    std::vector<std::vector<SeriesTrunc>> series;  // averaged oracle series, entry [i][j]
    Poly denominator;                              // the common denominator q_G tried
    std::size_t degree = 0;
    std::string reason;
};

struct MolienOptions {
    // Try the g-twisted inverse (1 + c_1 t_1 t^2) I - W(g) t first; it is only
    // accepted when its expansion matches the averaged oracle series.
    bool twisted_fast_path = false;
};

// lcm over G of (1 - c_1...c_n t^n)(1 - t_1...t_n t^n).
inline Poly group_denominator(const AutGroup& G) {
    const int n = G.n();
    std::vector<std::pair<CycNum, unsigned>> mult;
    for (const auto& g : G.elements()) {
        std::vector<std::pair<CycNum, unsigned>> local;
        for (const CycNum& lam : {g.c_product(), g.t_product()}) {
            auto it = std::find_if(local.begin(), local.end(), [&](const auto& p) { return p.first == lam; });
            if (it == local.end())
                local.emplace_back(lam, 1u);
            else
                ++it->second;
        }
        for (const auto& [lam, k] : local) {
            auto it = std::find_if(mult.begin(), mult.end(), [&](const auto& p) { return p.first == lam; });
            if (it == mult.end())
                mult.emplace_back(lam, k);
            else
                it->second = std::max(it->second, k);
        }
    }
    Poly q(1);
    for (const auto& [lam, k] : mult) q = q * Poly::one_minus(lam, static_cast<std::size_t>(n)).pow(k);
    return q;
}

inline std::size_t default_matrix_degree(const AutGroup& G) {
    const auto n = static_cast<std::size_t>(G.n());
    const std::size_t qdeg = static_cast<std::size_t>(group_denominator(G).degree());
    return std::max({4 * n, 6 * static_cast<std::size_t>(G.exponent()), qdeg + 2 * n});
}

// Averaged traces on e_i A_s e_j for s = 0..D, straight from the path basis.
inline std::vector<std::vector<SeriesTrunc>> matrix_trace_oracle(const AutGroup& G, std::size_t D) {
    const int n = G.n();
    const auto N = static_cast<std::size_t>(n);
    std::vector<std::vector<SeriesTrunc>> acc(N, std::vector<SeriesTrunc>(N, SeriesTrunc(D)));
    for (const auto& g : G.elements()) {
        EigenvalueTable table(g, static_cast<int>(D));
        for (int i = 1; i <= n; ++i)
            for (std::size_t s = 0; s <= D; ++s)
                for (int m = 0; m <= static_cast<int>(s); ++m) {
                    SimplePath p{i, m, static_cast<int>(s) - m};
                    acc[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(p.end(n) - 1)][s] +=
                        table.eigenvalue(p);
                }
    }
    const CycNum inv = detail::inverse_order(G);
    for (auto& row : acc)
        for (auto& e : row)
            for (auto& c : e.coeffs) c *= inv;
    return acc;
}

inline RatMatrix twisted_matrix_trace(const DiagonalAut& g) { return mat_inverse(resolution_matrix(g)); }

namespace detail {

// Numerator candidate N = (series * q) mod t^{deg q}; accepted iff the product
// vanishes in degrees deg q .. D.
inline std::optional<RatFun> reconstruct(const SeriesTrunc& s, const Poly& q) {
    const std::size_t D = s.degree();
    const std::size_t dq = static_cast<std::size_t>(q.degree());
    if (D < dq) return std::nullopt;
    std::vector<CycNum> prod(D + 1);
    for (std::size_t k = 0; k <= D; ++k)
        for (std::size_t j = 0; j <= std::min(k, dq); ++j) prod[k] += q.coefficients()[j] * s[k - j];
    for (std::size_t k = dq; k <= D; ++k)
        if (!prod[k].is_zero()) return std::nullopt;
    prod.resize(dq);
    return RatFun(Poly(std::move(prod)), q);
}

inline bool matches(const RatMatrix& M, const std::vector<std::vector<SeriesTrunc>>& series, std::size_t D) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            if (series_expand(M(i, j), D) != series[i][j]) return false;
    return true;
}

}  // namespace detail

inline MolienMatrixResult molien_matrix(const AutGroup& G, std::size_t D, MolienOptions opts = {}) {
    const int n = G.n();
    const auto N = static_cast<std::size_t>(n);
    if (D < 4 * N) throw PreconditionError("matrix truncation degree must be at least 4n = " + std::to_string(4 * N));
    MolienMatrixResult out;
    out.degree = D;
    out.series = matrix_trace_oracle(G, D);
    out.denominator = group_denominator(G);

    if (opts.twisted_fast_path) {
        RatMatrix avg(N, N);
        bool ok = true;
        for (const auto& g : G.elements()) {
            try {
                avg = avg + twisted_matrix_trace(g);
            } catch (const SingularMatrixError&) {
                ok = false;
                break;
            }
        }
        if (ok) {
            avg = avg * RatFun(detail::inverse_order(G));
            if (detail::matches(avg, out.series, D)) {
                out.status = MatrixStatus::Reconstructed;
                out.method = MatrixMethod::TwistedIdentity;
                out.matrix = std::move(avg);
                return out;
            }
        }
    }

    RatMatrix M(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            auto r = detail::reconstruct(out.series[i][j], out.denominator);
            if (!r) {
                out.reason = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") does not reconstruct over " + out.denominator.to_string() + " by degree " +
                             std::to_string(D);
                return out;
            }
            M(i, j) = std::move(*r);
        }
    out.status = MatrixStatus::Reconstructed;
    out.method = MatrixMethod::OracleReconstruction;
    out.matrix = std::move(M);
    return out;
}

inline MolienMatrixResult molien_matrix(const AutGroup& G) { return molien_matrix(G, default_matrix_degree(G)); }

struct MolienReport {
    RatFun scalar;
    std::vector<RatFun> vector;
    MolienMatrixResult matrix;
    std::size_t group_order = 0;
};

// Computes all three averaged series and checks they fit together.
inline MolienReport molien_report(const AutGroup& G, std::optional<std::size_t> D = std::nullopt,
                                  MolienOptions opts = {}) {
    MolienReport rep;
    rep.group_order = G.size();
    rep.scalar = molien_scalar(G);
    rep.vector = molien_vector(G);
    RatFun sum;
    for (const auto& e : rep.vector) sum += e;
    if (sum != rep.scalar)
        throw InternalInconsistencyError("vector Molien series do not sum to the scalar one: " + sum.to_string() +
                                         " vs " + rep.scalar.to_string());
    rep.matrix = molien_matrix(G, D.value_or(default_matrix_degree(G)), opts);
    if (rep.matrix.matrix) {
        auto rs = row_sums(*rep.matrix.matrix);
        for (std::size_t j = 0; j < rs.size(); ++j)
            if (rs[j] != rep.vector[j])
                throw InternalInconsistencyError("row " + std::to_string(j + 1) +
                                                 " of the matrix Molien series does not sum to the vector entry");
    }
    return rep;
}

}  // namespace preproj

#endif  // PREPROJ_MOLIEN_HPP
