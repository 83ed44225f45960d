#ifndef PREPROJ_TRACE_HPP
#define PREPROJ_TRACE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "ratfun.hpp"

namespace preproj {

namespace detail {

// prod_{j=from}^{to} xs_j with subscripts reduced into 1..n; empty product is 1.
inline CycNum index_product(const std::vector<CycNum>& xs, long from, long to) {
    const int n = static_cast<int>(xs.size());
    CycNum p(1);
    for (long j = from; j <= to; ++j) p *= xs[static_cast<std::size_t>(wrap(j, n) - 1)];
    return p;
}

inline Poly one_minus_tn(const CycNum& lambda, int n) { return Poly::one_minus(lambda, static_cast<std::size_t>(n)); }

}  // namespace detail

// Trace series computed straight from the path basis.
struct OracleTrace {
    std::vector<SeriesTrunc> vector;  // entry j-1 is the series of e_j A
    SeriesTrunc total;
};

inline OracleTrace trace_oracle(const DiagonalAut& g, std::size_t D) {
    const int n = g.n();
    EigenvalueTable table(g, static_cast<int>(D));
    OracleTrace out;
    out.total = SeriesTrunc(D);
    for (int j = 1; j <= n; ++j) {
        SeriesTrunc s(D);
        for (std::size_t deg = 0; deg <= D; ++deg) {
            CycNum acc;
            for (int m = 0; m <= static_cast<int>(deg); ++m)
                acc += table.eigenvalue(SimplePath{j, m, static_cast<int>(deg) - m});
            s[deg] = acc;
            out.total[deg] += acc;
        }
        out.vector.push_back(std::move(s));
    }
    return out;
}

// Numerator of the trace on e_l A / a_l e_{l+1} A over 1 - t_1...t_n t^n:
// sum_{k=0}^{n-1} (prod_{j=n-k+l}^{n+l-1} t_j) t^k.
inline Poly quotient_trace_numerator(const DiagonalAut& g, int l) {
    const int n = g.n();
    std::vector<CycNum> coeffs;
    for (int k = 0; k < n; ++k) coeffs.push_back(detail::index_product(g.ts(), n - k + l, n + l - 1));
    return Poly(std::move(coeffs));
}

// The bidiagonal matrix with 1 on the diagonal, -c_i t at (i, i+1) and -c_n t at (n, 1).
inline RatMatrix shift_matrix(const DiagonalAut& g) {
    const int n = g.n();
    RatMatrix M = RatMatrix::identity(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const auto r = static_cast<std::size_t>(i - 1);
        const auto c = static_cast<std::size_t>(wrap(i + 1, n) - 1);
        M(r, c) = RatFun(Poly::monomial(-g.c(i), 1));
    }
    return M;
}

inline std::vector<RatFun> vector_trace_closed_34(const DiagonalAut& g) {
    const int n = g.n();
    std::vector<RatFun> b;
    for (int l = 1; l <= n; ++l) b.emplace_back(quotient_trace_numerator(g, l));
    std::vector<RatFun> x;
    try {
        x = mat_solve(shift_matrix(g), b);
    } catch (const SingularMatrixError&) {
        throw InternalInconsistencyError("shift matrix is singular although its determinant is 1 - c_1...c_n t^n");
    }
    const RatFun scale = RatFun(Poly(1), detail::one_minus_tn(g.t_product(), n));
    for (auto& e : x) e *= scale;
    return x;
}

// (1 + c_1 t_1 t^2) I - t W, with W carrying c_i at (i, i+1) and t_{i-1} at (i, i-1), cyclically.
inline RatMatrix resolution_matrix(const DiagonalAut& g) {
    const int n = g.n();
    const auto N = static_cast<std::size_t>(n);
    RatMatrix D(N, N);
    const RatFun diag = RatFun(Poly(1) + Poly::monomial(g.weight(), 2));
    for (int i = 1; i <= n; ++i) {
        const auto r = static_cast<std::size_t>(i - 1);
        D(r, r) = diag;
        D(r, static_cast<std::size_t>(wrap(i + 1, n) - 1)) += RatFun(Poly::monomial(-g.c(i), 1));
        D(r, static_cast<std::size_t>(wrap(i - 1, n) - 1)) += RatFun(Poly::monomial(-g.t(i - 1), 1));
    }
    return D;
}

inline std::vector<RatFun> vector_trace_closed_35(const DiagonalAut& g) {
    std::vector<RatFun> ones(static_cast<std::size_t>(g.n()), RatFun(1));
    try {
        return mat_solve(resolution_matrix(g), ones);
    } catch (const SingularMatrixError&) {
        throw InternalInconsistencyError("resolution matrix is singular");
    }
}

struct TotalTrace {
    Poly raw_p;
    Poly raw_q;
    RatFun reduced;
};

inline TotalTrace total_trace_closed(const DiagonalAut& g) {
    const int n = g.n();
    const auto& c = g.cs();
    const auto& t = g.ts();
    std::vector<CycNum> p(static_cast<std::size_t>(2 * n - 1));
    for (int v = 0; v <= 2 * n - 2; ++v) {
        CycNum acc;
        for (int k = 0; k <= n - 1; ++k) {
            const int s = v - k;
            if (s < 0 || s > n - 1) continue;
            for (int l = 1; l <= n; ++l)
                acc += detail::index_product(t, n - k + l, n + l - 1) * detail::index_product(c, n - s + l, n + l - 1);
        }
        p[static_cast<std::size_t>(v)] = acc;
    }
    TotalTrace out;
    out.raw_p = Poly(std::move(p));
    out.raw_q = detail::one_minus_tn(g.c_product(), n) * detail::one_minus_tn(g.t_product(), n);
    out.reduced = RatFun(out.raw_p, out.raw_q);
    return out;
}

struct TraceReport {
    RatFun total;
    std::vector<RatFun> vector;
    Poly raw_p;
    Poly raw_q;
    unsigned pole_order_one = 0;
    // Unknown (nullopt) when some scalar is not a root of unity.
    std::optional<bool> q_roots_unity;
    bool oracle_checked = false;
    std::size_t oracle_degree = 0;
};

namespace detail {

// Every root of 1 - lambda t^n is a root of unity iff lambda is one; the
// factor then divides 1 - t^{n * ord(lambda)}.
inline std::optional<bool> denominator_roots_are_roots_of_unity(const DiagonalAut& g) {
    const int n = g.n();
    for (const CycNum& lambda : {g.c_product(), g.t_product()}) {
        auto ord = cyc_order_as_root_of_unity(lambda);
        if (!ord) return std::nullopt;
        Poly big = Poly::one_minus(CycNum(1), static_cast<std::size_t>(n) * *ord);
        if (!poly_div_exact(big, one_minus_tn(lambda, n))) return false;
    }
    return true;
}

}  // namespace detail

// Runs the three trace computations and insists they agree.
inline TraceReport trace_report(const DiagonalAut& g, std::size_t D, bool run_oracle = true) {
    const int n = g.n();
    if (run_oracle && D < static_cast<std::size_t>(2 * n))
        throw PreconditionError("cross-check degree must be at least 2n = " + std::to_string(2 * n));
    TraceReport rep;
    auto v34 = vector_trace_closed_34(g);
    auto v35 = vector_trace_closed_35(g);
    for (int i = 0; i < n; ++i)
        if (v34[static_cast<std::size_t>(i)] != v35[static_cast<std::size_t>(i)])
            throw InternalInconsistencyError("vector trace entry " + std::to_string(i + 1) +
                                             " differs between the two closed forms: " +
                                             v34[static_cast<std::size_t>(i)].to_string() + " vs " +
                                             v35[static_cast<std::size_t>(i)].to_string());
    auto tot = total_trace_closed(g);
    RatFun sum;
    for (const auto& e : v34) sum += e;
    if (sum != tot.reduced)
        throw InternalInconsistencyError("vector trace entries do not sum to the total trace: " + sum.to_string() +
                                         " vs " + tot.reduced.to_string());
    if (run_oracle) {
        auto orc = trace_oracle(g, D);
        for (int i = 0; i < n; ++i)
            if (series_expand(v34[static_cast<std::size_t>(i)], D) != orc.vector[static_cast<std::size_t>(i)])
                throw InternalInconsistencyError("closed-form trace of e_" + std::to_string(i + 1) +
                                                 "A disagrees with the path-basis sum");
        rep.oracle_checked = true;
        rep.oracle_degree = D;
    }
    rep.total = tot.reduced;
    rep.vector = std::move(v34);
    rep.raw_p = std::move(tot.raw_p);
    rep.raw_q = std::move(tot.raw_q);
    rep.pole_order_one = pole_order_at_one(rep.total);
    if (rep.pole_order_one > 2)
        throw InternalInconsistencyError("trace has a pole of order " + std::to_string(rep.pole_order_one) +
                                         " at t = 1");
    rep.q_roots_unity = detail::denominator_roots_are_roots_of_unity(g);
    return rep;
}

struct PAtOneCheck {
    CycNum p_at_one;
    std::optional<CycNum> c_side;  // present when c_1 c_2 c_3 = 1
    std::optional<CycNum> t_side;  // present when t_1 t_2 t_3 = 1
    bool holds = false;
};

// For n = 3: p(1) = (3 + e1 + e2)(1 + w + w^2) with w = c_1 t_1 and e1, e2 the
// elementary symmetric functions of the c's (or of the t's).
inline PAtOneCheck p_at_one_factorization(const DiagonalAut& g) {
    if (g.n() != 3) throw PreconditionError("the factorization of p(1) is stated for three vertices");
    const bool c_unit = g.c_product().is_one();
    const bool t_unit = g.t_product().is_one();
    if (!c_unit && !t_unit) throw PreconditionError("needs c_1 c_2 c_3 = 1 or t_1 t_2 t_3 = 1");
    PAtOneCheck out;
    out.p_at_one = total_trace_closed(g).raw_p.eval(CycNum(1));
    const CycNum w = g.weight();
    const CycNum tail = CycNum(1) + w + w * w;
    auto side = [&](const std::vector<CycNum>& x) {
        CycNum e1 = x[0] + x[1] + x[2];
        CycNum e2 = x[0] * x[1] + x[1] * x[2] + x[0] * x[2];
        return (CycNum(3) + e1 + e2) * tail;
    };
    out.holds = true;
    if (c_unit) {
        out.c_side = side(g.cs());
        out.holds = out.holds && *out.c_side == out.p_at_one;
    }
    if (t_unit) {
        out.t_side = side(g.ts());
        out.holds = out.holds && *out.t_side == out.p_at_one;
    }
    return out;
}

}  // namespace preproj

#endif  // PREPROJ_TRACE_HPP
