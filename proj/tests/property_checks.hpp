#ifndef PREPROJ_TESTS_PROPERTY_CHECKS_HPP
#define PREPROJ_TESTS_PROPERTY_CHECKS_HPP

// Randomized invariant checks shared by the property suite and the acceptance
// runner. Each check returns the number of cases examined and the first failure.

#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "preproj/fixedring.hpp"
#include "preproj/molien.hpp"
#include "preproj/trace.hpp"

namespace checks {

using fixtures::CycNum;
using fixtures::DiagonalAut;
using preproj::Poly;
using preproj::RatFun;

struct Outcome {
    int cases = 0;
    std::optional<std::string> failure;
    bool ok() const { return !failure && cases > 0; }
};

inline std::string describe(const DiagonalAut& g) {
    std::ostringstream os;
    os << "n=" << g.n() << " c=(";
    for (int i = 1; i <= g.n(); ++i) os << (i > 1 ? "," : "") << g.c(i).to_string();
    os << ") t=(";
    for (int i = 1; i <= g.n(); ++i) os << (i > 1 ? "," : "") << g.t(i).to_string();
    os << ")";
    return os.str();
}

inline RatFun sum(const std::vector<RatFun>& v) {
    RatFun s;
    for (const auto& e : v) s = s + e;
    return s;
}

// The closed forms through the shift matrix and through the resolution matrix
// agree exactly, and both agree with path counting through degree D.
inline Outcome trace_methods_agree(std::uint64_t seed, int count, std::size_t D = 40) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (int trial = 0; trial < count; ++trial) {
        auto g = fixtures::random_aut(rng, 3, 8, 12);
        ++out.cases;
        auto v34 = preproj::vector_trace_closed_34(g);
        auto v35 = preproj::vector_trace_closed_35(g);
        auto oracle = preproj::trace_oracle(g, D);
        auto total = preproj::total_trace_closed(g).reduced;
        bool agree = v34 == v35 && sum(v34) == total;
        for (std::size_t i = 0; agree && i < v34.size(); ++i)
            agree = preproj::series_expand(v34[i], D) == oracle.vector[i];
        agree = agree && preproj::series_expand(total, D) == oracle.total;
        if (!agree) {
            out.failure = "trace methods disagree for " + describe(g);
            return out;
        }
    }
    return out;
}

inline Outcome vector_sums_to_total(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (int trial = 0; trial < count; ++trial) {
        auto g = fixtures::random_aut(rng, 3, 8, 12);
        ++out.cases;
        if (sum(preproj::vector_trace_closed_34(g)) != preproj::total_trace_closed(g).reduced) {
            out.failure = "vector entries do not sum to the total for " + describe(g);
            return out;
        }
    }
    return out;
}

// Every identity on n = 3..8 is included on top of the random draws.
inline Outcome pole_order_bounds(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    Outcome out;
    auto check = [&](const DiagonalAut& g) {
        ++out.cases;
        const unsigned k = preproj::pole_order_at_one(preproj::total_trace_closed(g).reduced);
        if (k > 2) out.failure = "pole of order " + std::to_string(k) + " at 1 for " + describe(g);
        else if (g.is_identity() && k != 2) out.failure = "identity has pole order " + std::to_string(k);
    };
    for (int n = 3; n <= 8 && !out.failure; ++n) check(DiagonalAut::identity(n));
    for (int trial = 0; trial < count && !out.failure; ++trial) check(fixtures::random_aut(rng, 3, 8, 12));
    return out;
}

// Tr(e_i A) - c_i t Tr(e_{i+1} A) equals the trace on e_i A / a_i e_{i+1} A,
// whose basis is the star paths ending before the star cycle starting at i repeats.
inline Outcome quotient_trace_identity(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (int trial = 0; trial < count; ++trial) {
        auto g = fixtures::random_aut(rng, 3, 8, 12);
        ++out.cases;
        const int n = g.n();
        auto v = preproj::vector_trace_closed_35(g);
        for (int l = 1; l <= n; ++l) {
            std::vector<CycNum> num(static_cast<std::size_t>(n));
            CycNum running(1);
            for (int k = 0; k < n; ++k) {
                num[static_cast<std::size_t>(k)] = running;
                running = running * g.t(preproj::wrap(l - 1 - k, n));
            }
            const RatFun quotient(Poly(std::move(num)), Poly::one_minus(g.t_product(), static_cast<std::size_t>(n)));
            const RatFun lhs = v[static_cast<std::size_t>(l - 1)] -
                               RatFun(Poly::monomial(g.c(l), 1)) * v[static_cast<std::size_t>(preproj::wrap(l + 1, n) - 1)];
            if (lhs != quotient) {
                out.failure = "quotient identity fails at vertex " + std::to_string(l) + " for " + describe(g);
                return out;
            }
        }
    }
    return out;
}

inline Outcome molien_coefficients_nonnegative(std::uint64_t seed, int count, std::size_t D = 50) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (int trial = 0; trial < count; ++trial) {
        auto g = fixtures::random_aut(rng, 3, 8, 12);
        auto G = fixtures::cyclic(g);
        ++out.cases;
        auto s = preproj::series_expand(preproj::molien_scalar(G), D);
        for (std::size_t d = 0; d < s.coeffs.size(); ++d) {
            const auto& c = s.coeffs[d];
            bool good = c.is_rational();
            if (good) {
                auto x = c.coefficients().empty() ? preproj::Rational(0) : c.coefficients()[0];
                good = x.get_den() == 1 && x >= 0;
            }
            if (!good) {
                out.failure = "coefficient " + std::to_string(d) + " is " + c.to_string() + " for " + describe(g);
                return out;
            }
        }
    }
    return out;
}

// p is read off the path-counting series times the raw denominator, so p(1) does
// not depend on the closed forms.
inline Outcome p_at_one_factorization(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (int trial = 0; trial < count; ++trial) {
        auto spec = fixtures::random_spec(rng, 3, 3, 12);
        const long m = static_cast<long>(spec.m);
        if (trial % 2 == 0)
            spec.a[2] = ((-spec.a[0] - spec.a[1]) % m + m) % m;  // c_1 c_2 c_3 = 1
        else
            spec.a[2] = ((3 * spec.w - spec.a[0] - spec.a[1]) % m + m) % m;  // t_1 t_2 t_3 = 1
        auto g = fixtures::build(spec);
        ++out.cases;
        const std::size_t D = 30;
        const Poly q = Poly::one_minus(g.c_product(), 3) * Poly::one_minus(g.t_product(), 3);
        auto series = preproj::trace_oracle(g, D).total;
        std::vector<CycNum> prod(D + 1);
        for (std::size_t i = 0; i <= D; ++i)
            for (std::size_t j = 0; j <= i && static_cast<int>(j) <= q.degree(); ++j)
                prod[i] = prod[i] + q.coeff(j) * series.coeffs[i - j];
        CycNum p1(0);
        bool terminates = true;
        for (std::size_t i = 0; i <= D; ++i) {
            if (i <= 4) p1 = p1 + prod[i];
            else if (!prod[i].is_zero()) terminates = false;
        }
        auto e = [](const std::vector<CycNum>& x) {
            return CycNum(3) + x[0] + x[1] + x[2] + x[0] * x[1] + x[1] * x[2] + x[0] * x[2];
        };
        const CycNum w = g.c(1) * g.t(1);
        const CycNum tail = CycNum(1) + w + w * w;
        bool holds = terminates;
        if (g.c_product().is_one()) holds = holds && p1 == e(g.cs()) * tail;
        if (g.t_product().is_one()) holds = holds && p1 == e(g.ts()) * tail;
        holds = holds && preproj::p_at_one_factorization(g).holds;
        if (!holds) {
            out.failure = "p(1) factorization fails for " + describe(g);
            return out;
        }
    }
    return out;
}

struct GeneratorBoundOutcome : Outcome {
    int certified = 0;
};

inline GeneratorBoundOutcome generator_lower_bound(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    GeneratorBoundOutcome out;
    for (int trial = 0; trial < count; ++trial) {
        auto G = fixtures::cyclic(fixtures::random_aut(rng, 3, 8, 12));
        ++out.cases;
        const int D = preproj::default_generator_bound(G);
        auto rep = preproj::minimal_generators(G, D);
        if (!preproj::verify_generators(G, rep.paths(), D).complete) continue;
        ++out.certified;
        const std::size_t bound = static_cast<std::size_t>(3 * G.n());
        if (rep.count_with_idempotents(G.n()) < bound) {
            out.failure = std::to_string(rep.count_with_idempotents(G.n())) + " generators for n=" +
                          std::to_string(G.n()) + ", fewer than " + std::to_string(bound);
            return out;
        }
    }
    if (out.certified == 0) out.failure = "no generator set was certified";
    return out;
}

}  // namespace checks

#endif  // PREPROJ_TESTS_PROPERTY_CHECKS_HPP
