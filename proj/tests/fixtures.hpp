#ifndef PREPROJ_TESTS_FIXTURES_HPP
#define PREPROJ_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "preproj/quiver.hpp"
#include "preproj/ratfun.hpp"

namespace fixtures {

using preproj::CycNum;
using preproj::DiagonalAut;

inline CycNum zeta(unsigned long m, long k = 1) { return preproj::cyc_root_of_unity(m, k); }

// i*sqrt(3) = zeta3 - zeta3^2 and sqrt(3) = -i*(zeta3 - zeta3^2)
inline CycNum i_sqrt3() { return zeta(3, 1) - zeta(3, 2); }
inline CycNum sqrt3() { return -zeta(4) * i_sqrt3(); }

inline preproj::RatFun rf(const char* s) { return preproj::ratfun_parse(s); }

inline const preproj::CycleQuiver& q3() {
    static const preproj::CycleQuiver q = preproj::make_cycle_quiver(3);
    return q;
}

inline DiagonalAut aut3(std::vector<CycNum> c, std::vector<CycNum> t) {
    return preproj::make_aut(q3(), std::move(c), std::move(t));
}

// Negates every star arrow: c = (1,1,1), t = (-1,-1,-1).
inline DiagonalAut star_negation() { return aut3({1, 1, 1}, {-1, -1, -1}); }

// c = (1,-1,-1), t = (w,-w,-w) with w a primitive cube root of unity; order 6.
inline DiagonalAut order_six() { return aut3({1, -1, -1}, {zeta(3), -zeta(3), -zeta(3)}); }

// c = (w,1,w^2), t = (1,w,w^2); order 3.
inline DiagonalAut order_three() { return aut3({zeta(3), 1, zeta(3, 2)}, {1, zeta(3), zeta(3, 2)}); }

// c = t = (1,-1,-1); the cube of order_six().
inline DiagonalAut sign_pair() { return aut3({1, -1, -1}, {1, -1, -1}); }

inline preproj::AutGroup cyclic(const DiagonalAut& g) { return preproj::generate_group({g}, 1000); }

struct RandomAutSpec {
    int n;
    unsigned long m;
    std::vector<long> a;
    long w;
};

// c_i = zeta_m^{a_i}, t_i = zeta_m^{w - a_i}: valid by construction.
inline DiagonalAut build(const RandomAutSpec& s) {
    std::vector<CycNum> c, t;
    for (int i = 0; i < s.n; ++i) {
        c.push_back(zeta(s.m, s.a[static_cast<std::size_t>(i)]));
        t.push_back(zeta(s.m, s.w - s.a[static_cast<std::size_t>(i)]));
    }
    return preproj::make_aut(preproj::make_cycle_quiver(s.n), c, t);
}

inline RandomAutSpec random_spec(std::mt19937_64& rng, int n_lo, int n_hi, unsigned long max_order) {
    std::uniform_int_distribution<int> nd(n_lo, n_hi);
    std::uniform_int_distribution<unsigned long> md(1, max_order);
    RandomAutSpec s;
    s.n = nd(rng);
    s.m = md(rng);
    std::uniform_int_distribution<long> ed(0, static_cast<long>(s.m) - 1);
    for (int i = 0; i < s.n; ++i) s.a.push_back(ed(rng));
    s.w = ed(rng);
    return s;
}

inline DiagonalAut random_aut(std::mt19937_64& rng, int n_lo, int n_hi, unsigned long max_order) {
    return build(random_spec(rng, n_lo, n_hi, max_order));
}

}  // namespace fixtures

#endif  // PREPROJ_TESTS_FIXTURES_HPP
