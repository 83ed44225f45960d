#ifndef PREPROJ_QUIVER_HPP
#define PREPROJ_QUIVER_HPP

#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace preproj {

// Reduces any integer index to a vertex label in 1..n.
inline int wrap(long i, int n) {
    long r = (i - 1) % n;
    if (r < 0) r += n;
    return static_cast<int>(r) + 1;
}

// The cycle quiver with vertices 1..n, arrows a_i: i -> i+1 and their
// reverses a_i*: i+1 -> i.
class CycleQuiver {
public:
    explicit CycleQuiver(int n) : n_(n) {}
    int n() const noexcept { return n_; }

    int arrow_target(int i) const { return wrap(i + 1, n_); }
    int star_target(int i) const { return wrap(i - 1, n_); }

    friend bool operator==(const CycleQuiver&, const CycleQuiver&) = default;

private:
    int n_;
};

inline CycleQuiver make_cycle_quiver(int n) {
    if (n < 3) throw PreconditionError("the cycle quiver needs at least 3 vertices, got " + std::to_string(n));
    return CycleQuiver(n);
}

// Normal form of a path in the preprojective algebra: m nonstar arrows from
// `start`, followed by k star arrows.
struct SimplePath {
    int start = 1;
    int m = 0;
    int k = 0;

    int degree() const noexcept { return m + k; }
    int end(int n) const { return wrap(start + m - k, n); }
    bool is_idempotent() const noexcept { return m == 0 && k == 0; }
    bool purely_nonstar() const noexcept { return k == 0 && m > 0; }
    bool purely_star() const noexcept { return m == 0 && k > 0; }
    bool mixed() const noexcept { return m > 0 && k > 0; }

    // Arrow word in path order, e.g. "a3a1a2" or "a2*a1*a3*"; idempotents print as "e1".
    std::string label(int n) const {
        if (is_idempotent()) return "e" + std::to_string(start);
        std::string s;
        for (int r = 0; r < m; ++r) s += "a" + std::to_string(wrap(start + r, n));
        const int v = start + m;
        for (int r = 1; r <= k; ++r) s += "a" + std::to_string(wrap(v - r, n)) + "*";
        return s;
    }

    friend auto operator<=>(const SimplePath&, const SimplePath&) = default;
};

// Product p*q (p first); requires q to start where p ends.
inline SimplePath concat(const SimplePath& p, const SimplePath& q, int n) {
    if (q.start != p.end(n)) throw PreconditionError("paths are not composable");
    return SimplePath{p.start, p.m + q.m, p.k + q.k};
}

// Graded automorphism g(a_i) = c_i a_i, g(a_i*) = t_i a_i*, fixing every vertex.
class DiagonalAut {
public:
    DiagonalAut() = default;

    static DiagonalAut identity(int n) {
        DiagonalAut g;
        g.c_.assign(static_cast<std::size_t>(n), CycNum(1));
        g.t_.assign(static_cast<std::size_t>(n), CycNum(1));
        return g;
    }

    int n() const noexcept { return static_cast<int>(c_.size()); }
    // 1-based, indices taken modulo n
    const CycNum& c(long i) const { return c_[static_cast<std::size_t>(wrap(i, n()) - 1)]; }
    const CycNum& t(long i) const { return t_[static_cast<std::size_t>(wrap(i, n()) - 1)]; }
    const std::vector<CycNum>& cs() const noexcept { return c_; }
    const std::vector<CycNum>& ts() const noexcept { return t_; }

    // The common value c_i t_i.
    CycNum weight() const { return c_[0] * t_[0]; }
    CycNum c_product() const { return product(c_); }
    CycNum t_product() const { return product(t_); }

    bool is_identity() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_one() || !t_[i].is_one()) return false;
        return true;
    }

    unsigned long conductor() const {
        unsigned long l = 1;
        for (const auto& x : c_) l = std::lcm(l, x.conductor());
        for (const auto& x : t_) l = std::lcm(l, x.conductor());
        return l;
    }

    // Composition is componentwise multiplication.
    friend DiagonalAut operator*(const DiagonalAut& a, const DiagonalAut& b) {
        if (a.n() != b.n()) throw DimensionMismatchError("automorphisms of different quivers");
        DiagonalAut out = a;
        for (std::size_t i = 0; i < out.c_.size(); ++i) {
            out.c_[i] *= b.c_[i];
            out.t_[i] *= b.t_[i];
        }
        return out;
    }

    DiagonalAut inverse() const {
        DiagonalAut out = *this;
        for (auto& x : out.c_) x = x.inverse();
        for (auto& x : out.t_) x = x.inverse();
        return out;
    }

    DiagonalAut pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        DiagonalAut result = identity(n()), base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    friend bool operator==(const DiagonalAut& a, const DiagonalAut& b) { return a.c_ == b.c_ && a.t_ == b.t_; }
    friend bool operator!=(const DiagonalAut& a, const DiagonalAut& b) { return !(a == b); }

    friend DiagonalAut make_aut(const CycleQuiver& q, std::vector<CycNum> c, std::vector<CycNum> t);

private:
    std::vector<CycNum> c_;
    std::vector<CycNum> t_;

    static CycNum product(const std::vector<CycNum>& xs) {
        CycNum p(1);
        for (const auto& x : xs) p *= x;
        return p;
    }
};

inline DiagonalAut make_aut(const CycleQuiver& q, std::vector<CycNum> c, std::vector<CycNum> t) {
    const auto n = static_cast<std::size_t>(q.n());
    if (c.size() != n || t.size() != n)
        throw DimensionMismatchError("expected " + std::to_string(n) + " scalars for each of c and t");
    for (std::size_t i = 0; i < n; ++i) {
        const int idx = static_cast<int>(i) + 1;
        if (c[i].is_zero()) throw InvalidAutomorphismError("c_" + std::to_string(idx) + " is zero", idx, 0);
        if (t[i].is_zero()) throw InvalidAutomorphismError("t_" + std::to_string(idx) + " is zero", idx, 0);
    }
    const CycNum w = c[0] * t[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (c[i] * t[i] != w) {
            const int idx = static_cast<int>(i) + 1;
            throw InvalidAutomorphismError("c_" + std::to_string(idx) + "*t_" + std::to_string(idx) +
                                               " differs from c_1*t_1 (" + (c[i] * t[i]).to_string() + " vs " +
                                               w.to_string() + ")",
                                           1, idx);
        }
    }
    DiagonalAut g;
    g.c_ = std::move(c);
    g.t_ = std::move(t);
    return g;
}

inline unsigned long aut_order(const DiagonalAut& g) {
    unsigned long l = 1;
    auto fold = [&](const std::vector<CycNum>& xs, const char* name) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto o = cyc_order_as_root_of_unity(xs[i]);
            if (!o)
                throw InfiniteOrderError(std::string(name) + "_" + std::to_string(i + 1) + " = " + xs[i].to_string() +
                                         " is not a root of unity");
            l = std::lcm(l, *o);
        }
    };
    fold(g.cs(), "c");
    fold(g.ts(), "t");
    return l;
}

// A finite group of diagonal automorphisms. Element 0 is the identity; for a
// single generator g the elements are listed as 1, g, g^2, ...
class AutGroup {
public:
    const std::vector<DiagonalAut>& elements() const noexcept { return elements_; }
    const std::vector<DiagonalAut>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return elements_.size(); }
    int n() const { return elements_.front().n(); }

    // Least common multiple of the element orders.
    unsigned long exponent() const {
        unsigned long l = 1;
        for (const auto& g : generators_) l = std::lcm(l, aut_order(g));
        return l;
    }

    friend AutGroup generate_group(const std::vector<DiagonalAut>& gens, std::size_t cap);

private:
    std::vector<DiagonalAut> elements_;
    std::vector<DiagonalAut> generators_;
};

inline AutGroup generate_group(const std::vector<DiagonalAut>& gens, std::size_t cap) {
    if (gens.empty()) throw PreconditionError("at least one generator is required");
    const int n = gens.front().n();
    unsigned long conductor = 1;
    for (const auto& g : gens) {
        if (g.n() != n) throw DimensionMismatchError("generators act on quivers of different sizes");
        aut_order(g);  // rejects infinite order
        conductor = std::lcm(conductor, g.conductor());
    }
    // Every group element lives in Q(zeta_conductor); its coordinates there are a faithful key.
    auto key = [conductor](const DiagonalAut& g) {
        std::vector<Rational> k;
        for (const auto& x : g.cs())
            for (auto& r : x.coordinates_in(conductor)) k.push_back(std::move(r));
        for (const auto& x : g.ts())
            for (auto& r : x.coordinates_in(conductor)) k.push_back(std::move(r));
        return k;
    };
    AutGroup G;
    G.generators_ = gens;
    std::map<std::vector<Rational>, std::size_t> seen;
    G.elements_.push_back(DiagonalAut::identity(n));
    seen.emplace(key(G.elements_.back()), 0);
    for (std::size_t head = 0; head < G.elements_.size(); ++head) {
        for (const auto& g : gens) {
            DiagonalAut h = G.elements_[head] * g;
            auto [it, inserted] = seen.emplace(key(h), G.elements_.size());
            if (!inserted) continue;
            if (G.elements_.size() >= cap) throw GroupCapExceededError(cap);
            G.elements_.push_back(std::move(h));
        }
    }
    return G;
}

// Eigenvalue of g on the basis path p: c_start c_{start+1} ... (m factors)
// times t_{v-1} t_{v-2} ... (k factors) where v = start + m.
inline CycNum path_eigenvalue(const DiagonalAut& g, const SimplePath& p) {
    CycNum e(1);
    for (int r = 0; r < p.m; ++r) e *= g.c(p.start + r);
    const int v = p.start + p.m;
    for (int r = 1; r <= p.k; ++r) e *= g.t(v - r);
    return e;
}

// Walk products of g up to a maximal length, for fast eigenvalue lookup.
class EigenvalueTable {
public:
    EigenvalueTable(const DiagonalAut& g, int max_length) : n_(g.n()) {
        const auto n = static_cast<std::size_t>(n_);
        const auto L = static_cast<std::size_t>(max_length) + 1;
        forward_.assign(n, std::vector<CycNum>(L));
        backward_.assign(n, std::vector<CycNum>(L));
        for (int v = 1; v <= n_; ++v) {
            auto& f = forward_[static_cast<std::size_t>(v - 1)];
            auto& b = backward_[static_cast<std::size_t>(v - 1)];
            f[0] = CycNum(1);
            b[0] = CycNum(1);
            for (std::size_t r = 1; r < L; ++r) {
                f[r] = f[r - 1] * g.c(v + static_cast<long>(r) - 1);
                b[r] = b[r - 1] * g.t(v - static_cast<long>(r));
            }
        }
    }

    // c_v c_{v+1} ... (m factors)
    const CycNum& forward(int v, int m) const { return forward_[static_cast<std::size_t>(wrap(v, n_) - 1)][static_cast<std::size_t>(m)]; }
    // t_{v-1} t_{v-2} ... (k factors)
    const CycNum& backward(int v, int k) const { return backward_[static_cast<std::size_t>(wrap(v, n_) - 1)][static_cast<std::size_t>(k)]; }

    CycNum eigenvalue(const SimplePath& p) const { return forward(p.start, p.m) * backward(p.start + p.m, p.k); }

private:
    int n_;
    std::vector<std::vector<CycNum>> forward_;
    std::vector<std::vector<CycNum>> backward_;
};

// Basis of e_i A_s (or of e_i A_s e_j when j is given).
inline std::vector<SimplePath> graded_basis(const CycleQuiver& q, int i, std::optional<int> j, int s) {
    if (s < 0) throw PreconditionError("degree must be nonnegative");
    std::vector<SimplePath> out;
    for (int m = 0; m <= s; ++m) {
        SimplePath p{i, m, s - m};
        if (!j || p.end(q.n()) == *j) out.push_back(p);
    }
    return out;
}

}  // namespace preproj

#endif  // PREPROJ_QUIVER_HPP
