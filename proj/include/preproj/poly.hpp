#ifndef PREPROJ_POLY_HPP
#define PREPROJ_POLY_HPP

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace preproj {

// Dense univariate polynomial in t with cyclotomic coefficients.
// Trailing zero coefficients are never stored; the zero polynomial is empty.
class Poly {
public:
    Poly() = default;
    Poly(const CycNum& constant) {  // NOLINT(google-explicit-constructor)
        if (!constant.is_zero()) c_.push_back(constant);
    }
    Poly(long constant) : Poly(CycNum(constant)) {}  // NOLINT(google-explicit-constructor)
    Poly(std::initializer_list<CycNum> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<CycNum> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(const CycNum& coeff, std::size_t power) {
        if (coeff.is_zero()) return Poly();
        std::vector<CycNum> v(power + 1);
        v[power] = coeff;
        return Poly(std::move(v));
    }
    static Poly t() { return monomial(CycNum(1), 1); }
    // 1 - lambda t^k
    static Poly one_minus(const CycNum& lambda, std::size_t k) { return Poly(1) - monomial(lambda, k); }

    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const std::vector<CycNum>& coefficients() const noexcept { return c_; }

    CycNum coeff(std::size_t k) const { return k < c_.size() ? c_[k] : CycNum(); }
    const CycNum& lead() const {
        if (c_.empty()) throw PreconditionError("zero polynomial has no leading coefficient");
        return c_.back();
    }

    CycNum eval(const CycNum& x) const {
        CycNum acc;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    // Largest conductor appearing among the coefficients' least common multiple.
    unsigned long conductor() const {
        unsigned long l = 1;
        for (const auto& c : c_) l = std::lcm(l, c.conductor());
        return l;
    }

    bool has_rational_coefficients() const {
        for (const auto& c : c_)
            if (!c.is_rational()) return false;
        return true;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        if (lead().is_one()) return *this;
        return *this * lead().inverse();
    }

    Poly operator-() const {
        Poly out = *this;
        for (auto& c : out.c_) c = -c;
        return out;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly out = a.c_.size() >= b.c_.size() ? a : b;
        const Poly& small = a.c_.size() >= b.c_.size() ? b : a;
        for (std::size_t k = 0; k < small.c_.size(); ++k) out.c_[k] += small.c_[k];
        out.trim();
        return out;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<CycNum> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                out[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(out));
    }
    friend Poly operator*(const Poly& a, const CycNum& s) {
        if (s.is_zero()) return Poly();
        Poly out = a;
        for (auto& c : out.c_) c *= s;
        out.trim();
        return out;
    }
    friend Poly operator*(const CycNum& s, const Poly& a) { return a * s; }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    Poly pow(unsigned e) const {
        Poly result(1), base = *this;
        while (e > 0) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e > 0) base *= base;
        }
        return result;
    }

    // Euclidean division a = q*b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw ZeroDivisionError("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<CycNum> rem = a.c_;
        std::vector<CycNum> quot(a.c_.size() - b.c_.size() + 1);
        const bool monic_divisor = b.lead().is_one();
        const CycNum inv_lead = monic_divisor ? CycNum(1) : b.lead().inverse();
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t k = rem.size(); k-- > db;) {
            if (rem[k].is_zero()) continue;
            CycNum q = monic_divisor ? rem[k] : rem[k] * inv_lead;
            quot[k - db] = q;
            for (std::size_t l = 0; l <= db; ++l)
                if (!b.c_[l].is_zero()) rem[k - db + l] -= q * b.c_[l];
        }
        rem.resize(db);
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    // Divide by (t - 1); requires p(1) = 0.
    Poly deflate_at_one() const {
        if (is_zero()) return *this;
        std::vector<CycNum> q(c_.size() - 1);
        CycNum carry;
        for (std::size_t k = c_.size(); k-- > 1;) {
            carry += c_[k];
            q[k - 1] = carry;
        }
        return Poly(std::move(q));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string to_string(const std::string& var = "t") const;

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

private:
    std::vector<CycNum> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

// Monic greatest common divisor.
inline Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd of two zero polynomials is undefined");
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.is_zero()) return a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        if (b.degree() == 0) return Poly(1);
        Poly r = Poly::divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Poly> poly_div_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
    auto [q, r] = Poly::divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

namespace detail {

// One printed monomial: sign, and a body that never starts with a sign.
struct PrintedTerm {
    bool negative = false;
    std::string body;
};

inline std::vector<PrintedTerm> poly_terms(const Poly& p, const std::string& var) {
    std::vector<PrintedTerm> out;
    const auto& cs = p.coefficients();
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const CycNum& c = cs[k];
        if (c.is_zero()) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        auto parts = c.signed_terms();
        PrintedTerm term;
        if (parts.size() == 1) {
            term.negative = parts[0].first;
            const std::string& b = parts[0].second;
            if (k == 0) term.body = b;
            else if (b == "1") term.body = mono;
            else term.body = b + "*" + mono;
        } else {
            std::string inner = c.to_string();
            term.body = k == 0 ? inner : "(" + inner + ")*" + mono;
            // a compound constant term keeps its own signs inside the body
        }
        out.push_back(std::move(term));
    }
    return out;
}

inline std::string join_terms(const std::vector<PrintedTerm>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& tm = terms[i];
        if (i == 0) {
            if (tm.negative) s += CycNum::body_needs_unit(tm.body) ? "-1*" : "-";
        } else {
            s += tm.negative ? "-" : "+";
        }
        s += tm.body;
    }
    return s;
}

}  // namespace detail

// Lowest degree first, coefficients in the scalar grammar, e.g. "3-5*t+3*t^2".
inline std::string Poly::to_string(const std::string& var) const {
    return detail::join_terms(detail::poly_terms(*this, var));
}

}  // namespace preproj

#endif  // PREPROJ_POLY_HPP
