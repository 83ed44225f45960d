#ifndef PREPROJ_RATFUN_HPP
#define PREPROJ_RATFUN_HPP

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "detail/expr_parser.hpp"
#include "errors.hpp"
#include "poly.hpp"

namespace preproj {

// Reduced quotient num/den of polynomials in t.
//
// Canonical form: gcd(num, den) = 1; den(0) = 1 when den(0) != 0, otherwise den
// is monic; the zero function is 0/1. Two equal values therefore have equal
// numerators and denominators.
class RatFun {
public:
    RatFun() : den_(1) {}
    RatFun(const Poly& p) : num_(p), den_(1) {}          // NOLINT(google-explicit-constructor)
    RatFun(const CycNum& c) : num_(c), den_(1) {}        // NOLINT(google-explicit-constructor)
    RatFun(long c) : num_(c), den_(1) {}                 // NOLINT(google-explicit-constructor)
    RatFun(const Poly& num, const Poly& den) : num_(num), den_(den) {
        if (den_.is_zero()) throw ZeroDivisionError("rational function with zero denominator");
        reduce();
    }

    static RatFun t() { return RatFun(Poly::t()); }

    const Poly& numerator() const noexcept { return num_; }
    const Poly& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_one() const { return is_polynomial() && num_.degree() == 0 && num_.lead().is_one(); }

    RatFun operator-() const {
        RatFun out = *this;
        out.num_ = -out.num_;
        return out;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) { return add(a, b, false); }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return add(a, b, true); }

    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        if (a.is_zero() || b.is_zero()) return RatFun();
        if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_);
        // Cross-cancel before multiplying to keep degrees small.
        Poly g1 = poly_gcd(a.num_, b.den_);
        Poly g2 = poly_gcd(b.num_, a.den_);
        Poly n1 = exact(a.num_, g1), d2 = exact(b.den_, g1);
        Poly n2 = exact(b.num_, g2), d1 = exact(a.den_, g2);
        return from_coprime(n1 * n2, d1 * d2);
    }

    friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

    RatFun inverse() const {
        if (is_zero()) throw ZeroDivisionError("inverse of the zero rational function");
        return from_coprime(den_, num_);
    }

    RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
    RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
    RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
    RatFun& operator/=(const RatFun& b) { return *this = *this / b; }

    RatFun pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        return from_coprime(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
    }

    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    // "num/den"; with `factored` the denominator is shown as a product of
    // (1-t^k)^e and (1+t^k)^e factors where possible.
    std::string to_string(bool factored = false) const;

    friend std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }

private:
    Poly num_;
    Poly den_;

    static Poly exact(const Poly& a, const Poly& b) {
        if (b.degree() == 0 && b.lead().is_one()) return a;
        return Poly::divmod(a, b).first;
    }

    // Inputs already coprime: only the scaling normalization remains.
    static RatFun from_coprime(Poly num, Poly den) {
        RatFun out;
        out.num_ = std::move(num);
        out.den_ = std::move(den);
        out.rescale();
        return out;
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        if (den_.degree() > 0) {
            Poly g = poly_gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = Poly::divmod(num_, g).first;
                den_ = Poly::divmod(den_, g).first;
            }
        }
        rescale();
    }

    void rescale() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        CycNum anchor = den_.coeff(0);
        if (anchor.is_zero()) anchor = den_.lead();
        if (anchor.is_one()) return;
        CycNum inv = anchor.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }

    static RatFun add(const RatFun& a, const RatFun& b, bool subtract) {
        const Poly bn = subtract ? -b.num_ : b.num_;
        if (a.is_zero()) return from_coprime(bn, b.den_);
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RatFun(a.num_ + bn, a.den_);
        if (a.is_polynomial()) return from_coprime(a.num_ * b.den_ + bn, b.den_);
        if (b.is_polynomial()) return from_coprime(a.num_ + bn * a.den_, a.den_);
        // Henrici: split off the common part of the denominators first.
        Poly g = poly_gcd(a.den_, b.den_);
        if (g.degree() == 0) return from_coprime(a.num_ * b.den_ + bn * a.den_, a.den_ * b.den_);
        Poly ad = exact(a.den_, g), bd = exact(b.den_, g);
        Poly num = a.num_ * bd + bn * ad;
        if (num.is_zero()) return RatFun();
        Poly g2 = poly_gcd(num, g);
        if (g2.degree() > 0) {
            num = exact(num, g2);
            g = exact(g, g2);
        }
        return from_coprime(std::move(num), ad * bd * g);
    }
};

inline RatFun ratfun_normalize(const Poly& num, const Poly& den) { return RatFun(num, den); }

// Coefficients of a power series in degrees 0..D.
struct SeriesTrunc {
    std::vector<CycNum> coeffs;

    SeriesTrunc() = default;
    explicit SeriesTrunc(std::size_t degree) : coeffs(degree + 1) {}
    explicit SeriesTrunc(std::vector<CycNum> c) : coeffs(std::move(c)) {}

    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    const CycNum& operator[](std::size_t k) const { return coeffs[k]; }
    CycNum& operator[](std::size_t k) { return coeffs[k]; }

    friend SeriesTrunc operator+(const SeriesTrunc& a, const SeriesTrunc& b) {
        SeriesTrunc out(std::min(a.degree(), b.degree()));
        for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] = a.coeffs[k] + b.coeffs[k];
        return out;
    }
    friend bool operator==(const SeriesTrunc& a, const SeriesTrunc& b) { return a.coeffs == b.coeffs; }
};

inline SeriesTrunc series_expand(const RatFun& f, std::size_t D) {
    const Poly& num = f.numerator();
    const Poly& den = f.denominator();
    const CycNum d0 = den.coeff(0);
    if (d0.is_zero()) throw NotAPowerSeriesError();
    const CycNum inv = d0.inverse();
    const std::size_t dd = static_cast<std::size_t>(den.degree());
    SeriesTrunc s(D);
    for (std::size_t k = 0; k <= D; ++k) {
        CycNum acc = num.coeff(k);
        for (std::size_t j = 1; j <= std::min(k, dd); ++j) {
            const CycNum& dj = den.coefficients()[j];
            if (!dj.is_zero() && !s.coeffs[k - j].is_zero()) acc -= dj * s.coeffs[k - j];
        }
        s.coeffs[k] = d0.is_one() ? acc : acc * inv;
    }
    return s;
}

// Cauchy product truncated at the smaller of the two degrees.
inline SeriesTrunc series_mul(const SeriesTrunc& a, const SeriesTrunc& b) {
    SeriesTrunc out(std::min(a.degree(), b.degree()));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < out.coeffs.size(); ++j)
            if (!b.coeffs[j].is_zero()) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return out;
}

// Multiplicity of t = 1 as a root of the reduced denominator.
inline unsigned pole_order_at_one(const RatFun& f) {
    unsigned order = 0;
    Poly d = f.denominator();
    while (d.degree() > 0 && d.eval(CycNum(1)).is_zero()) {
        d = d.deflate_at_one();
        ++order;
    }
    return order;
}

namespace detail {

// True when `s` has a '+' or '-' outside parentheses after its first character.
inline bool has_top_level_sum(std::string_view s) {
    int depth = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        char ch = s[k];
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (depth == 0 && k > 0 && (ch == '+' || ch == '-')) return true;
    }
    return false;
}

inline std::string binomial_factor(bool minus, std::size_t k, unsigned e) {
    std::string s = std::string("(1") + (minus ? "-" : "+") + "t" + (k == 1 ? "" : "^" + std::to_string(k)) + ")";
    if (e > 1) s += "^" + std::to_string(e);
    return s;
}

// Product form of a denominator with den(0) = 1, e.g. "(1-t)^2*(1+t)".
// Returns the plain expansion when there is nothing to factor.
inline std::string factored_denominator(const Poly& den, bool* is_product) {
    *is_product = false;
    Poly rest = den;
    std::vector<std::pair<std::size_t, unsigned>> minus_factors, plus_factors;
    for (int k = rest.degree(); k >= 1; --k) {
        const Poly f = Poly::one_minus(CycNum(1), static_cast<std::size_t>(k));
        unsigned e = 0;
        while (rest.degree() >= k) {
            auto q = poly_div_exact(rest, f);
            if (!q) break;
            rest = std::move(*q);
            ++e;
        }
        if (e > 0) minus_factors.emplace_back(static_cast<std::size_t>(k), e);
    }
    for (int k = rest.degree(); k >= 1; --k) {
        const Poly f = Poly(1) + Poly::t().pow(static_cast<unsigned>(k));
        unsigned e = 0;
        while (rest.degree() >= k) {
            auto q = poly_div_exact(rest, f);
            if (!q) break;
            rest = std::move(*q);
            ++e;
        }
        if (e > 0) plus_factors.emplace_back(static_cast<std::size_t>(k), e);
    }
    std::vector<std::string> parts;
    std::sort(minus_factors.begin(), minus_factors.end());
    std::sort(plus_factors.begin(), plus_factors.end());
    for (auto [k, e] : minus_factors) parts.push_back(binomial_factor(true, k, e));
    for (auto [k, e] : plus_factors) parts.push_back(binomial_factor(false, k, e));
    // `rest` keeps rest(0) = 1 since every extracted factor has constant term 1.
    if (rest.degree() > 0) parts.push_back("(" + rest.to_string() + ")");
    if (parts.empty()) return den.to_string();
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    *is_product = parts.size() > 1;
    return out;
}

}  // namespace detail

inline std::string RatFun::to_string(bool factored) const {
    std::string num = num_.to_string();
    if (is_polynomial()) return num;
    if (detail::has_top_level_sum(num)) num = "(" + num + ")";
    std::string den;
    if (factored && !den_.coeff(0).is_zero()) {
        bool product = false;
        den = detail::factored_denominator(den_, &product);
        if (product) den = "(" + den + ")";
        else if (den.front() != '(') den = "(" + den + ")";
    } else {
        den = den_.to_string();
        if (den.find_first_of("+-*/") != std::string::npos) den = "(" + den + ")";
    }
    return num + "/" + den;
}

namespace detail {

struct RatFunBuilder {
    using value_type = RatFun;
    RatFun rational(const mpq_class& q) const { return RatFun(CycNum(Rational(q))); }
    RatFun zeta(unsigned long m) const { return RatFun(CycNum::root_of_unity(m, 1)); }
    RatFun power(const RatFun& v, unsigned long e) const { return v.pow(static_cast<long>(e)); }
    const char* variable_name() const { return "t"; }
    RatFun variable() const { return RatFun::t(); }
};

}  // namespace detail

// Parses the scalar grammar extended by the variable "t".
inline RatFun ratfun_parse(std::string_view text) {
    return detail::ExprParser<detail::RatFunBuilder>(text, detail::RatFunBuilder{}).parse();
}

inline std::string ratfun_print(const RatFun& f, bool factored = false) { return f.to_string(factored); }

}  // namespace preproj

#endif  // PREPROJ_RATFUN_HPP
