#ifndef PREPROJ_CYCLOTOMIC_HPP
#define PREPROJ_CYCLOTOMIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "detail/expr_parser.hpp"
#include "errors.hpp"

namespace preproj {

using Rational = mpq_class;

namespace detail {

// Immutable description of Q(zeta_N) in the power basis 1, z, ..., z^(phi-1).
struct CyclotomicField {
    unsigned long conductor = 1;
    std::size_t degree = 1;                       // phi(N)
    std::vector<std::int64_t> modulus;            // Phi_N, monic, length degree + 1
    std::vector<std::vector<std::int64_t>> powers;  // z^k for 0 <= k < N in the power basis
};

inline std::vector<std::int64_t> cyclotomic_polynomial(unsigned long n,
                                                       std::map<unsigned long, std::vector<std::int64_t>>& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    std::vector<std::int64_t> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<std::int64_t> div = cyclotomic_polynomial(d, memo);
        const long dd = static_cast<long>(div.size()) - 1;
        const long top = static_cast<long>(num.size()) - 1;
        std::vector<std::int64_t> quot(static_cast<std::size_t>(top - dd + 1), 0);
        for (long k = top; k >= dd; --k) {
            std::int64_t c = num[static_cast<std::size_t>(k)];
            quot[static_cast<std::size_t>(k - dd)] = c;
            if (c == 0) continue;
            for (long l = 0; l <= dd; ++l) num[static_cast<std::size_t>(k - dd + l)] -= c * div[static_cast<std::size_t>(l)];
        }
        num = std::move(quot);
    }
    memo.emplace(n, num);
    return num;
}

inline const CyclotomicField& cyclotomic_field(unsigned long n) {
    static std::mutex mutex;
    static std::map<unsigned long, std::unique_ptr<const CyclotomicField>> cache;
    static std::map<unsigned long, std::vector<std::int64_t>> poly_memo;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;

    auto field = std::make_unique<CyclotomicField>();
    field->conductor = n;
    field->modulus = cyclotomic_polynomial(n, poly_memo);
    field->degree = field->modulus.size() - 1;
    const std::size_t phi = field->degree;
    field->powers.assign(n, std::vector<std::int64_t>(phi, 0));
    std::vector<std::int64_t> cur(phi, 0);
    cur[0] = 1;
    for (unsigned long k = 0; k < n; ++k) {
        field->powers[k] = cur;
        // multiply by z and reduce x^phi = -sum_{l<phi} Phi_l x^l
        std::int64_t top = cur[phi - 1];
        for (std::size_t l = phi - 1; l > 0; --l) cur[l] = cur[l - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::size_t l = 0; l < phi; ++l) cur[l] -= top * field->modulus[l];
    }
    const CyclotomicField& ref = *field;
    cache.emplace(n, std::move(field));
    return ref;
}

// Dense polynomial helpers over Q used for inversion modulo Phi_N.
using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpoly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
    // a - q*b
    QPoly r = a;
    if (!q.empty() && !b.empty()) {
        if (r.size() < q.size() + b.size() - 1) r.resize(q.size() + b.size() - 1, Rational(0));
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
        }
    }
    qpoly_trim(r);
    return r;
}

inline std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
    QPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t shift = a.size() - b.size();
        Rational c = a.back() / lead;
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        qpoly_trim(a);
    }
    qpoly_trim(q);
    return {q, a};
}

}  // namespace detail

// Exact element of the cyclotomic field Q(zeta_N), zeta_N = exp(2 pi i / N),
// stored in the power basis modulo the N-th cyclotomic polynomial.
// Elements of different conductors are combined in Q(zeta_lcm).
class CycNum {
public:
    CycNum() : field_(&detail::cyclotomic_field(1)), coeffs_(1, Rational(0)) {}
    CycNum(long value) : CycNum(Rational(value)) {}  // NOLINT(google-explicit-constructor)
    CycNum(const Rational& value)                    // NOLINT(google-explicit-constructor)
        : field_(&detail::cyclotomic_field(1)), coeffs_(1, value) {
        coeffs_[0].canonicalize();
    }

    // zeta_m^k
    static CycNum root_of_unity(unsigned long m, long k) {
        if (m == 0) throw PreconditionError("root of unity order must be positive");
        const auto& f = detail::cyclotomic_field(m);
        long r = k % static_cast<long>(m);
        if (r < 0) r += static_cast<long>(m);
        CycNum out(f);
        const auto& pw = f.powers[static_cast<std::size_t>(r)];
        for (std::size_t l = 0; l < f.degree; ++l) out.coeffs_[l] = pw[l];
        out.demote();
        return out;
    }

    static CycNum from_coefficients(unsigned long conductor, std::vector<Rational> coeffs) {
        const auto& f = detail::cyclotomic_field(conductor);
        if (coeffs.size() != f.degree)
            throw PreconditionError("coefficient vector length must equal phi(N)");
        CycNum out(f);
        out.coeffs_ = std::move(coeffs);
        for (auto& c : out.coeffs_) c.canonicalize();
        out.demote();
        return out;
    }

    unsigned long conductor() const noexcept { return field_->conductor; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const { return field_->conductor == 1; }
    // Valid only when is_rational().
    const Rational& rational_value() const { return coeffs_[0]; }
    bool is_one() const { return is_rational() && coeffs_[0] == 1; }

    // Same value expressed in Q(zeta_L); L must be a multiple of the conductor.
    CycNum lifted_to(unsigned long target) const {
        if (target % field_->conductor != 0) throw PreconditionError("lift target must be a multiple of the conductor");
        if (target == field_->conductor) return *this;
        const auto& g = detail::cyclotomic_field(target);
        CycNum out(g);
        const unsigned long stride = target / field_->conductor;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            const auto& pw = g.powers[k * stride];
            for (std::size_t l = 0; l < g.degree; ++l)
                if (pw[l] != 0) out.coeffs_[l] += coeffs_[k] * pw[l];
        }
        return out;  // not demoted: caller asked for this conductor
    }

    // Coefficient vector in Q(zeta_L) used for ordering and keys.
    std::vector<Rational> coordinates_in(unsigned long target) const { return lifted_to(target).coeffs_; }

    CycNum operator-() const {
        CycNum out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    friend CycNum operator+(const CycNum& a, const CycNum& b) { return combine(a, b, false); }
    friend CycNum operator-(const CycNum& a, const CycNum& b) { return combine(a, b, true); }

    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        if (b.is_rational()) return a.scaled(b.coeffs_[0]);
        if (a.is_rational()) return b.scaled(a.coeffs_[0]);
        if (a.field_ == b.field_) return multiply_same(a, b);
        unsigned long l = std::lcm(a.conductor(), b.conductor());
        return multiply_same(a.lifted_to(l), b.lifted_to(l));
    }

    friend CycNum operator/(const CycNum& a, const CycNum& b) {
        if (b.is_rational()) {
            if (b.coeffs_[0] == 0) throw ZeroDivisionError();
            return a.scaled(1 / b.coeffs_[0]);
        }
        return a * b.inverse();
    }

    CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
    CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
    CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
    CycNum& operator/=(const CycNum& b) { return *this = *this / b; }

    CycNum inverse() const {
        if (is_zero()) throw ZeroDivisionError();
        if (is_rational()) return CycNum(Rational(1) / coeffs_[0]);
        // Extended Euclid: u * a + v * Phi = 1 in Q[x].
        using detail::QPoly;
        QPoly modulus(field_->modulus.begin(), field_->modulus.end());
        QPoly r0 = modulus, r1 = coeffs_;
        detail::qpoly_trim(r1);
        QPoly s0, s1{Rational(1)};
        while (r1.size() > 1) {
            auto [q, r] = detail::qpoly_divmod(r0, r1);
            QPoly s = detail::qpoly_sub_mul(s0, q, s1);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r1 is a nonzero constant because Phi_N is irreducible.
        Rational c = r1.at(0);
        CycNum out(*field_);
        for (std::size_t k = 0; k < s1.size() && k < out.coeffs_.size(); ++k) out.coeffs_[k] = s1[k] / c;
        out.demote();
        return out;
    }

    CycNum pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycNum result(1), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
        unsigned long l = std::lcm(a.conductor(), b.conductor());
        return a.coordinates_in(l) == b.coordinates_in(l);
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    // Image under the embedding zeta_N -> exp(2 pi i / N).
    std::complex<double> embed() const {
        std::complex<double> acc = 0;
        const double base = 2.0 * std::numbers::pi / static_cast<double>(conductor());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            acc += coeffs_[k].get_d() * std::polar(1.0, base * static_cast<double>(k));
        }
        return acc;
    }

    // Signed terms of the power-basis expansion, e.g. {(false,"1/2"), (true,"zeta(3)")}.
    // Bodies never start with a sign.
    std::vector<std::pair<bool, std::string>> signed_terms() const {
        std::vector<std::pair<bool, std::string>> out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            bool negative = c < 0;
            Rational mag = negative ? Rational(-c) : c;
            std::string body;
            if (k == 0) {
                body = mag.get_str();
            } else {
                std::string z = basis_symbol(k);
                body = (mag == 1) ? z : mag.get_str() + "*" + z;
            }
            out.emplace_back(negative, std::move(body));
        }
        return out;
    }

    std::string to_string() const {
        auto terms = signed_terms();
        if (terms.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto& [neg, body] = terms[i];
            if (i == 0) {
                if (neg) s += body_needs_unit(body) ? "-1*" : "-";
            } else {
                s += neg ? "-" : "+";
            }
            s += body;
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycNum& a) { return os << a.to_string(); }

    // True when a leading unary minus in front of `body` would be captured by an exponent.
    static bool body_needs_unit(const std::string& body) {
        std::size_t stop = body.find('*');
        std::string_view first = std::string_view(body).substr(0, stop);
        return first.find('^') != std::string_view::npos;
    }

private:
    const detail::CyclotomicField* field_;
    std::vector<Rational> coeffs_;

    explicit CycNum(const detail::CyclotomicField& f) : field_(&f), coeffs_(f.degree, Rational(0)) {}

    std::string basis_symbol(std::size_t k) const {
        if (field_->conductor == 4) return "i";  // phi(4) = 2, so k == 1 here
        std::string z = "zeta(" + std::to_string(field_->conductor) + ")";
        return k == 1 ? z : z + "^" + std::to_string(k);
    }

    // Drop to conductor 1 when the value is rational.
    void demote() {
        if (field_->conductor == 1) return;
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) return;
        Rational c = coeffs_[0];
        field_ = &detail::cyclotomic_field(1);
        coeffs_.assign(1, c);
    }

    CycNum scaled(const Rational& s) const {
        if (s == 0) return CycNum();
        CycNum out = *this;
        for (auto& c : out.coeffs_) c *= s;
        return out;
    }

    static CycNum combine(const CycNum& a, const CycNum& b, bool subtract) {
        if (b.is_rational()) {
            CycNum out = a;
            if (subtract) out.coeffs_[0] -= b.coeffs_[0];
            else out.coeffs_[0] += b.coeffs_[0];
            return out;
        }
        if (a.is_rational()) {
            CycNum out = subtract ? -b : b;
            out.coeffs_[0] += a.coeffs_[0];
            out.demote();
            return out;
        }
        CycNum x, y;
        const CycNum *pa = &a, *pb = &b;
        if (a.field_ != b.field_) {
            unsigned long l = std::lcm(a.conductor(), b.conductor());
            x = a.lifted_to(l);
            y = b.lifted_to(l);
            pa = &x;
            pb = &y;
        }
        CycNum out = *pa;
        for (std::size_t k = 0; k < out.coeffs_.size(); ++k) {
            if (subtract) out.coeffs_[k] -= pb->coeffs_[k];
            else out.coeffs_[k] += pb->coeffs_[k];
        }
        out.demote();
        return out;
    }

    static CycNum multiply_same(const CycNum& a, const CycNum& b) {
        const auto& f = *a.field_;
        const std::size_t phi = f.degree;
        std::vector<Rational> prod(2 * phi - 1, Rational(0));
        for (std::size_t i = 0; i < phi; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < phi; ++j)
                if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        for (std::size_t d = prod.size() - 1; d >= phi; --d) {
            if (prod[d] != 0) {
                Rational c = prod[d];
                for (std::size_t l = 0; l < phi; ++l)
                    if (f.modulus[l] != 0) prod[d - phi + l] -= c * f.modulus[l];
            }
        }
        CycNum out(f);
        for (std::size_t l = 0; l < phi; ++l) out.coeffs_[l] = std::move(prod[l]);
        out.demote();
        return out;
    }
};

inline CycNum cyc_root_of_unity(unsigned long m, long k) { return CycNum::root_of_unity(m, k); }

inline CycNum cyc_add(const CycNum& a, const CycNum& b) { return a + b; }
inline CycNum cyc_mul(const CycNum& a, const CycNum& b) { return a * b; }
inline CycNum cyc_neg(const CycNum& a) { return -a; }
inline CycNum cyc_inv(const CycNum& a) { return a.inverse(); }

// Smallest m >= 1 with a^m = 1, or nullopt when a is not a root of unity.
// Every root of unity in Q(zeta_N) has order dividing lcm(N, 2), so testing
// the divisors of that bound is conclusive.
inline std::optional<unsigned long> cyc_order_as_root_of_unity(const CycNum& a) {
    if (a.is_zero()) throw PreconditionError("zero has no multiplicative order");
    const unsigned long bound = std::lcm(a.conductor(), 2UL);
    for (unsigned long m = 1; m <= bound; ++m) {
        if (bound % m != 0) continue;
        if (a.pow(static_cast<long>(m)).is_one()) return m;
    }
    return std::nullopt;
}

namespace detail {

struct CycBuilder {
    using value_type = CycNum;
    value_type rational(const Rational& q) const { return CycNum(q); }
    value_type zeta(unsigned long m) const { return CycNum::root_of_unity(m, 1); }
    value_type power(const value_type& v, unsigned long e) const { return v.pow(static_cast<long>(e)); }
    const char* variable_name() const { return nullptr; }
    value_type variable() const { return CycNum(); }
};

}  // namespace detail

inline CycNum cyc_parse(std::string_view text) {
    return detail::ExprParser<detail::CycBuilder>(text, detail::CycBuilder{}).parse();
}

inline std::string cyc_print(const CycNum& a) { return a.to_string(); }

}  // namespace preproj

#endif  // PREPROJ_CYCLOTOMIC_HPP
