#pragma once

/**
 * Exact scalar fields: the rationals (GMP-backed) and prime fields F_p.
 *
 * Every algorithm in the library is a template over a field descriptor
 * `F` satisfying the `Field` concept. Elements are value types with the
 * usual arithmetic operators; the descriptor manufactures constants and
 * handles parsing / printing.
 */

#include <gmpxx.h>

#include <charconv>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "skewcat/error.hpp"

namespace skewcat {

/// Residue modulo a prime. A default-constructed value is the zero of
/// every prime field (modulus 0 means "not yet bound"); any other
/// combination of distinct moduli throws FieldMismatch.
class Zp {
  public:
    Zp() = default;
    Zp(std::uint64_t residue, std::uint32_t modulus)
        : v_(static_cast<std::uint32_t>(residue % modulus)), p_(modulus)
    {
    }

    std::uint32_t residue() const noexcept { return v_; }
    std::uint32_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    friend Zp operator+(Zp a, Zp b)
    {
        const std::uint32_t p = common(a, b);
        if (p == 0) return {};
        std::uint64_t s = std::uint64_t(a.v_) + b.v_;
        if (s >= p) s -= p;
        return raw(static_cast<std::uint32_t>(s), p);
    }
    friend Zp operator-(Zp a, Zp b)
    {
        const std::uint32_t p = common(a, b);
        if (p == 0) return {};
        return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : static_cast<std::uint32_t>(std::uint64_t(a.v_) + p - b.v_), p);
    }
    friend Zp operator*(Zp a, Zp b)
    {
        const std::uint32_t p = common(a, b);
        if (p == 0) return {};
        return raw(static_cast<std::uint32_t>(std::uint64_t(a.v_) * b.v_ % p), p);
    }
    friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
    Zp operator-() const { return v_ == 0 ? *this : raw(p_ - v_, p_); }
    Zp& operator+=(Zp b) { return *this = *this + b; }
    Zp& operator-=(Zp b) { return *this = *this - b; }
    Zp& operator*=(Zp b) { return *this = *this * b; }

    Zp inverse() const
    {
        if (v_ == 0) throw std::domain_error("division by zero in F_p");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = v_;
        while (nr != 0) {
            const std::int64_t q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        if (t < 0) t += p_;
        return raw(static_cast<std::uint32_t>(t), p_);
    }

    friend bool operator==(Zp a, Zp b)
    {
        common(a, b);
        return a.v_ == b.v_;
    }

  private:
    static Zp raw(std::uint32_t v, std::uint32_t p)
    {
        Zp z;
        z.v_ = v;
        z.p_ = p;
        return z;
    }
    static std::uint32_t common(Zp a, Zp b)
    {
        if (a.p_ == b.p_) return a.p_;
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0) return a.p_;
        throw FieldMismatch("mixing residues modulo " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
    }

    std::uint32_t v_ = 0;
    std::uint32_t p_ = 0;
};

/// Rational number in lowest terms with positive denominator.
class Rational {
  public:
    Rational() = default;
    Rational(long n) : q_(n) {}
    Rational(const mpz_class& num, const mpz_class& den) : q_(num, den)
    {
        if (den == 0) throw std::domain_error("zero denominator");
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    const mpq_class& value() const noexcept { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    bool is_zero() const { return sgn(q_) == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.is_zero()) throw std::domain_error("division by zero in Q");
        return Rational(mpq_class(a.q_ / b.q_));
    }
    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
    Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
    Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }
    Rational inverse() const { return Rational(1) / *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  private:
    mpq_class q_;
};

template <class F>
concept Field = requires(const F f, const typename F::element_type a, std::string_view s) {
    { f.zero() } -> std::same_as<typename F::element_type>;
    { f.one() } -> std::same_as<typename F::element_type>;
    { f.from_int(1LL) } -> std::same_as<typename F::element_type>;
    { f.parse(s) } -> std::same_as<typename F::element_type>;
    { f.format(a) } -> std::same_as<std::string>;
    { f.characteristic() } -> std::convertible_to<std::uint64_t>;
    { a + a } -> std::same_as<typename F::element_type>;
    { a * a } -> std::same_as<typename F::element_type>;
    { a / a } -> std::same_as<typename F::element_type>;
    { -a } -> std::same_as<typename F::element_type>;
    { a.is_zero() } -> std::convertible_to<bool>;
};

namespace detail {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Splits "a/b" or "a" into integer parts; throws InputError otherwise.
inline std::pair<mpz_class, mpz_class> split_fraction(std::string_view s)
{
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    auto integer = [&](std::string_view v) {
        v = trim(v);
        std::string str(v);
        if (!str.empty() && str.front() == '+') str.erase(0, 1);
        mpz_class z;
        if (str.empty() || z.set_str(str, 10) != 0) throw InputError("not a scalar: \"" + std::string(s) + "\"");
        return z;
    };
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return {integer(s), mpz_class(1)};
    mpz_class den = integer(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in \"" + std::string(s) + "\"");
    return {integer(s.substr(0, slash)), den};
}

} // namespace detail

/// F_p for a prime p < 2^31.
class PrimeField {
  public:
    using element_type = Zp;

    explicit PrimeField(std::uint32_t p) : p_(p)
    {
        if (p >= (1u << 31) || !detail::is_prime(p))
            throw InputError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
    }

    std::uint32_t characteristic() const noexcept { return p_; }
    Zp zero() const { return Zp(0, p_); }
    Zp one() const { return Zp(1, p_); }
    Zp from_int(long long n) const
    {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return Zp(static_cast<std::uint64_t>(r), p_);
    }
    Zp from_integer(const mpz_class& z) const
    {
        mpz_class r = z % p_;
        if (r < 0) r += p_;
        return Zp(r.get_ui(), p_);
    }
    /// Accepts "a" or "a/b" and reduces a·b⁻¹ mod p.
    Zp parse(std::string_view s) const
    {
        auto [num, den] = detail::split_fraction(s);
        const Zp d = from_integer(den);
        if (d.is_zero()) throw InputError("denominator of \"" + std::string(s) + "\" vanishes mod " + std::to_string(p_));
        return from_integer(num) / d;
    }
    std::string format(Zp a) const { return std::to_string(a.residue()); }
    std::string name() const { return "p:" + std::to_string(p_); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

  private:
    std::uint32_t p_;
};

class RationalField {
  public:
    using element_type = Rational;

    std::uint64_t characteristic() const noexcept { return 0; }
    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(long long n) const { return Rational(mpz_class(std::to_string(n)), mpz_class(1)); }
    Rational parse(std::string_view s) const
    {
        auto [num, den] = detail::split_fraction(s);
        return Rational(num, den);
    }
    /// "a/b", or "a" when the denominator is one.
    std::string format(const Rational& a) const
    {
        if (a.denominator() == 1) return a.numerator().get_str();
        return a.numerator().get_str() + "/" + a.denominator().get_str();
    }
    std::string name() const { return "rational"; }

    friend bool operator==(const RationalField&, const RationalField&) = default;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

/// True when char(k) does not divide n, i.e. n is invertible in k.
template <Field F>
bool invertible_in(const F& field, std::uint64_t n)
{
    const std::uint64_t c = field.characteristic();
    return c == 0 || n % c != 0;
}

} // namespace skewcat
