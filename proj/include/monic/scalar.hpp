#ifndef MONIC_SCALAR_HPP
#define MONIC_SCALAR_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace monic {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// Approximate complex scalar.
using Complex = std::complex<double>;

// Residue mod p, p a word-sized prime. Residues lie in [0, p).
// Arithmetic between elements of different fields is a programming error.
class Fp {
   public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

    static Fp from_signed(std::int64_t v, std::uint64_t p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const {
        check(o);
        std::uint64_t s = v_ + o.v_;
        if (s >= p_) s -= p_;
        return Fp(s, p_, 0);
    }
    Fp operator-(const Fp& o) const {
        check(o);
        std::uint64_t s = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return Fp(s, p_, 0);
    }
    Fp operator*(const Fp& o) const {
        check(o);
        using u128 = unsigned __int128;
        return Fp(static_cast<std::uint64_t>(u128(v_) * u128(o.v_) % u128(p_)), p_, 0);
    }
    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_, 0); }

    Fp inv() const {
        if (v_ == 0) throw Error("Fp: division by zero");
        // extended Euclid
        std::int64_t a = static_cast<std::int64_t>(v_), m = static_cast<std::int64_t>(p_);
        std::int64_t x0 = 1, x1 = 0, b = m;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        if (a != 1) throw Error("Fp: modulus not prime or element not invertible");
        if (x0 < 0) x0 += m;
        return Fp(static_cast<std::uint64_t>(x0), p_, 0);
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

   private:
    Fp(std::uint64_t v, std::uint64_t p, int) : v_(v), p_(p) {}
    void check(const Fp& o) const {
        if (p_ != o.p_) throw Error("Fp: mixed moduli " + std::to_string(p_) + " and " + std::to_string(o.p_));
    }
    std::uint64_t v_;
    std::uint64_t p_;
};

template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool is_exact = true;
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational one(const Rational&) { return Rational(1); }
    static bool is_zero(const Rational& x, double) { return x == 0; }
};

template <>
struct field_traits<Fp> {
    static constexpr bool is_exact = true;
    static Fp zero(const Fp& like) { return Fp(0, like.prime()); }
    static Fp one(const Fp& like) { return Fp(1, like.prime()); }
    static bool is_zero(const Fp& x, double) { return x.is_zero(); }
};

template <>
struct field_traits<Complex> {
    static constexpr bool is_exact = false;
    static Complex zero(const Complex&) { return Complex(0.0, 0.0); }
    static Complex one(const Complex&) { return Complex(1.0, 0.0); }
    static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    using u128 = unsigned __int128;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>(u128(r) * a % n);
            a = static_cast<std::uint64_t>(u128(a) * a % n);
            e >>= 1;
        }
        return r;
    };
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = static_cast<std::uint64_t>(u128(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace monic

#endif
