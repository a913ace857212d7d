#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace grsat {

/// Exact rational scalar backed by GMP. Values are always canonical
/// (reduced fraction, positive denominator).
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    explicit Rat(const std::string& s) : v_(s) { v_.canonicalize(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rat operator-() const { return Rat(mpq_class(-v_), NoCanon{}); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_), NoCanon{}); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_), NoCanon{}); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_), NoCanon{}); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(mpq_class(v_ / o.v_), NoCanon{});
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    bool is_negative() const { return sgn(v_) < 0; }
    Rat abs() const { return is_negative() ? -*this : *this; }
    Rat inv() const { return Rat(1) / *this; }

    const mpq_class& value() const { return v_; }
    std::string str() const { return v_.get_str(); }

private:
    struct NoCanon {};
    Rat(mpq_class v, NoCanon) : v_(std::move(v)) {}
    mpq_class v_;
};

inline std::string to_string(const Rat& r) { return r.str(); }

/// Prime-field element. The modulus travels with the value, so no global
/// context is needed. A default-constructed element is the universal zero
/// (modulus 0), compatible with any modulus.
class GFp {
public:
    GFp() : v_(0), p_(0) {}
    GFp(long n, uint32_t p) : p_(p) {
        if (p == 0) throw std::domain_error("GFp: modulus must be positive");
        long r = n % (long)p;
        if (r < 0) r += p;
        v_ = (uint32_t)r;
    }

    uint32_t residue() const { return v_; }
    uint32_t modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_negative() const { return false; }
    GFp abs() const { return *this; }

    GFp operator-() const {
        if (v_ == 0) return *this;
        return raw(p_ - v_, p_);
    }
    GFp operator+(const GFp& o) const {
        uint32_t p = join(o);
        uint64_t s = (uint64_t)v_ + o.v_;
        if (p && s >= p) s -= p;
        return raw((uint32_t)s, p);
    }
    GFp operator-(const GFp& o) const { return *this + (-o); }
    GFp operator*(const GFp& o) const {
        if (v_ == 0 || o.v_ == 0) return GFp();
        uint32_t p = join(o);
        return raw((uint32_t)(((uint64_t)v_ * o.v_) % p), p);
    }
    GFp operator/(const GFp& o) const { return *this * o.inv(); }
    GFp& operator+=(const GFp& o) { return *this = *this + o; }
    GFp& operator-=(const GFp& o) { return *this = *this - o; }
    GFp& operator*=(const GFp& o) { return *this = *this * o; }

    GFp inv() const {
        if (v_ == 0) throw std::domain_error("GFp: division by zero");
        // extended Euclid
        int64_t a = v_, b = p_, x0 = 1, x1 = 0;
        while (b) {
            int64_t q = a / b;
            a -= q * b; std::swap(a, b);
            x0 -= q * x1; std::swap(x0, x1);
        }
        if (a != 1) throw std::domain_error("GFp: modulus not prime");
        if (x0 < 0) x0 += p_;
        return raw((uint32_t)x0, p_);
    }

    bool operator==(const GFp& o) const {
        if (v_ == 0 && o.v_ == 0) return true;
        return v_ == o.v_ && join(o) != 0;
    }
    bool operator!=(const GFp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    static GFp raw(uint32_t v, uint32_t p) { GFp e; e.v_ = v; e.p_ = p; return e; }
    uint32_t join(const GFp& o) const {
        if (p_ == 0) return o.p_;
        if (o.p_ != 0 && o.p_ != p_) throw std::domain_error("GFp: mixed moduli");
        return p_;
    }
    uint32_t v_;
    uint32_t p_;
};

inline std::string to_string(const GFp& e) { return e.str(); }

template <class K>
concept Field = requires(K a, K b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_one() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
    { a.inv() } -> std::convertible_to<K>;
};

inline bool is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace grsat
