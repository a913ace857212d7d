#pragma once

#include <stdexcept>
#include <string>

namespace grsat {

/// A degree value extended by minus infinity (the regularity of the zero
/// module). Explicit variant, never a sentinel integer.
class ExtDeg {
public:
    constexpr ExtDeg() : finite_(false), v_(0) {}
    static constexpr ExtDeg minus_inf() { return ExtDeg(); }
    static constexpr ExtDeg of(int v) { return ExtDeg(true, v); }

    bool is_minus_inf() const { return !finite_; }
    bool is_finite() const { return finite_; }
    int value() const {
        if (!finite_) throw std::logic_error("ExtDeg: minus infinity has no value");
        return v_;
    }
    int value_or(int fallback) const { return finite_ ? v_ : fallback; }

    bool operator==(const ExtDeg& o) const {
        return finite_ == o.finite_ && (!finite_ || v_ == o.v_);
    }
    bool operator!=(const ExtDeg& o) const { return !(*this == o); }
    bool operator<(const ExtDeg& o) const {
        if (!finite_) return o.finite_;
        if (!o.finite_) return false;
        return v_ < o.v_;
    }
    bool operator<=(const ExtDeg& o) const { return *this < o || *this == o; }
    bool operator>=(const ExtDeg& o) const { return o <= *this; }
    bool operator>(const ExtDeg& o) const { return o < *this; }

    ExtDeg operator+(int s) const { return finite_ ? of(v_ + s) : minus_inf(); }
    ExtDeg operator-(int s) const { return finite_ ? of(v_ - s) : minus_inf(); }

    static ExtDeg max(const ExtDeg& a, const ExtDeg& b) { return a < b ? b : a; }

    /// Truncation at d: keep the value only if it is >= d.
    ExtDeg truncated(int d) const {
        if (!finite_ || v_ < d) return minus_inf();
        return *this;
    }

    std::string str() const { return finite_ ? std::to_string(v_) : "-inf"; }

private:
    constexpr ExtDeg(bool f, int v) : finite_(f), v_(v) {}
    bool finite_;
    int v_;
};

inline std::string to_string(const ExtDeg& d) { return d.str(); }

} // namespace grsat
