#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace reviewkit {

// Exact rational on int64. Survey aggregates stay exact no matter how
// many collections get pooled; doubles appear only at the rendering
// boundary.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(int64_t value) : num_(value), den_(1) {}
    Rational(int64_t num, int64_t den) : num_(num), den_(den) { normalize(); }

    int64_t num() const noexcept { return num_; }
    int64_t den() const noexcept { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return num_ * o.den_ < o.num_ * den_;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Decimal string with `places` digits, round half away from zero.
    std::string to_decimal(int places) const;

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    int64_t num_;
    int64_t den_;
};

} // namespace reviewkit
