#pragma once

// Exact scalar types usable as Eigen scalars.
//
// Boost.Multiprecision's own Eigen adapter does not compile against Eigen 3.4
// with the boost shipped here, so the multiprecision numbers are wrapped in a
// small value class that exposes plain arithmetic operators only.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace quiverkit {

template <class Backend>
class Exact {
public:
    using value_type = Backend;

    Exact() = default;
    Exact(int v) : v_(v) {}
    Exact(long v) : v_(v) {}
    Exact(long long v) : v_(v) {}
    Exact(unsigned long v) : v_(v) {}
    Exact(unsigned long long v) : v_(v) {}
    explicit Exact(Backend v) : v_(std::move(v)) {}

    const Backend& value() const { return v_; }

    friend Exact operator+(Exact a, const Exact& b) { a.v_ += b.v_; return a; }
    friend Exact operator-(Exact a, const Exact& b) { a.v_ -= b.v_; return a; }
    friend Exact operator*(Exact a, const Exact& b) { a.v_ *= b.v_; return a; }
    friend Exact operator/(Exact a, const Exact& b) { a.v_ /= b.v_; return a; }
    Exact operator-() const { return Exact(Backend(-v_)); }
    Exact& operator+=(const Exact& b) { v_ += b.v_; return *this; }
    Exact& operator-=(const Exact& b) { v_ -= b.v_; return *this; }
    Exact& operator*=(const Exact& b) { v_ *= b.v_; return *this; }
    Exact& operator/=(const Exact& b) { v_ /= b.v_; return *this; }

    friend bool operator==(const Exact& a, const Exact& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Exact& a, const Exact& b) { return a.v_ != b.v_; }
    friend bool operator<(const Exact& a, const Exact& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Exact& a, const Exact& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Exact& a, const Exact& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Exact& a, const Exact& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return v_ == 0; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }
    std::string str() const { return v_.str(); }

    friend std::ostream& operator<<(std::ostream& os, const Exact& x) { return os << x.v_; }

private:
    Backend v_{0};
};

using Integer = Exact<boost::multiprecision::cpp_int>;
using Rational = Exact<boost::multiprecision::cpp_rational>;

template <class B>
Exact<B> abs(const Exact<B>& x) { return x.sign() < 0 ? -x : x; }

inline Rational make_rational(const Integer& num, const Integer& den = Integer(1)) {
    return Rational(boost::multiprecision::cpp_rational(num.value(), den.value()));
}

inline Rational to_rational(const Integer& x) { return make_rational(x); }

inline Integer numerator(const Rational& x) {
    return Integer(boost::multiprecision::numerator(x.value()));
}

inline Integer denominator(const Rational& x) {
    return Integer(boost::multiprecision::denominator(x.value()));
}

/// Narrowing conversion; throws std::overflow_error when out of range.
inline std::int64_t to_int64(const Integer& x) {
    if (x.value() > std::numeric_limits<std::int64_t>::max() ||
        x.value() < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit into 64 bits: " + x.str());
    return static_cast<std::int64_t>(x.value());
}

// Checked 64-bit arithmetic for vertex-function pairings. Overflow is an error,
// never a wrapped value.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 addition overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 subtraction overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 multiplication overflow");
    return r;
}

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;

}  // namespace quiverkit

namespace Eigen {

template <class B>
struct NumTraits<quiverkit::Exact<B>> : GenericNumTraits<quiverkit::Exact<B>> {
    using Real = quiverkit::Exact<B>;
    using NonInteger = quiverkit::Exact<B>;
    using Nested = quiverkit::Exact<B>;
    using Literal = quiverkit::Exact<B>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 16
    };
    // Exact scalars: no rounding, printed in full.
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    static inline int max_digits10() { return 0; }
};

}  // namespace Eigen
