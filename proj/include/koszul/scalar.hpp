#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

// Eigen 3.4 matrices expose const_iterator, which trips Boost's byte-container
// probe during overload resolution of mixed scalar/matrix operators.
namespace boost::multiprecision::detail {
template <class C>
    requires requires { typename C::StorageKind; }
struct is_byte_container<C> : public boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace koszul {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// contract violations on shapes, degrees and rings
class DimensionError : public Error {
public:
    using Error::Error;
};
class DegreeError : public Error {
public:
    using Error::Error;
};
class RingMismatch : public Error {
public:
    using Error::Error;
};
class InvariantViolation : public Error {
public:
    using Error::Error;
};

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

enum class RingKind { Integers, Rationals, PrimeField };

struct Ring {
    RingKind kind = RingKind::Integers;
    std::int64_t p = 0;

    static Ring integers() { return {RingKind::Integers, 0}; }
    static Ring rationals() { return {RingKind::Rationals, 0}; }
    static Ring prime_field(std::int64_t p);
    static Ring parse(std::string_view text);

    bool is_field() const { return kind != RingKind::Integers; }
    // 2 is invertible (or at least nonzero)
    bool two_nonzero() const { return !(kind == RingKind::PrimeField && p == 2); }
    std::string name() const;

    friend bool operator==(const Ring&, const Ring&) = default;
};

// Element of Z/p. p == 0 marks a modulus-free small integer (Eigen builds
// Scalar(0) and Scalar(1) without knowing p); it adopts the modulus of the
// first operand that has one.
class Fp {
public:
    Fp() = default;
    Fp(int v) : v_(v), p_(0) {}
    Fp(long long v, std::int64_t p) : v_(v), p_(p) { reduce(); }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }

    Fp& operator+=(const Fp& o) { adopt(o); v_ += o.v_; reduce(); return *this; }
    Fp& operator-=(const Fp& o) { adopt(o); v_ -= o.v_; reduce(); return *this; }
    Fp& operator*=(const Fp& o) {
        adopt(o);
        v_ = p_ ? static_cast<std::int64_t>((static_cast<__int128>(v_) * o.v_) % p_) : v_ * o.v_;
        reduce();
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse_with(p_ ? p_ : o.p_); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    Fp operator-() const { return Fp(-v_, p_); }

    friend bool operator==(const Fp& a, const Fp& b) {
        std::int64_t p = a.p_ ? a.p_ : b.p_;
        if (p == 0) return a.v_ == b.v_;
        return Fp(a.v_, p).v_ == Fp(b.v_, p).v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    bool is_zero() const { return p_ ? v_ == 0 : v_ == 0; }
    Fp inverse_with(std::int64_t p) const;

private:
    void adopt(const Fp& o) {
        if (p_ == 0 && o.p_ != 0) {
            p_ = o.p_;
            reduce();
        }
    }
    void reduce() {
        if (p_ == 0) return;
        v_ %= p_;
        if (v_ < 0) v_ += p_;
    }

    std::int64_t v_ = 0;
    std::int64_t p_ = 0;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Integer> {
    static constexpr bool is_field = false;
    static constexpr RingKind kind = RingKind::Integers;
    static Integer make(long long v, const Ring&) { return Integer(v); }
    static Integer parse(std::string_view text, const Ring& r);
    static std::string str(const Integer& x) { return x.str(); }
    static bool is_zero(const Integer& x) { return x.is_zero(); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_field = true;
    static constexpr RingKind kind = RingKind::Rationals;
    static Rational make(long long v, const Ring&) { return Rational(v); }
    static Rational parse(std::string_view text, const Ring& r);
    static std::string str(const Rational& x) { return x.str(); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational inverse(const Rational& x) { return Rational(1) / x; }
};

template <>
struct ScalarTraits<Fp> {
    static constexpr bool is_field = true;
    static constexpr RingKind kind = RingKind::PrimeField;
    static Fp make(long long v, const Ring& r) { return Fp(v, r.p); }
    static Fp parse(std::string_view text, const Ring& r);
    static std::string str(const Fp& x) { return std::to_string(x.value()); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
    static Fp inverse(const Fp& x) { return x.inverse_with(x.modulus()); }
};

template <class S>
bool is_zero(const S& x) { return ScalarTraits<S>::is_zero(x); }

template <class S>
std::string to_string(const S& x) { return ScalarTraits<S>::str(x); }

template <class S>
S make_scalar(long long v, const Ring& r) { return ScalarTraits<S>::make(v, r); }

template <class S>
void require_ring(const Ring& r) {
    if (r.kind != ScalarTraits<S>::kind)
        throw RingMismatch("scalar type does not match ring " + r.name());
}

// (-1)^e as a plain int
inline int sign_of(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace koszul

namespace Eigen {
template <>
struct NumTraits<koszul::Fp> : GenericNumTraits<koszul::Fp> {
    using Real = koszul::Fp;
    using NonInteger = koszul::Fp;
    using Nested = koszul::Fp;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 0,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
