#pragma once

// Working-precision backends. Requests of at most 64 bits run on long double
// (64-bit significand on x86); wider requests run on MPFR under a process-wide
// lock, since Boost keeps the MPFR default precision in a global.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <mutex>

namespace zetakit::detail {

using mp_real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;
using mp_rational = boost::multiprecision::mpq_rational;

inline constexpr int kLongDoubleBits = 64;

inline unsigned bits_to_digits10(int bits) { return static_cast<unsigned>(bits * 0.30103) + 2; }

class MpScope {
public:
    explicit MpScope(int bits) : lock_(mutex()), saved_(mp_real::default_precision()) {
        mp_real::default_precision(bits_to_digits10(bits));
    }
    ~MpScope() { mp_real::default_precision(saved_); }
    MpScope(const MpScope&) = delete;
    MpScope& operator=(const MpScope&) = delete;

private:
    static std::recursive_mutex& mutex() {
        static std::recursive_mutex m;
        return m;
    }
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned saved_;
};

template <class R>
R pi() {
    return boost::math::constants::pi<R>();
}

template <class R>
R euler_gamma() {
    return boost::math::constants::euler<R>();
}

/// Unit roundoff of the working type.
template <class R>
R epsilon() {
    if constexpr (std::is_same_v<R, long double>) {
        return std::numeric_limits<long double>::epsilon();
    } else {
        using std::ldexp;
        return ldexp(R(1), -static_cast<int>(R::default_precision() * 3.3219));
    }
}

template <class R>
R from_rational(const mp_rational& q) {
    if constexpr (std::is_same_v<R, long double>) {
        boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>, boost::multiprecision::et_off> v(q);
        return v.template convert_to<long double>();
    } else {
        return R(q);
    }
}

template <class R>
long double to_ld(const R& x) {
    if constexpr (std::is_same_v<R, long double>) {
        return x;
    } else {
        return x.template convert_to<long double>();
    }
}

}  // namespace zetakit::detail
