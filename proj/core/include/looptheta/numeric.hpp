#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>

#include <stdexcept>
#include <string>

namespace looptheta {

namespace mp = boost::multiprecision;

// Exact tier: all ring/lattice algebra stays rational until an exponential
// or square root is taken.
using Int = mp::mpz_int;
using Rat = mp::mpq_rational;

// Float tier: MPFR with runtime-selected working precision (decimal digits).
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Cplx = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<0>>, mp::et_off>;

inline void set_working_precision(unsigned digits10) {
    if (digits10 < 30)
        throw std::invalid_argument("working precision must be >= 30 digits");
    Real::default_precision(digits10);
    mp::mpfr_float::default_precision(digits10);
}

inline unsigned working_precision() { return Real::default_precision(); }

inline Real to_real(const Rat& q) { return Real(q); }

inline Real pi_real() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

inline Cplx cplx_i() { return Cplx(Real(0), Real(1)); }

// exp(i*phi) without going through complex exp
inline Cplx unit_phase(const Real& phi) { return Cplx(cos(phi), sin(phi)); }

// Parse "p/q" or plain integer/decimal strings into an exact rational.
Rat parse_rational(const std::string& s);
std::string rational_to_string(const Rat& q);

} // namespace looptheta
