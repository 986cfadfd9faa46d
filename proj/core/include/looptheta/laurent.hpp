#pragma once

#include "looptheta/numeric.hpp"

#include <map>
#include <vector>
#include <string>
#include <stdexcept>

namespace looptheta {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotIntegralUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global evaluation data: the circle radius q^{-1} and the working precision
// used whenever a transcendental function is applied.
struct Context {
    int n = 1;
    Rat q = Rat(2);
    unsigned precision = 50;

    Context() = default;
    Context(int n_, Rat q_, unsigned precision_ = 50)
        : n(n_), q(std::move(q_)), precision(precision_) {
        if (n < 1) throw std::invalid_argument("Context: n must be positive");
        if (q <= 1) throw std::invalid_argument("Context: q must be > 1");
        if (precision < 30) throw std::invalid_argument("Context: precision must be >= 30");
    }
};

enum class SubstMode { q_inv_t, q_inv_t_inv };

// Sparse Laurent polynomial with exact rational coefficients.
// Zero coefficients are never stored, so map equality is value equality.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    static LaurentPoly constant(const Rat& c);
    static LaurentPoly monomial(int deg, const Rat& c);

    const std::map<int, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(int deg) const;
    void set_coeff(int deg, const Rat& v);
    void add_coeff(int deg, const Rat& v);

    int deg_min() const; // throws on zero
    int deg_max() const;
    int bandwidth() const; // max |deg| over support, 0 for the zero polynomial
    bool is_monomial() const { return c_.size() == 1; }
    bool is_constant() const;
    bool is_integral() const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly scaled(const Rat& s) const;
    LaurentPoly shifted(int k) const; // multiply by t^k
    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }

    // t -> q^{-1} t (keeps degrees) or t -> q^{-1} t^{-1} (negates degrees);
    // the coefficient at degree i is scaled by q^{-i} in both modes.
    LaurentPoly substituted(const Rat& q, SubstMode mode) const;

    // Exact division; throws std::logic_error if o does not divide *this.
    LaurentPoly divided_exact(const LaurentPoly& o) const;

    Cplx eval(const Cplx& t) const;
    std::string to_string() const;

  private:
    std::map<int, Rat> c_;
};

// Laurent vector with n coordinates (each a Laurent polynomial).
struct LaurentVec {
    int n = 0;
    std::vector<LaurentPoly> c;

    LaurentVec() = default;
    explicit LaurentVec(int n_) : n(n_), c(n_) {}
    static LaurentVec basis(int n, int coord, int deg = 0, const Rat& v = Rat(1));

    bool is_zero() const;
    bool is_integral() const;
    int bandwidth() const;
    int deg_min() const; // over all coordinates; throws on zero
    int deg_max() const;

    LaurentVec operator+(const LaurentVec& o) const;
    LaurentVec operator-(const LaurentVec& o) const;
    LaurentVec scaled(const Rat& s) const;
    LaurentVec shifted(int k) const;
    bool operator==(const LaurentVec& o) const { return n == o.n && c == o.c; }
};

// Square matrix of Laurent polynomials; the loop-group element.
struct LaurentMat {
    int n = 0;
    std::vector<LaurentPoly> e; // row-major n*n

    LaurentMat() = default;
    explicit LaurentMat(int n_) : n(n_), e(n_ * n_) {}
    static LaurentMat identity(int n);
    static LaurentMat diag(const std::vector<LaurentPoly>& d);

    LaurentPoly& at(int i, int j) { return e[i * n + j]; }
    const LaurentPoly& at(int i, int j) const { return e[i * n + j]; }

    int bandwidth() const;
    bool is_identity() const;
    bool is_integral() const;
    LaurentMat transposed() const;
    bool operator==(const LaurentMat& o) const { return n == o.n && e == o.e; }
};

LaurentMat lp_mul(const LaurentMat& a, const LaurentMat& b);
LaurentMat lp_add(const LaurentMat& a, const LaurentMat& b);
LaurentVec lp_apply(const LaurentMat& a, const LaurentVec& v);        // column action a*v
LaurentVec lp_apply_row(const LaurentVec& v, const LaurentMat& a);    // row action v*a

// Exact determinant by fraction-free (Bareiss) elimination over the Laurent ring.
LaurentPoly lp_det(const LaurentMat& a);

// Exact inverse; requires det to be a unit c*t^k, else throws NotAUnit.
LaurentMat lp_inverse(const LaurentMat& a);

LaurentMat substitute(const LaurentMat& a, const Context& ctx, SubstMode mode);

// Membership in K (cpt): g(q^{-1}t) g(q^{-1}t^{-1})^T = 1, checked exactly.
// With sp=true additionally requires g J g^T = J for the standard symplectic J
// (matrix size must then be even).
bool is_in_K(const LaurentMat& g, const Context& ctx, bool sp = false);

// Exact symplectic-group membership: g J g^T = J.
bool is_symplectic(const LaurentMat& g);

// Entries evaluated at t = q^{-1} e^{i theta}.
std::vector<std::vector<Cplx>> evaluate(const LaurentMat& a, const Context& ctx,
                                        const Real& theta_angle);

} // namespace looptheta
