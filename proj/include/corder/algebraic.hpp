#ifndef CORDER_ALGEBRAIC_HPP
#define CORDER_ALGEBRAIC_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace corder {

// Exact real number of the form sum_d q_d * sqrt(d) with the d distinct
// squarefree positive integers and q_d nonzero rationals.  The slot d = 1
// carries the rational part.  Square roots of distinct squarefree integers
// are linearly independent over Q, so the representation is canonical:
// two values are equal iff their term maps are identical, and the zero
// test is purely symbolic.
class AlgebraicReal {
 public:
  AlgebraicReal() = default;
  explicit AlgebraicReal(const mpq_class& rational);
  explicit AlgebraicReal(long rational);

  // coeff * sqrt(d) for any positive d; square factors of d are pulled out.
  static AlgebraicReal sqrt_term(unsigned long d, const mpq_class& coeff);

  const std::map<unsigned long, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  // Only valid when is_rational().
  mpq_class rational_value() const;

  AlgebraicReal operator+(const AlgebraicReal& o) const;
  AlgebraicReal operator-(const AlgebraicReal& o) const;
  AlgebraicReal operator-() const;
  AlgebraicReal operator*(const mpq_class& q) const;
  AlgebraicReal& operator+=(const AlgebraicReal& o);
  AlgebraicReal& operator-=(const AlgebraicReal& o);

  bool operator==(const AlgebraicReal& o) const { return terms_ == o.terms_; }

  // Exact sign: 0 iff the term map is empty (symbolic zero), otherwise
  // determined by interval evaluation at doubling precision.  Terminates
  // because a nonempty term map denotes a nonzero real.
  int sign() const;

  mpz_class floor() const;
  // this - floor(this), in [0, 1).
  AlgebraicReal frac() const;

  double approx() const;

  std::string str() const;

 private:
  void add_term(unsigned long d, const mpq_class& coeff);

  std::map<unsigned long, mpq_class> terms_;
};

// sign(a - b)
int compare(const AlgebraicReal& a, const AlgebraicReal& b);

// Whether a/b is rational, i.e. the term maps are proportional over Q.
// Requires b nonzero.
bool rational_ratio(const AlgebraicReal& a, const AlgebraicReal& b);

// Rank over Q of the given values together with the constant 1, computed
// symbolically from the sqrt-basis coefficient matrix.  Returns a vanishing
// rational combination (c_0 * 1 + sum c_i * v_i = 0, not all zero) through
// `dependency` when the family {1, v_1, ..., v_n} is dependent, in which
// case the function returns false.
bool independent_with_one(const std::vector<AlgebraicReal>& values,
                          std::vector<mpq_class>* dependency);

}  // namespace corder

#endif
