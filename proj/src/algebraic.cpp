#include "corder/algebraic.hpp"

#include <cmath>
#include <sstream>

#include "corder/error.hpp"

namespace corder {

namespace {

// Largest square divisor pulled out: d = s^2 * sf with sf squarefree.
void square_split(unsigned long d, unsigned long* s, unsigned long* sf) {
  *s = 1;
  *sf = 1;
  for (unsigned long p = 2; p * p <= d; ++p) {
    unsigned int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    for (unsigned int i = 0; i + 1 < e; i += 2) *s *= p;
    if (e % 2 == 1) *sf *= p;
  }
  *sf *= d;
}

// floor(2^prec * sqrt(d)) for integer d >= 0.
mpz_class sqrt_floor_scaled(unsigned long d, unsigned long prec) {
  mpz_class scaled = mpz_class(d) << (2 * prec);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return root;
}

}  // namespace

AlgebraicReal::AlgebraicReal(const mpq_class& rational) {
  add_term(1, rational);
}

AlgebraicReal::AlgebraicReal(long rational) {
  add_term(1, mpq_class(rational));
}

AlgebraicReal AlgebraicReal::sqrt_term(unsigned long d, const mpq_class& coeff) {
  if (d == 0) fail(ErrorKind::BadInput, "sqrt_term: radicand must be positive");
  unsigned long s, sf;
  square_split(d, &s, &sf);
  AlgebraicReal r;
  r.add_term(sf, coeff * mpq_class(s));
  return r;
}

bool AlgebraicReal::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

mpq_class AlgebraicReal::rational_value() const {
  if (!is_rational()) fail(ErrorKind::Internal, "rational_value on irrational");
  return terms_.empty() ? mpq_class(0) : terms_.begin()->second;
}

void AlgebraicReal::add_term(unsigned long d, const mpq_class& raw) {
  mpq_class coeff = raw;
  coeff.canonicalize();  // callers may pass p/q with common factors
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    if (coeff != 0) terms_.emplace(d, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

AlgebraicReal AlgebraicReal::operator+(const AlgebraicReal& o) const {
  AlgebraicReal r = *this;
  r += o;
  return r;
}

AlgebraicReal AlgebraicReal::operator-(const AlgebraicReal& o) const {
  AlgebraicReal r = *this;
  r -= o;
  return r;
}

AlgebraicReal AlgebraicReal::operator-() const {
  AlgebraicReal r;
  for (const auto& [d, q] : terms_) r.terms_.emplace(d, -q);
  return r;
}

AlgebraicReal AlgebraicReal::operator*(const mpq_class& q) const {
  AlgebraicReal r;
  if (q == 0) return r;
  for (const auto& [d, c] : terms_) r.terms_.emplace(d, c * q);
  return r;
}

AlgebraicReal& AlgebraicReal::operator+=(const AlgebraicReal& o) {
  for (const auto& [d, q] : o.terms_) add_term(d, q);
  return *this;
}

AlgebraicReal& AlgebraicReal::operator-=(const AlgebraicReal& o) {
  for (const auto& [d, q] : o.terms_) add_term(d, -q);
  return *this;
}

int AlgebraicReal::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational()) return sgn(terms_.begin()->second);
  for (unsigned long prec = 32;; prec *= 2) {
    // Interval [lo, hi] for the value at precision 2^-prec per term.
    mpq_class lo = 0, hi = 0;
    mpz_class denom = mpz_class(1) << prec;
    for (const auto& [d, q] : terms_) {
      mpq_class root_lo, root_hi;
      if (d == 1) {
        lo += q;
        hi += q;
        continue;
      }
      mpz_class r = sqrt_floor_scaled(d, prec);
      root_lo = mpq_class(r) / mpq_class(denom);
      root_hi = mpq_class(r + 1) / mpq_class(denom);
      root_lo.canonicalize();
      root_hi.canonicalize();
      if (q > 0) {
        lo += q * root_lo;
        hi += q * root_hi;
      } else {
        lo += q * root_hi;
        hi += q * root_lo;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    // Interval still straddles 0; refine.  A nonzero value escapes
    // eventually since the width shrinks geometrically.
  }
}

mpz_class AlgebraicReal::floor() const {
  if (is_rational()) {
    mpq_class q = rational_value();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
  }
  // The value is irrational, so some precision separates it from every
  // integer.  Reuse the sign machinery against candidate floors.
  double a = approx();
  mpz_class cand(static_cast<long>(std::floor(a)));
  // Correct the double estimate exactly; the error is tiny so a short
  // walk suffices.
  while ((*this - AlgebraicReal(mpq_class(cand))).sign() < 0) --cand;
  while ((*this - AlgebraicReal(mpq_class(cand + 1))).sign() >= 0) ++cand;
  return cand;
}

AlgebraicReal AlgebraicReal::frac() const {
  return *this - AlgebraicReal(mpq_class(floor()));
}

double AlgebraicReal::approx() const {
  double v = 0;
  for (const auto& [d, q] : terms_)
    v += q.get_d() * (d == 1 ? 1.0 : std::sqrt(static_cast<double>(d)));
  return v;
}

std::string AlgebraicReal::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, q] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << q.get_str();
    if (d != 1) os << "*sqrt(" << d << ")";
  }
  return os.str();
}

int compare(const AlgebraicReal& a, const AlgebraicReal& b) {
  return (a - b).sign();
}

bool rational_ratio(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (b.is_zero()) fail(ErrorKind::BadInput, "rational_ratio: zero denominator");
  if (a.is_zero()) return true;
  if (a.terms().size() != b.terms().size()) return false;
  mpq_class ratio;
  bool have = false;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    mpq_class r = ia->second / ib->second;
    if (!have) {
      ratio = r;
      have = true;
    } else if (r != ratio) {
      return false;
    }
  }
  return true;
}

bool independent_with_one(const std::vector<AlgebraicReal>& values,
                          std::vector<mpq_class>* dependency) {
  // Rows: the constant 1 followed by each value, expressed over the union
  // of sqrt-basis elements.  Dependence is detected by Gaussian elimination
  // while tracking the row combination.
  std::vector<unsigned long> basis;
  {
    std::map<unsigned long, size_t> idx;
    idx[1] = 0;
    for (const auto& v : values)
      for (const auto& [d, q] : v.terms()) idx.emplace(d, 0);
    size_t i = 0;
    for (auto& [d, slot] : idx) {
      slot = i++;
      basis.push_back(d);
    }
  }
  const size_t cols = basis.size();
  const size_t rows = values.size() + 1;
  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols, 0));
  std::vector<std::vector<mpq_class>> comb(
      rows, std::vector<mpq_class>(rows, 0));
  auto col_of = [&](unsigned long d) {
    return static_cast<size_t>(
        std::lower_bound(basis.begin(), basis.end(), d) - basis.begin());
  };
  m[0][col_of(1)] = 1;
  for (size_t r = 1; r < rows; ++r)
    for (const auto& [d, q] : values[r - 1].terms()) m[r][col_of(d)] = q;
  for (size_t r = 0; r < rows; ++r) comb[r][r] = 1;

  size_t pivot_row = 0;
  for (size_t c = 0; c < cols && pivot_row < rows; ++c) {
    size_t sel = pivot_row;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[pivot_row]);
    std::swap(comb[sel], comb[pivot_row]);
    for (size_t r = pivot_row + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[pivot_row][c];
      for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[pivot_row][cc];
      for (size_t cc = 0; cc < rows; ++cc)
        comb[r][cc] -= f * comb[pivot_row][cc];
    }
    ++pivot_row;
  }
  if (pivot_row == rows) return true;
  if (dependency) {
    // Any zero row beyond the pivot count records a vanishing combination.
    *dependency = comb[pivot_row];
  }
  return false;
}

}  // namespace corder
