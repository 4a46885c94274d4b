#include "corder/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "corder/error.hpp"

namespace corder {

namespace {

long long pos_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

unsigned long next_prime(unsigned long p) {
  do {
    ++p;
  } while (!is_prime(p));
  return p;
}

unsigned long max_radicand(const AlgebraicReal& x) {
  unsigned long m = 1;
  for (const auto& [d, q] : x.terms()) m = std::max(m, d);
  return m;
}

AlgebraicReal rotation_position(const RotationParams& p, const Element& e) {
  const auto* av = e.get_if<AbelianVec>();
  if (!av || static_cast<int>(av->v.size()) != p.rank)
    fail(ErrorKind::Mismatch, "element does not match the rotation parameters");
  AlgebraicReal sum;
  for (int i = 0; i < p.rank; ++i) sum += p.theta[i] * mpq_class(static_cast<long>(av->v[i]));
  if (p.m > 0) sum += AlgebraicReal(mpq_class(static_cast<long>(av->t * p.k), p.m));
  return sum.frac();
}

}  // namespace

RotationParams make_rotation_params(int rank, long m,
                                    std::vector<AlgebraicReal> theta, long k) {
  if (rank < 0 || m < 0)
    fail(ErrorKind::BadInput, "rotation parameters: negative rank or torsion");
  if (static_cast<int>(theta.size()) != rank)
    fail(ErrorKind::BadInput, "rotation parameters: theta length mismatch");
  if (m == 0) {
    if (k != 0) fail(ErrorKind::BadInput, "torsion-free rotation requires k = 0");
  } else {
    if (k < 0 || k >= m || std::gcd(k, m) != 1)
      fail(ErrorKind::BadInput, "rotation parameters: gcd(k, m) must be 1");
  }
  for (const auto& t : theta)
    if (t.sign() <= 0 || (t - AlgebraicReal(1L)).sign() >= 0)
      fail(ErrorKind::BadInput, "rotation angles must lie in (0, 1)");
  std::vector<mpq_class> dep;
  if (!independent_with_one(theta, &dep)) {
    std::ostringstream os;
    os << "rotation angles rationally dependent with 1; combination:";
    for (const auto& q : dep) os << " " << q.get_str();
    fail(ErrorKind::BadInput, os.str());
  }
  return RotationParams{rank, m, std::move(theta), k};
}

OrderValue rotation_eval(const RotationParams& p, const Element& a,
                         const Element& b, const Element& c) {
  if (element_eq(a, b) || element_eq(b, c) || element_eq(a, c)) return 0;
  AlgebraicReal pa = rotation_position(p, a);
  AlgebraicReal u = (rotation_position(p, b) - pa).frac();
  AlgebraicReal v = (rotation_position(p, c) - pa).frac();
  int cmp = compare(u, v);
  if (cmp == 0 || u.is_zero() || v.is_zero())
    fail(ErrorKind::Internal, "rotation positions collide on distinct elements");
  return cmp < 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Blowdown data

std::shared_ptr<const BlowdownData> make_blowdown(GroupPtr ambient,
                                                  IntMat k_basis,
                                                  LinearOrderSpec lin,
                                                  OrderPtr quotient_order) {
  const auto* ab = ambient->get_if<FgAbelian>();
  if (!ab) fail(ErrorKind::BadInput, "blowdown requires an f.g. abelian group");
  int n = ab->rank;
  long m = ab->torsion;
  if (static_cast<int>(k_basis.size()) != n)
    fail(ErrorKind::BadInput, "kernel basis row count mismatch");
  int r = n == 0 ? 0 : static_cast<int>(k_basis[0].size());
  for (const auto& row : k_basis)
    if (static_cast<int>(row.size()) != r)
      fail(ErrorKind::BadInput, "kernel basis is ragged");
  if (r < 1 || r > n)
    fail(ErrorKind::BadInput, "kernel rank must be between 1 and the ambient rank");
  if (lin.get_if<InducedCone>())
    fail(ErrorKind::BadInput, "kernel order must be a vector-space order");
  if (lin.rank() != r)
    fail(ErrorKind::BadInput, "kernel order rank mismatch");

  auto d = std::make_shared<BlowdownData>();
  d->ambient = ambient;
  d->n = n;
  d->m = m;
  d->k_basis = k_basis;
  d->r = r;
  d->lin = std::move(lin);

  SmithResult snf = smith_normal_form(k_basis);
  d->u = snf.u;
  d->v = snf.v;
  d->u_inv = unimodular_inverse(snf.u);
  d->s.resize(r);
  for (int i = 0; i < r; ++i) {
    d->s[i] = snf.s[i][i];
    if (d->s[i] == 0)
      fail(ErrorKind::BadInput, "kernel basis columns are dependent");
  }

  for (int i = 0; i < r; ++i)
    if (d->s[i] > 1) d->moduli.push_back(d->s[i]);
  if (m > 1) d->moduli.push_back(m);
  d->big_m = 1;
  for (long long mod : d->moduli) d->big_m *= mod;
  for (size_t i = 0; i < d->moduli.size(); ++i)
    for (size_t j = i + 1; j < d->moduli.size(); ++j)
      if (std::gcd(d->moduli[i], d->moduli[j]) != 1)
        fail(ErrorKind::BadInput,
             "quotient torsion is not cyclic; no circular order exists");
  d->crt_basis.resize(d->moduli.size());
  for (size_t i = 0; i < d->moduli.size(); ++i) {
    long long rest = d->big_m / d->moduli[i];
    long long inv = 1;
    for (long long cand = 0; cand < d->moduli[i]; ++cand)
      if (pos_mod(rest * cand, d->moduli[i]) == 1) {
        inv = cand;
        break;
      }
    d->crt_basis[i] = pos_mod(rest * inv, d->big_m);
  }

  d->quotient = fg_abelian(n - r, d->big_m > 1 ? d->big_m : 0);
  if (!quotient_order)
    fail(ErrorKind::BadInput, "missing quotient order");
  if (quotient_order->group()->key() != d->quotient->key())
    fail(ErrorKind::Mismatch,
         "quotient order group does not match the computed quotient");
  d->quotient_order = std::move(quotient_order);
  return d;
}

OrderPtr intertwined_order(GroupPtr ambient, IntMat k_basis,
                           LinearOrderSpec lin, OrderPtr quotient_order) {
  return CircularOrderSpec::intertwined(make_blowdown(
      std::move(ambient), std::move(k_basis), std::move(lin),
      std::move(quotient_order)));
}

Element blowdown_sigma(const BlowdownData& d, const Element& a) {
  d.ambient->check(a);
  const auto* av = a.get_if<AbelianVec>();
  IntVec y = mat_vec(d.u, av->v);
  IntVec w(y.begin() + d.r, y.end());
  long long tq = 0;
  size_t mi = 0;
  for (int i = 0; i < d.r; ++i)
    if (d.s[i] > 1) tq += d.crt_basis[mi++] * pos_mod(y[i], d.s[i]);
  if (d.m > 1) tq += d.crt_basis[mi++] * pos_mod(av->t, d.m);
  return abelian_elem(std::move(w), d.big_m > 1 ? pos_mod(tq, d.big_m) : 0);
}

IntVec blowdown_k_coord(const BlowdownData& d, const Element& a) {
  const auto* av = a.get_if<AbelianVec>();
  Element q = blowdown_sigma(d, a);
  const auto* qv = q.get_if<AbelianVec>();
  // Canonical coset representative: minimal nonnegative torsion lifts,
  // free coordinates copied.
  IntVec y_rep(d.n, 0);
  for (int i = 0; i < d.r; ++i)
    if (d.s[i] > 1) y_rep[i] = pos_mod(qv->t, d.s[i]);
  for (int j = 0; j < d.n - d.r; ++j) y_rep[d.r + j] = qv->v[j];
  IntVec v_rep = mat_vec(d.u_inv, y_rep);
  IntVec diff(d.n);
  for (int i = 0; i < d.n; ++i) diff[i] = av->v[i] - v_rep[i];
  IntVec ud = mat_vec(d.u, diff);
  IntVec zp(d.r);
  for (int i = 0; i < d.r; ++i) {
    if (ud[i] % d.s[i] != 0)
      fail(ErrorKind::Internal, "coset representative is inconsistent");
    zp[i] = ud[i] / d.s[i];
  }
  for (int i = d.r; i < d.n; ++i)
    if (ud[i] != 0)
      fail(ErrorKind::Internal, "coset representative is inconsistent");
  return mat_vec(d.v, zp);
}

OrderValue intertwined_eval(const BlowdownData& d, const Element& a,
                            const Element& b, const Element& c) {
  if (element_eq(a, b) || element_eq(b, c) || element_eq(a, c)) return 0;
  Element qa = blowdown_sigma(d, a);
  Element qb = blowdown_sigma(d, b);
  Element qc = blowdown_sigma(d, c);
  bool ab = element_eq(qa, qb), bc = element_eq(qb, qc), ac = element_eq(qa, qc);
  if (!ab && !bc && !ac) return d.quotient_order->eval(qa, qb, qc);
  auto less = [&](const Element& x, const Element& y) {
    return d.lin.less(blowdown_k_coord(d, x), blowdown_k_coord(d, y));
  };
  if (ab && bc) {
    int ra = (less(b, a) ? 1 : 0) + (less(c, a) ? 1 : 0);
    int rb = (less(a, b) ? 1 : 0) + (less(c, b) ? 1 : 0);
    int rc = (less(a, c) ? 1 : 0) + (less(b, c) ? 1 : 0);
    if ((ra < rb && rb < rc) || (rb < rc && rc < ra) || (rc < ra && ra < rb))
      return 1;
    return -1;
  }
  if (ab) return less(a, b) ? 1 : -1;
  if (bc) return less(b, c) ? 1 : -1;
  return less(c, a) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Enumeration of finite cyclic orders

std::vector<OrderPtr> enumerate_cyclic_orders(long m) {
  if (m < 1) fail(ErrorKind::BadInput, "modulus must be positive");
  std::vector<OrderPtr> out;
  if (m == 1) {
    out.push_back(CircularOrderSpec::finite_rotation(1, 0));
    return out;
  }
  for (long k = 1; k < m; ++k)
    if (std::gcd(k, m) == 1)
      out.push_back(CircularOrderSpec::finite_rotation(m, k));
  return out;
}

// ---------------------------------------------------------------------------
// Density

std::optional<RotationParams> density_search(const CircularOrderSpec& c,
                                             const std::vector<Element>& sample,
                                             int budget) {
  if (const auto* ro = c.get_if<CircularOrderSpec::RotationO>())
    return ro->params;
  const auto* iw = c.get_if<CircularOrderSpec::IntertwinedO>();
  if (!iw)
    fail(ErrorKind::Unsupported, "density search needs a rotation or intertwined order");
  const BlowdownData& d = *iw->data;
  const auto* tr = d.lin.get_if<Translation>();
  if (!tr)
    fail(ErrorKind::Unsupported, "density search needs a translation kernel order");

  // Kernel direction xhat with k_basis^T . xhat = x, via the normal matrix.
  IntMat bt(d.r, IntVec(d.n));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.r; ++j) bt[j][i] = d.k_basis[i][j];
  IntMat gram = mat_mul(bt, d.k_basis);
  long long det = mat_det(gram);
  if (det == 0) fail(ErrorKind::Internal, "kernel basis has singular gram matrix");
  // Adjugate of the gram matrix (exact rational inverse up to 1/det).
  std::vector<AlgebraicReal> ginv_x(d.r);
  for (int i = 0; i < d.r; ++i) {
    for (int j = 0; j < d.r; ++j) {
      IntMat minor;
      for (int rr = 0; rr < d.r; ++rr) {
        if (rr == j) continue;
        IntVec row;
        for (int cc = 0; cc < d.r; ++cc)
          if (cc != i) row.push_back(gram[rr][cc]);
        minor.push_back(std::move(row));
      }
      long long cof = d.r == 1 ? 1 : mat_det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      ginv_x[i] += tr->x[j] * mpq_class(static_cast<long>(cof), static_cast<long>(det));
    }
  }
  std::vector<AlgebraicReal> xhat(d.n);
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.r; ++j)
      xhat[i] += ginv_x[j] * mpq_class(static_cast<long>(d.k_basis[i][j]));

  // Base positions of the generator images in the quotient.
  std::vector<AlgebraicReal> base(d.n);
  for (int i = 0; i < d.n; ++i) {
    IntVec e(d.n, 0);
    e[i] = 1;
    base[i] = d.quotient_order->position(blowdown_sigma(d, abelian_elem(e, 0)));
  }
  long k = 0;
  if (d.m > 0) {
    AlgebraicReal pt = d.quotient_order->position(
        blowdown_sigma(d, abelian_elem(IntVec(d.n, 0), 1)));
    if (!pt.is_rational())
      fail(ErrorKind::Internal, "torsion generator has irrational position");
    mpq_class q = pt.rational_value() * d.m;
    if (q.get_den() != 1)
      fail(ErrorKind::Internal, "torsion position is not a multiple of 1/m");
    k = static_cast<long>(q.get_num().get_si());
  }

  unsigned long used = 1;
  for (const auto& v : base) used = std::max(used, max_radicand(v));
  for (const auto& v : xhat) used = std::max(used, max_radicand(v));
  std::vector<unsigned long> primes(d.n);
  unsigned long p = used;
  for (int i = 0; i < d.n; ++i) primes[i] = p = next_prime(p);

  for (int t = 1; t <= budget; ++t) {
    mpq_class lam(mpz_class(1), mpz_class(1) << t);
    mpq_class eps(mpz_class(1), mpz_class(1) << (t + 8));
    std::vector<AlgebraicReal> theta(d.n);
    for (int i = 0; i < d.n; ++i)
      theta[i] = (base[i] + xhat[i] * lam +
                  AlgebraicReal::sqrt_term(primes[i], eps))
                     .frac();
    RotationParams params = make_rotation_params(d.n, d.m, theta, k);
    OrderPtr cand = CircularOrderSpec::rotation(d.ambient, params);
    if (!agreement(c, *cand, sample)) return params;
  }
  return std::nullopt;
}

std::optional<RotationParams> distinct_agreeing_rotation(
    const RotationParams& p, GroupPtr g, const std::vector<Element>& sample,
    int budget) {
  if (p.rank < 1)
    fail(ErrorKind::Unsupported, "perturbation requires positive rank");
  OrderPtr original = CircularOrderSpec::rotation(g, p);
  unsigned long used = 1;
  for (const auto& t : p.theta) used = std::max(used, max_radicand(t));
  unsigned long prime = next_prime(used);
  for (int t = 1; t <= budget; ++t) {
    mpq_class eps(mpz_class(1), mpz_class(1) << (t + 8));
    std::vector<AlgebraicReal> theta = p.theta;
    theta[0] = (theta[0] + AlgebraicReal::sqrt_term(prime, eps)).frac();
    RotationParams cand = make_rotation_params(p.rank, p.m, theta, p.k);
    OrderPtr co = CircularOrderSpec::rotation(g, cand);
    if (!agreement(*original, *co, sample)) return cand;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Archimedean witnesses

namespace {

// True iff g and h are both powers of a common element of Z^n x Z/m.
bool common_power(const FgAbelian& ab, const AbelianVec& g, const AbelianVec& h) {
  auto zero = [](const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
  };
  bool gz = zero(g.v), hz = zero(h.v);
  if (gz && hz) return true;  // both in the cyclic torsion part
  if (gz != hz) return false;
  for (size_t i = 0; i < g.v.size(); ++i)
    for (size_t j = i + 1; j < g.v.size(); ++j)
      if (g.v[i] * h.v[j] != g.v[j] * h.v[i]) return false;
  // Parallel: g = alpha w, h = beta w with w primitive.
  long long content = 0;
  for (long long x : g.v) content = std::gcd(content, x);
  IntVec w(g.v.size());
  for (size_t i = 0; i < g.v.size(); ++i) w[i] = g.v[i] / content;
  size_t pivot = 0;
  while (w[pivot] == 0) ++pivot;
  long long alpha = g.v[pivot] / w[pivot];
  if (h.v[pivot] % w[pivot] != 0) return false;
  long long beta = h.v[pivot] / w[pivot];
  for (size_t i = 0; i < w.size(); ++i)
    if (h.v[i] != beta * w[i]) return false;
  if (ab.torsion == 0) return true;
  for (long long s = 0; s < ab.torsion; ++s)
    if (pos_mod(alpha * s, ab.torsion) == g.t &&
        pos_mod(beta * s, ab.torsion) == h.t)
      return true;
  return false;
}

}  // namespace

std::optional<long> archimedean_witness(const CircularOrderSpec& c,
                                        const Element& g, const Element& h,
                                        long N) {
  const Group& grp = *c.group();
  grp.check(g);
  grp.check(h);
  if (grp.is_identity(g) || grp.is_identity(h))
    fail(ErrorKind::BadInput, "elements must be nonidentity");
  const auto* ab = grp.get_if<FgAbelian>();
  if (!ab)
    fail(ErrorKind::Unsupported, "archimedean witness supports abelian groups");
  if (common_power(*ab, *g.get_if<AbelianVec>(), *h.get_if<AbelianVec>()))
    fail(ErrorKind::BadInput, "elements are powers of a common element");
  Element e = grp.identity();
  OrderValue base = c.eval(e, g, h);
  for (long n = 1; n <= N; ++n) {
    if (c.eval(e, grp.power(g, n), h) != base) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const CircularOrderSpec& c) {
  if (c.get_if<CircularOrderSpec::RotationO>())
    return Classification{OrderClass::Min, {}};
  const auto* iw = c.get_if<CircularOrderSpec::IntertwinedO>();
  if (!iw)
    fail(ErrorKind::Unsupported, "classification covers rotation and intertwined orders");
  const BlowdownData& d = *iw->data;
  Classification res;
  res.kernel_hnf = hermite_column_form(d.k_basis);
  res.kind = d.r == d.n ? OrderClass::Fin : OrderClass::Blowdown;
  return res;
}

}  // namespace corder
