#include "corder/order.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "corder/abelian.hpp"
#include "corder/error.hpp"
#include "corder/freeprod.hpp"

namespace corder {

namespace {

long long pos_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

std::string pair_key(const Element& a, const Element& b) {
  return element_key(a) + "|" + element_key(b);
}

std::string triple_key(const Element& a, const Element& b, const Element& c) {
  return element_key(a) + "|" + element_key(b) + "|" + element_key(c);
}

// Orientation of three distinct comparable ranks: +1 iff they appear in
// increasing order up to cyclic rotation.
int rank_orientation(size_t ra, size_t rb, size_t rc) {
  if ((ra < rb && rb < rc) || (rb < rc && rc < ra) || (rc < ra && ra < rb))
    return 1;
  return -1;
}

long long finite_residue(const Element& e, long m, int rank) {
  if (const auto* av = e.get_if<AbelianVec>()) {
    if (static_cast<int>(av->v.size()) != rank)
      fail(ErrorKind::Mismatch, "element rank does not match the order");
    return av->t;
  }
  if (const auto* ti = e.get_if<TableIndex>()) {
    if (ti->idx < 0 || ti->idx >= m)
      fail(ErrorKind::Mismatch, "table index out of range for the order");
    return ti->idx;
  }
  fail(ErrorKind::Mismatch, "element variant unsupported by finite rotation");
}

const AbelianVec& as_vec(const Element& e) {
  const auto* av = e.get_if<AbelianVec>();
  if (!av) fail(ErrorKind::Mismatch, "abelian element expected");
  return *av;
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearOrderSpec

LinearOrderSpec LinearOrderSpec::make_translation(std::vector<AlgebraicReal> x) {
  for (const auto& xi : x)
    if (xi.is_zero())
      fail(ErrorKind::BadInput, "translation order: zero coordinate");
  if (x.size() >= 2) {
    // Full Q-linear independence of the coordinates; implies pairwise
    // irrational ratios and makes the position functional injective.
    std::map<unsigned long, size_t> idx;
    for (const auto& v : x)
      for (const auto& [d, q] : v.terms()) idx.emplace(d, 0);
    size_t i = 0;
    std::vector<unsigned long> basis;
    for (auto& [d, slot] : idx) {
      slot = i++;
      basis.push_back(d);
    }
    std::vector<std::vector<mpq_class>> m(
        x.size(), std::vector<mpq_class>(basis.size(), 0));
    for (size_t r = 0; r < x.size(); ++r)
      for (const auto& [d, q] : x[r].terms()) m[r][idx[d]] = q;
    size_t pivot = 0;
    for (size_t c = 0; c < basis.size() && pivot < x.size(); ++c) {
      size_t sel = pivot;
      while (sel < x.size() && m[sel][c] == 0) ++sel;
      if (sel == x.size()) continue;
      std::swap(m[sel], m[pivot]);
      for (size_t r = pivot + 1; r < x.size(); ++r) {
        if (m[r][c] == 0) continue;
        mpq_class f = m[r][c] / m[pivot][c];
        for (size_t cc = c; cc < basis.size(); ++cc)
          m[r][cc] -= f * m[pivot][cc];
      }
      ++pivot;
    }
    if (pivot < x.size())
      fail(ErrorKind::BadInput,
           "translation order: coordinates are rationally dependent");
  }
  return LinearOrderSpec(Translation{std::move(x)});
}

LinearOrderSpec LinearOrderSpec::make_lexicographic(int rank,
                                                    std::vector<int> signs) {
  if (rank < 0 || static_cast<int>(signs.size()) != rank)
    fail(ErrorKind::BadInput, "lexicographic order: rank/signs mismatch");
  for (int s : signs)
    if (s != 1 && s != -1)
      fail(ErrorKind::BadInput, "lexicographic order: signs must be +-1");
  return LinearOrderSpec(Lexicographic{rank, std::move(signs)});
}

LinearOrderSpec LinearOrderSpec::make_induced_cone(
    GroupPtr g, std::vector<Element> positives) {
  const auto* ft = g->get_if<FiniteTable>();
  if (!ft) fail(ErrorKind::BadInput, "induced cone requires a finite table");
  std::set<std::string> pos;
  for (const auto& p : positives) {
    g->check(p);
    if (g->is_identity(p))
      fail(ErrorKind::BadInput, "induced cone contains the identity");
    pos.insert(element_key(p));
  }
  for (int i = 0; i < ft->size; ++i) {
    Element e = table_elem(i);
    if (g->is_identity(e)) continue;
    bool in_p = pos.count(element_key(e)) > 0;
    bool in_n = pos.count(element_key(g->inverse(e))) > 0;
    if (in_p == in_n)
      fail(ErrorKind::BadInput, "induced cone is not a partition");
  }
  for (const auto& a : positives)
    for (const auto& b : positives) {
      Element ab = g->multiply(a, b);
      if (g->is_identity(ab) || !pos.count(element_key(ab)))
        fail(ErrorKind::BadInput, "induced cone is not closed under products");
    }
  return LinearOrderSpec(InducedCone{std::move(g), std::move(positives)});
}

int LinearOrderSpec::rank() const {
  if (const auto* t = get_if<Translation>()) return static_cast<int>(t->x.size());
  if (const auto* l = get_if<Lexicographic>()) return l->rank;
  return 0;
}

bool LinearOrderSpec::less(const IntVec& a, const IntVec& b) const {
  if (const auto* t = get_if<Translation>()) {
    if (a.size() != t->x.size() || b.size() != t->x.size())
      fail(ErrorKind::Mismatch, "vector rank does not match the linear order");
    AlgebraicReal diff;
    for (size_t i = 0; i < t->x.size(); ++i)
      diff += t->x[i] * mpq_class(static_cast<long>(b[i] - a[i]));
    return diff.sign() > 0;
  }
  if (const auto* l = get_if<Lexicographic>()) {
    if (static_cast<int>(a.size()) != l->rank ||
        static_cast<int>(b.size()) != l->rank)
      fail(ErrorKind::Mismatch, "vector rank does not match the linear order");
    for (int i = 0; i < l->rank; ++i) {
      long long d = l->signs[i] * (b[i] - a[i]);
      if (d != 0) return d > 0;
    }
    return false;
  }
  fail(ErrorKind::Unsupported, "vector comparison on an induced cone");
}

bool LinearOrderSpec::less_elem(const Group& g, const Element& a,
                                const Element& b) const {
  if (const auto* ic = get_if<InducedCone>()) {
    Element d = g.multiply(g.inverse(a), b);
    if (g.is_identity(d)) return false;
    std::string k = element_key(d);
    for (const auto& p : ic->positives)
      if (element_key(p) == k) return true;
    return false;
  }
  const auto* av = a.get_if<AbelianVec>();
  const auto* bv = b.get_if<AbelianVec>();
  if (!av || !bv) fail(ErrorKind::Mismatch, "abelian element expected");
  return less(av->v, bv->v);
}

// ---------------------------------------------------------------------------
// Automorphisms

AutDescriptor make_abelian_aut(GroupPtr g, IntMat u, long long unit,
                               IntVec hom) {
  const auto* ab = g->get_if<FgAbelian>();
  if (!ab) fail(ErrorKind::BadInput, "abelian automorphism on non-abelian group");
  int n = ab->rank;
  long m = ab->torsion;
  if (static_cast<int>(u.size()) != n)
    fail(ErrorKind::BadInput, "automorphism matrix size mismatch");
  for (const auto& row : u)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::BadInput, "automorphism matrix size mismatch");
  long long det = mat_det(u);
  if (det != 1 && det != -1)
    fail(ErrorKind::BadInput, "automorphism matrix determinant not +-1");
  if (m > 0) {
    if (std::gcd(pos_mod(unit, m), static_cast<long long>(m)) != 1)
      fail(ErrorKind::BadInput, "torsion unit not coprime to the modulus");
    if (hom.empty()) hom.assign(n, 0);
    if (static_cast<int>(hom.size()) != n)
      fail(ErrorKind::BadInput, "torsion twist length mismatch");
    unit = pos_mod(unit, m);
    for (auto& h : hom) h = pos_mod(h, m);
  } else {
    if (unit != 1 || !hom.empty())
      fail(ErrorKind::BadInput, "torsion twist on a torsion-free group");
  }
  return AutDescriptor{std::move(g), AbelianAut{std::move(u), unit, std::move(hom)}};
}

AutDescriptor make_table_aut(GroupPtr g, std::vector<int> perm) {
  const auto* ft = g->get_if<FiniteTable>();
  if (!ft) fail(ErrorKind::BadInput, "table automorphism on non-table group");
  int n = ft->size;
  if (static_cast<int>(perm.size()) != n)
    fail(ErrorKind::BadInput, "permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p])
      fail(ErrorKind::BadInput, "not a permutation");
    seen[p] = true;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (perm[ft->table[i][j]] != ft->table[perm[i]][perm[j]])
        fail(ErrorKind::BadInput, "permutation is not a homomorphism");
  return AutDescriptor{std::move(g), TableAut{std::move(perm)}};
}

Element aut_apply(const AutDescriptor& rho, const Element& e) {
  rho.group->check(e);
  if (const auto* aa = std::get_if<AbelianAut>(&rho.data)) {
    const auto& av = as_vec(e);
    const auto* ab = rho.group->get_if<FgAbelian>();
    IntVec v = mat_vec(aa->u, av.v);
    long long t = 0;
    if (ab->torsion > 0) {
      t = aa->unit * av.t;
      for (size_t i = 0; i < aa->hom.size(); ++i) t += aa->hom[i] * av.v[i];
      t = pos_mod(t, ab->torsion);
    }
    return abelian_elem(std::move(v), t);
  }
  const auto& ta = std::get<TableAut>(rho.data);
  return table_elem(ta.perm[e.get_if<TableIndex>()->idx]);
}

namespace {

long long mod_inverse(long long a, long long m) {
  long long t = 0, nt = 1, r = m, nr = pos_mod(a, m);
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) fail(ErrorKind::BadInput, "unit not invertible");
  return pos_mod(t, m);
}

}  // namespace

AutDescriptor aut_inverse(const AutDescriptor& rho) {
  if (const auto* aa = std::get_if<AbelianAut>(&rho.data)) {
    const auto* ab = rho.group->get_if<FgAbelian>();
    IntMat u_inv = unimodular_inverse(aa->u);
    long long unit_inv = 1;
    IntVec hom_inv;
    if (ab->torsion > 0) {
      long m = ab->torsion;
      unit_inv = mod_inverse(aa->unit, m);
      hom_inv.assign(ab->rank, 0);
      for (int j = 0; j < ab->rank; ++j) {
        long long w = 0;
        for (int i = 0; i < ab->rank; ++i) w += aa->hom[i] * u_inv[i][j];
        hom_inv[j] = pos_mod(-unit_inv * pos_mod(w, m), m);
      }
    }
    return make_abelian_aut(rho.group, std::move(u_inv), unit_inv,
                            std::move(hom_inv));
  }
  const auto& ta = std::get<TableAut>(rho.data);
  std::vector<int> inv(ta.perm.size());
  for (size_t i = 0; i < ta.perm.size(); ++i) inv[ta.perm[i]] = static_cast<int>(i);
  return make_table_aut(rho.group, std::move(inv));
}

AutDescriptor aut_compose(const AutDescriptor& rho, const AutDescriptor& sigma) {
  if (rho.group->key() != sigma.group->key())
    fail(ErrorKind::Mismatch, "automorphisms on different groups");
  if (const auto* ra = std::get_if<AbelianAut>(&rho.data)) {
    const auto& sa = std::get<AbelianAut>(sigma.data);
    const auto* ab = rho.group->get_if<FgAbelian>();
    IntMat u = mat_mul(ra->u, sa.u);
    long long unit = 1;
    IntVec hom;
    if (ab->torsion > 0) {
      long m = ab->torsion;
      unit = pos_mod(ra->unit * sa.unit, m);
      hom.assign(ab->rank, 0);
      for (int j = 0; j < ab->rank; ++j) {
        long long v = ra->unit * sa.hom[j];
        for (int i = 0; i < ab->rank; ++i) v += sa.u[i][j] * ra->hom[i];
        hom[j] = pos_mod(v, m);
      }
    }
    return make_abelian_aut(rho.group, std::move(u), unit, std::move(hom));
  }
  const auto& rt = std::get<TableAut>(rho.data);
  const auto& st = std::get<TableAut>(sigma.data);
  std::vector<int> perm(rt.perm.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = rt.perm[st.perm[i]];
  return make_table_aut(rho.group, std::move(perm));
}

// ---------------------------------------------------------------------------
// CircularOrderSpec factories

OrderPtr CircularOrderSpec::finite_rotation(long m, long k) {
  return finite_rotation_on(fg_abelian(0, m), m, k);
}

OrderPtr CircularOrderSpec::finite_rotation_on(GroupPtr g, long m, long k) {
  if (m < 1 || k < 0 || k >= m)
    fail(ErrorKind::BadInput, "finite rotation requires 0 <= k < m");
  if (std::gcd(k, m) != 1)
    fail(ErrorKind::BadInput, "finite rotation requires gcd(k, m) = 1");
  if (const auto* ab = g->get_if<FgAbelian>()) {
    if (ab->rank != 0 || std::max(ab->torsion, 1L) != std::max(m, 1L))
      fail(ErrorKind::Mismatch, "group does not match the rotation modulus");
  } else if (const auto* ft = g->get_if<FiniteTable>()) {
    if (ft->size != m)
      fail(ErrorKind::Mismatch, "group does not match the rotation modulus");
  } else {
    fail(ErrorKind::Mismatch, "finite rotation requires a finite group");
  }
  return OrderPtr(
      new CircularOrderSpec(std::move(g), FiniteRotationO{m, k}));
}

OrderPtr CircularOrderSpec::rotation(GroupPtr g, RotationParams p) {
  const auto* ab = g->get_if<FgAbelian>();
  if (!ab || ab->rank != p.rank || ab->torsion != p.m)
    fail(ErrorKind::Mismatch, "group does not match the rotation parameters");
  RotationParams checked =
      make_rotation_params(p.rank, p.m, std::move(p.theta), p.k);
  return OrderPtr(
      new CircularOrderSpec(std::move(g), RotationO{std::move(checked)}));
}

OrderPtr CircularOrderSpec::linear_wrap(GroupPtr g, LinearOrderSpec lin) {
  if (const auto* ic = lin.get_if<InducedCone>()) {
    if (ic->group->key() != g->key())
      fail(ErrorKind::Mismatch, "cone group does not match");
  } else {
    const auto* ab = g->get_if<FgAbelian>();
    if (!ab || ab->torsion != 0 || ab->rank != lin.rank())
      fail(ErrorKind::Mismatch,
           "linear wrap requires a torsion-free group of matching rank");
  }
  return OrderPtr(new CircularOrderSpec(std::move(g), LinearWrapO{std::move(lin)}));
}

OrderPtr CircularOrderSpec::intertwined(std::shared_ptr<const BlowdownData> d) {
  if (!d) fail(ErrorKind::BadInput, "missing blowdown data");
  GroupPtr g = d->ambient;
  return OrderPtr(new CircularOrderSpec(std::move(g), IntertwinedO{std::move(d)}));
}

OrderPtr CircularOrderSpec::lex_free_product(GroupPtr prod, OrderPtr cg,
                                             OrderPtr ch) {
  const auto* fp = prod->get_if<FreeProduct>();
  if (!fp) fail(ErrorKind::Mismatch, "lexicographic order requires a free product");
  if (cg->group()->key() != fp->left->key() ||
      ch->group()->key() != fp->right->key())
    fail(ErrorKind::Mismatch, "factor orders do not match the factors");
  return OrderPtr(new CircularOrderSpec(
      std::move(prod), LexFreeProductO{std::move(cg), std::move(ch)}));
}

OrderPtr CircularOrderSpec::explicit_table(GroupPtr g, ExplicitTableO t) {
  for (const auto& [k, v] : t.pair_values)
    if (v != 1 && v != -1)
      fail(ErrorKind::BadInput, "explicit table values must be +-1");
  for (const auto& [k, v] : t.triple_values)
    if (v != 1 && v != -1)
      fail(ErrorKind::BadInput, "explicit table values must be +-1");
  return OrderPtr(new CircularOrderSpec(std::move(g), std::move(t)));
}

OrderPtr CircularOrderSpec::point_recovered(GroupPtr g, RealizationMap m) {
  PointRecoveredO pr;
  std::set<std::string> positions;
  for (const auto& [e, p] : m.entries) {
    g->check(e);
    if (p < 0 || p >= 1)
      fail(ErrorKind::BadInput, "positions must lie in [0, 1)");
    if (!positions.insert(p.get_str()).second)
      fail(ErrorKind::BadInput, "duplicate circle position");
    if (!pr.pos.emplace(element_key(e), p).second)
      fail(ErrorKind::BadInput, "duplicate element in realization");
  }
  pr.map = std::move(m);
  return OrderPtr(new CircularOrderSpec(std::move(g), std::move(pr)));
}

OrderPtr CircularOrderSpec::aut_image(AutDescriptor rho_inv, OrderPtr inner) {
  if (rho_inv.group->key() != inner->group()->key())
    fail(ErrorKind::Mismatch, "automorphism group does not match the order");
  GroupPtr g = inner->group();
  return OrderPtr(new CircularOrderSpec(
      std::move(g),
      AutImageO{std::make_shared<const AutDescriptor>(std::move(rho_inv)),
                std::move(inner)}));
}

OrderPtr CircularOrderSpec::coset_wrap(GroupPtr g, CosetWrapO w) {
  if (!w.coset_of || !w.k_coord || !w.orbit_eval)
    fail(ErrorKind::BadInput, "incomplete coset data");
  return OrderPtr(new CircularOrderSpec(std::move(g), std::move(w)));
}

OrderPtr aut_act(const AutDescriptor& rho, OrderPtr c) {
  return CircularOrderSpec::aut_image(aut_inverse(rho), std::move(c));
}

// ---------------------------------------------------------------------------
// Evaluation

bool CircularOrderSpec::has_positions() const {
  return std::holds_alternative<FiniteRotationO>(data_) ||
         std::holds_alternative<RotationO>(data_) ||
         std::holds_alternative<PointRecoveredO>(data_);
}

AlgebraicReal CircularOrderSpec::position(const Element& e) const {
  group_->check(e);
  if (const auto* fr = get_if<FiniteRotationO>()) {
    long long res = finite_residue(e, fr->m, 0);
    return AlgebraicReal(mpq_class(static_cast<long>(pos_mod(res * fr->k, fr->m)), fr->m));
  }
  if (const auto* ro = get_if<RotationO>()) {
    const auto& p = ro->params;
    const auto& av = as_vec(e);
    AlgebraicReal sum;
    for (int i = 0; i < p.rank; ++i) sum += p.theta[i] * mpq_class(static_cast<long>(av.v[i]));
    if (p.m > 0) sum += AlgebraicReal(mpq_class(static_cast<long>(av.t * p.k), p.m));
    return sum.frac();
  }
  if (const auto* pr = get_if<PointRecoveredO>()) {
    auto it = pr->pos.find(element_key(e));
    if (it == pr->pos.end())
      fail(ErrorKind::Mismatch, "element not in the realization");
    return AlgebraicReal(it->second);
  }
  fail(ErrorKind::Unsupported, "order variant has no position map");
}

OrderValue CircularOrderSpec::eval(const Element& a, const Element& b,
                                   const Element& c) const {
  group_->check(a);
  group_->check(b);
  group_->check(c);
  if (element_eq(a, b) || element_eq(b, c) || element_eq(a, c)) return 0;

  if (const auto* fr = get_if<FiniteRotationO>()) {
    long m = fr->m;
    long long pa = pos_mod(finite_residue(a, m, 0) * fr->k, m);
    long long pb = pos_mod(finite_residue(b, m, 0) * fr->k, m);
    long long pc = pos_mod(finite_residue(c, m, 0) * fr->k, m);
    long long u = pos_mod(pb - pa, m), v = pos_mod(pc - pa, m);
    return u < v ? 1 : -1;
  }
  if (const auto* ro = get_if<RotationO>())
    return rotation_eval(ro->params, a, b, c);
  if (const auto* lw = get_if<LinearWrapO>()) {
    auto less = [&](const Element& x, const Element& y) {
      return lw->lin.less_elem(*group_, x, y);
    };
    int ra = (less(b, a) ? 1 : 0) + (less(c, a) ? 1 : 0);
    int rb = (less(a, b) ? 1 : 0) + (less(c, b) ? 1 : 0);
    int rc = (less(a, c) ? 1 : 0) + (less(b, c) ? 1 : 0);
    if (ra == rb || rb == rc || ra == rc)
      fail(ErrorKind::Internal, "linear order is not total on the triple");
    return rank_orientation(ra, rb, rc);
  }
  if (const auto* iw = get_if<IntertwinedO>())
    return intertwined_eval(*iw->data, a, b, c);
  if (const auto* lx = get_if<LexFreeProductO>())
    return lex_eval(*group_, *lx->cg, *lx->ch, a, b, c);
  if (const auto* et = get_if<ExplicitTableO>()) {
    if (!et->pair_values.empty()) {
      Element ia = group_->inverse(a);
      Element y = group_->multiply(ia, b);
      Element z = group_->multiply(ia, c);
      auto it = et->pair_values.find(pair_key(y, z));
      if (it != et->pair_values.end()) return it->second;
      it = et->pair_values.find(pair_key(z, y));
      if (it != et->pair_values.end()) return -it->second;
    }
    auto it = et->triple_values.find(triple_key(a, b, c));
    if (it != et->triple_values.end()) return it->second;
    fail(ErrorKind::BadInput, "order value not determined for the triple");
  }
  if (get_if<PointRecoveredO>()) {
    const auto& pr = std::get<PointRecoveredO>(data_);
    auto look = [&](const Element& e) {
      auto it = pr.pos.find(element_key(e));
      if (it == pr.pos.end())
        fail(ErrorKind::Mismatch, "element not in the realization");
      return it->second;
    };
    mpq_class pa = look(a), pb = look(b), pc = look(c);
    mpq_class u = pb - pa, v = pc - pa;
    if (u < 0) u += 1;
    if (v < 0) v += 1;
    return u < v ? 1 : -1;
  }
  if (const auto* ai = get_if<AutImageO>())
    return ai->inner->eval(aut_apply(*ai->rho_inv, a),
                           aut_apply(*ai->rho_inv, b),
                           aut_apply(*ai->rho_inv, c));
  const auto& cw = std::get<CosetWrapO>(data_);
  long long sa = cw.coset_of(a), sb = cw.coset_of(b), sc = cw.coset_of(c);
  if (sa != sb && sb != sc && sa != sc) return cw.orbit_eval(sa, sb, sc);
  auto less = [&](const Element& x, const Element& y) {
    return cw.stab_lin.less(cw.k_coord(x), cw.k_coord(y));
  };
  if (sa == sb && sb == sc) {
    int ra = (less(b, a) ? 1 : 0) + (less(c, a) ? 1 : 0);
    int rb = (less(a, b) ? 1 : 0) + (less(c, b) ? 1 : 0);
    int rc = (less(a, c) ? 1 : 0) + (less(b, c) ? 1 : 0);
    return rank_orientation(ra, rb, rc);
  }
  if (sa == sb) return less(a, b) ? 1 : -1;
  if (sb == sc) return less(b, c) ? 1 : -1;
  return less(c, a) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Sorted ranks of the sample under the order's position map, when it has
// one; nullopt otherwise.
std::optional<std::vector<size_t>> sample_ranks(
    const CircularOrderSpec& c, const std::vector<Element>& sample) {
  if (!c.has_positions()) return std::nullopt;
  std::vector<AlgebraicReal> pos;
  pos.reserve(sample.size());
  for (const auto& e : sample) pos.push_back(c.position(e));
  std::vector<size_t> idx(sample.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
    return compare(pos[i], pos[j]) < 0;
  });
  std::vector<size_t> rank(sample.size());
  for (size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = r;
  return rank;
}

}  // namespace

ValidationReport validate(const CircularOrderSpec& c,
                          const std::vector<Element>& sample,
                          size_t max_violations) {
  ValidationReport rep;
  const Group& g = *c.group();
  size_t n = sample.size();
  auto full = [&]() { return rep.violations.size() >= max_violations; };

  std::map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i) index.emplace(element_key(sample[i]), i);
  if (index.size() != n) fail(ErrorKind::BadInput, "sample has duplicates");

  auto at = [&](size_t i, size_t j, size_t k) { return (i * n + j) * n + k; };
  std::vector<signed char> V(n * n * n, 0);
  auto ranks = sample_ranks(c, sample);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        V[at(i, j, k)] =
            ranks ? static_cast<signed char>(
                        rank_orientation((*ranks)[i], (*ranks)[j], (*ranks)[k]))
                  : static_cast<signed char>(
                        c.eval(sample[i], sample[j], sample[k]));
      }

  // (DV): zero exactly on degenerate triples.
  for (size_t i = 0; i < n && !full(); ++i)
    for (size_t j = 0; j < n && !full(); ++j)
      for (size_t k = 0; k < n && !full(); ++k) {
        ++rep.checked_triples;
        bool degen = i == j || j == k || i == k;
        int v = degen ? c.eval(sample[i], sample[j], sample[k]) : V[at(i, j, k)];
        if ((v == 0) != degen)
          rep.violations.push_back(
              {AxiomKind::DV, {sample[i], sample[j], sample[k]}});
      }

  // (IC) and (AT) over the full permutation orbit of each combination.
  for (size_t i = 0; i < n && !full(); ++i)
    for (size_t j = i + 1; j < n && !full(); ++j)
      for (size_t k = j + 1; k < n && !full(); ++k) {
        int v = V[at(i, j, k)];
        rep.checked_triples += 5;
        if (V[at(j, k, i)] != v || V[at(k, i, j)] != v)
          rep.violations.push_back(
              {AxiomKind::IC, {sample[i], sample[j], sample[k]}});
        if (V[at(i, k, j)] != -v || V[at(k, j, i)] != -v ||
            V[at(j, i, k)] != -v)
          rep.violations.push_back(
              {AxiomKind::AT, {sample[i], sample[j], sample[k]}});
      }

  // (C): the alternating cocycle sum on every 4-subset.
  for (size_t i = 0; i < n && !full(); ++i)
    for (size_t j = i + 1; j < n && !full(); ++j)
      for (size_t k = j + 1; k < n && !full(); ++k)
        for (size_t l = k + 1; l < n; ++l) {
          ++rep.checked_quadruples;
          int s = V[at(j, k, l)] - V[at(i, k, l)] + V[at(i, j, l)] -
                  V[at(i, j, k)];
          if (s != 0) {
            rep.violations.push_back(
                {AxiomKind::C, {sample[i], sample[j], sample[k], sample[l]}});
            if (full()) break;
          }
        }

  // (H): left translates that stay inside the sample.
  std::vector<std::vector<long>> tl(n, std::vector<long>(n, -1));
  for (size_t gi = 0; gi < n; ++gi)
    for (size_t i = 0; i < n; ++i) {
      auto it = index.find(element_key(g.multiply(sample[gi], sample[i])));
      if (it != index.end()) tl[gi][i] = static_cast<long>(it->second);
    }
  for (size_t gi = 0; gi < n && !full(); ++gi)
    for (size_t i = 0; i < n && !full(); ++i)
      for (size_t j = i + 1; j < n && !full(); ++j)
        for (size_t k = j + 1; k < n; ++k) {
          long ti = tl[gi][i], tj = tl[gi][j], tk = tl[gi][k];
          if (ti < 0 || tj < 0 || tk < 0) {
            ++rep.skipped_homogeneity;
            continue;
          }
          ++rep.checked_triples;
          if (V[at(ti, tj, tk)] != V[at(i, j, k)]) {
            rep.violations.push_back(
                {AxiomKind::H,
                 {sample[gi], sample[i], sample[j], sample[k]}});
            if (full()) break;
          }
        }
  return rep;
}

// ---------------------------------------------------------------------------
// Cuts

bool CutOrder::less(const Element& x, const Element& y) const {
  return c->eval(y, p, x) == 1;
}

CutOrder cut_order_at(OrderPtr c, Element p) {
  c->group()->check(p);
  return CutOrder{std::move(c), std::move(p)};
}

std::variant<OrderPtr, CutIncompatibility> cocycle_from_cuts(
    GroupPtr g, const std::vector<Element>& sample,
    const std::function<bool(const Element& p, const Element& x,
                             const Element& y)>& less_at) {
  size_t n = sample.size();
  // Antisymmetry of each comparator.
  for (size_t p = 0; p < n; ++p)
    for (size_t x = 0; x < n; ++x)
      for (size_t y = x + 1; y < n; ++y) {
        if (p == x || p == y) continue;
        bool a = less_at(sample[p], sample[x], sample[y]);
        bool b = less_at(sample[p], sample[y], sample[x]);
        if (a == b)
          return CutIncompatibility{
              {sample[x], sample[y], sample[p], sample[p]}};
      }
  auto value = [&](size_t x, size_t y, size_t z) {
    return less_at(sample[y], sample[z], sample[x]) ? 1 : -1;
  };
  // Cyclic consistency across basepoints.
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        if (x == y || y == z || x == z) continue;
        if (value(x, y, z) != value(y, z, x))
          return CutIncompatibility{
              {sample[x], sample[z], sample[y], sample[z]}};
      }
  // Cocycle consistency: comparators at p and q may disagree on (x, y)
  // only as dictated by how p, q separate x from y.
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q)
      for (size_t x = 0; x < n; ++x)
        for (size_t y = x + 1; y < n; ++y) {
          if (p == q || p == x || p == y || q == x || q == y) continue;
          int s = value(q, x, y) - value(p, x, y) + value(p, q, y) -
                  value(p, q, x);
          if (s != 0)
            return CutIncompatibility{
                {sample[x], sample[y], sample[p], sample[q]}};
        }
  CircularOrderSpec::ExplicitTableO table;
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        if (x == y || y == z || x == z) continue;
        table.triple_values[triple_key(sample[x], sample[y], sample[z])] =
            value(x, y, z);
      }
  return CircularOrderSpec::explicit_table(std::move(g), std::move(table));
}

// ---------------------------------------------------------------------------
// Linearity, bi-invariance, agreement

LinearOnResult is_linear_on(const CircularOrderSpec& c,
                            const std::vector<Element>& sample) {
  const Group& g = *c.group();
  Element e = g.identity();
  bool has_identity = false;
  for (const auto& s : sample)
    if (g.is_identity(s)) has_identity = true;
  if (!has_identity)
    fail(ErrorKind::BadInput, "linearity sample must contain the identity");

  LinearOnResult res;
  std::set<std::string> cone_keys;
  for (const auto& s : sample) {
    if (g.is_identity(s)) continue;
    if (c.eval(g.inverse(s), e, s) == 1) {
      res.cone.push_back(s);
      cone_keys.insert(element_key(s));
    }
  }
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < sample.size(); ++i)
    index.emplace(element_key(sample[i]), i);
  for (const auto& x : res.cone)
    for (const auto& y : res.cone) {
      Element xy = g.multiply(x, y);
      auto it = index.find(element_key(xy));
      if (it == index.end()) {
        ++res.skipped;
        continue;
      }
      if (!cone_keys.count(element_key(xy))) {
        res.linear = false;
        res.g = x;
        res.h = y;
        return res;
      }
    }
  res.linear = true;
  return res;
}

std::optional<BiInvarianceWitness> bi_invariance_check(
    const CircularOrderSpec& c, const std::vector<Element>& sample) {
  const Group& g = *c.group();
  size_t n = sample.size();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i) index.emplace(element_key(sample[i]), i);
  std::vector<std::vector<long>> tr(n, std::vector<long>(n, -1));
  for (size_t gi = 0; gi < n; ++gi)
    for (size_t i = 0; i < n; ++i) {
      auto it = index.find(element_key(g.multiply(sample[i], sample[gi])));
      if (it != index.end()) tr[gi][i] = static_cast<long>(it->second);
    }
  for (size_t gi = 0; gi < n; ++gi)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) {
          long ti = tr[gi][i], tj = tr[gi][j], tk = tr[gi][k];
          if (ti < 0 || tj < 0 || tk < 0) continue;
          int v = c.eval(sample[i], sample[j], sample[k]);
          int w = c.eval(sample[ti], sample[tj], sample[tk]);
          if (v != w)
            return BiInvarianceWitness{
                sample[gi], {sample[i], sample[j], sample[k]}};
        }
  return std::nullopt;
}

std::optional<std::array<Element, 3>> agreement(
    const CircularOrderSpec& c1, const CircularOrderSpec& c2,
    const std::vector<Element>& sample) {
  if (c1.group()->key() != c2.group()->key())
    fail(ErrorKind::Mismatch, "orders live on different groups");
  size_t n = sample.size();
  auto r1 = sample_ranks(c1, sample);
  auto r2 = sample_ranks(c2, sample);
  auto val = [&](const std::optional<std::vector<size_t>>& r,
                 const CircularOrderSpec& c, size_t i, size_t j, size_t k) {
    if (r) return rank_orientation((*r)[i], (*r)[j], (*r)[k]);
    return static_cast<int>(c.eval(sample[i], sample[j], sample[k]));
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (val(r1, c1, i, j, k) != val(r2, c2, i, j, k))
          return std::array<Element, 3>{sample[i], sample[j], sample[k]};
      }
  return std::nullopt;
}

}  // namespace corder
