#include "corder/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "corder/error.hpp"

namespace corder {

namespace {

long long mod_nonneg(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

int compare_elements(const Element& a, const Element& b) {
  if (a.data().index() != b.data().index())
    return a.data().index() < b.data().index() ? -1 : 1;
  if (const auto* ta = a.get_if<TableIndex>()) {
    const auto* tb = b.get_if<TableIndex>();
    return (ta->idx > tb->idx) - (ta->idx < tb->idx);
  }
  if (const auto* va = a.get_if<AbelianVec>()) {
    const auto* vb = b.get_if<AbelianVec>();
    if (va->v.size() != vb->v.size())
      return va->v.size() < vb->v.size() ? -1 : 1;
    for (size_t i = 0; i < va->v.size(); ++i)
      if (va->v[i] != vb->v[i]) return va->v[i] < vb->v[i] ? -1 : 1;
    return (va->t > vb->t) - (va->t < vb->t);
  }
  if (const auto* fa = a.get_if<FreeWord>()) {
    const auto* fb = b.get_if<FreeWord>();
    size_t n = std::min(fa->letters.size(), fb->letters.size());
    for (size_t i = 0; i < n; ++i) {
      if (fa->letters[i].first != fb->letters[i].first)
        return fa->letters[i].first < fb->letters[i].first ? -1 : 1;
      if (fa->letters[i].second != fb->letters[i].second)
        return fa->letters[i].second < fb->letters[i].second ? -1 : 1;
    }
    if (fa->letters.size() != fb->letters.size())
      return fa->letters.size() < fb->letters.size() ? -1 : 1;
    return 0;
  }
  const auto* pa = a.get_if<ProdWord>();
  const auto* pb = b.get_if<ProdWord>();
  size_t n = std::min(pa->letters.size(), pb->letters.size());
  for (size_t i = 0; i < n; ++i) {
    if (pa->letters[i].side != pb->letters[i].side)
      return pa->letters[i].side == Side::Left ? -1 : 1;
    int c = compare_elements(pa->letters[i].elem, pb->letters[i].elem);
    if (c != 0) return c;
  }
  if (pa->letters.size() != pb->letters.size())
    return pa->letters.size() < pb->letters.size() ? -1 : 1;
  return 0;
}

std::string element_key(const Element& e) {
  std::ostringstream os;
  if (const auto* t = e.get_if<TableIndex>()) {
    os << '#' << t->idx;
  } else if (const auto* v = e.get_if<AbelianVec>()) {
    os << 'v';
    for (size_t i = 0; i < v->v.size(); ++i) os << (i ? "," : "") << v->v[i];
    os << ';' << v->t;
  } else if (const auto* f = e.get_if<FreeWord>()) {
    os << 'f';
    for (const auto& [g, x] : f->letters) os << '(' << g << '^' << x << ')';
  } else {
    const auto* p = e.get_if<ProdWord>();
    os << '[';
    for (const auto& l : p->letters)
      os << (l.side == Side::Left ? 'L' : 'R') << ':' << element_key(l.elem)
         << '|';
    os << ']';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Descriptor validation

namespace {

void validate_table(const FiniteTable& ft) {
  int n = ft.size;
  if (n <= 0 || static_cast<int>(ft.table.size()) != n)
    fail(ErrorKind::InvalidDescriptor, "finite table: bad size");
  for (const auto& row : ft.table) {
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::InvalidDescriptor, "finite table: ragged row");
    for (int x : row)
      if (x < 0 || x >= n)
        fail(ErrorKind::InvalidDescriptor, "finite table: entry out of range");
  }
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (int j = 0; j < n; ++j) {
      if (row_seen[ft.table[i][j]] || col_seen[ft.table[j][i]])
        fail(ErrorKind::InvalidDescriptor, "finite table: not a quasigroup");
      row_seen[ft.table[i][j]] = true;
      col_seen[ft.table[j][i]] = true;
    }
  }
  if (ft.identity < 0 || ft.identity >= n)
    fail(ErrorKind::InvalidDescriptor, "finite table: bad identity");
  for (int j = 0; j < n; ++j)
    if (ft.table[ft.identity][j] != j || ft.table[j][ft.identity] != j)
      fail(ErrorKind::InvalidDescriptor, "finite table: identity broken");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (ft.table[ft.table[i][j]][k] != ft.table[i][ft.table[j][k]])
          fail(ErrorKind::InvalidDescriptor, "finite table: not associative");
  if (static_cast<int>(ft.inverses.size()) != n)
    fail(ErrorKind::InvalidDescriptor, "finite table: bad inverse list");
  for (int i = 0; i < n; ++i)
    if (ft.table[i][ft.inverses[i]] != ft.identity)
      fail(ErrorKind::InvalidDescriptor, "finite table: inverses inconsistent");
}

}  // namespace

GroupPtr Group::make(Descriptor d) {
  if (const auto* ft = std::get_if<FiniteTable>(&d)) {
    validate_table(*ft);
  } else if (const auto* ab = std::get_if<FgAbelian>(&d)) {
    if (ab->rank < 0 || ab->torsion < 0)
      fail(ErrorKind::InvalidDescriptor, "fg_abelian: negative rank/torsion");
  } else if (const auto* fr = std::get_if<FreeGroup>(&d)) {
    if (fr->rank < 1) fail(ErrorKind::InvalidDescriptor, "free: rank < 1");
  } else {
    const auto* fp = std::get_if<FreeProduct>(&d);
    if (!fp->left || !fp->right)
      fail(ErrorKind::InvalidDescriptor, "free_product: missing factor");
  }
  return GroupPtr(new Group(std::move(d)));
}

// ---------------------------------------------------------------------------
// Element construction and checking

Element Group::identity() const {
  if (const auto* ft = get_if<FiniteTable>())
    return Element(TableIndex{ft->identity});
  if (const auto* ab = get_if<FgAbelian>())
    return Element(AbelianVec{std::vector<long long>(ab->rank, 0), 0});
  if (get_if<FreeGroup>()) return Element(FreeWord{});
  return Element(ProdWord{});
}

bool Group::is_identity(const Element& e) const {
  return element_eq(e, identity());
}

void Group::check(const Element& e) const {
  if (const auto* ft = get_if<FiniteTable>()) {
    const auto* t = e.get_if<TableIndex>();
    if (!t || t->idx < 0 || t->idx >= ft->size)
      fail(ErrorKind::Mismatch, "element does not belong to finite table group");
    return;
  }
  if (const auto* ab = get_if<FgAbelian>()) {
    const auto* v = e.get_if<AbelianVec>();
    if (!v || static_cast<int>(v->v.size()) != ab->rank)
      fail(ErrorKind::Mismatch, "element does not belong to abelian group");
    if (ab->torsion == 0) {
      if (v->t != 0) fail(ErrorKind::Mismatch, "torsion residue in torsion-free group");
    } else if (v->t < 0 || v->t >= ab->torsion) {
      fail(ErrorKind::Mismatch, "torsion residue out of range");
    }
    return;
  }
  if (const auto* fr = get_if<FreeGroup>()) {
    const auto* w = e.get_if<FreeWord>();
    if (!w) fail(ErrorKind::Mismatch, "element does not belong to free group");
    for (size_t i = 0; i < w->letters.size(); ++i) {
      auto [g, x] = w->letters[i];
      if (g < 0 || g >= fr->rank || x == 0)
        fail(ErrorKind::Mismatch, "free word letter out of range or trivial");
      if (i > 0 && w->letters[i - 1].first == g)
        fail(ErrorKind::Mismatch, "free word not reduced");
    }
    return;
  }
  const auto* fp = get_if<FreeProduct>();
  const auto* w = e.get_if<ProdWord>();
  if (!w) fail(ErrorKind::Mismatch, "element does not belong to free product");
  for (size_t i = 0; i < w->letters.size(); ++i) {
    const auto& l = w->letters[i];
    const Group& factor = l.side == Side::Left ? *fp->left : *fp->right;
    factor.check(l.elem);
    if (factor.is_identity(l.elem))
      fail(ErrorKind::Mismatch, "free product word has identity letter");
    if (i > 0 && w->letters[i - 1].side == l.side)
      fail(ErrorKind::Mismatch, "free product word not alternating");
  }
}

// ---------------------------------------------------------------------------
// Group law

Element Group::multiply(const Element& a, const Element& b) const {
  check(a);
  check(b);
  if (const auto* ft = get_if<FiniteTable>()) {
    return Element(
        TableIndex{ft->table[a.get_if<TableIndex>()->idx]
                            [b.get_if<TableIndex>()->idx]});
  }
  if (const auto* ab = get_if<FgAbelian>()) {
    const auto& va = *a.get_if<AbelianVec>();
    const auto& vb = *b.get_if<AbelianVec>();
    AbelianVec out;
    out.v.resize(ab->rank);
    for (int i = 0; i < ab->rank; ++i) out.v[i] = va.v[i] + vb.v[i];
    out.t = ab->torsion == 0 ? 0 : mod_nonneg(va.t + vb.t, ab->torsion);
    return Element(std::move(out));
  }
  if (get_if<FreeGroup>()) {
    FreeWord out = *a.get_if<FreeWord>();
    for (auto [g, x] : b.get_if<FreeWord>()->letters) {
      if (!out.letters.empty() && out.letters.back().first == g) {
        out.letters.back().second += x;
        if (out.letters.back().second == 0) out.letters.pop_back();
      } else {
        out.letters.emplace_back(g, x);
      }
    }
    return Element(std::move(out));
  }
  const auto* fp = get_if<FreeProduct>();
  ProdWord out = *a.get_if<ProdWord>();
  for (const auto& l : b.get_if<ProdWord>()->letters) {
    ProdLetter cur = l;
    if (out.letters.empty() || out.letters.back().side != cur.side) {
      out.letters.push_back(std::move(cur));
      continue;
    }
    const Group& factor = cur.side == Side::Left ? *fp->left : *fp->right;
    Element merged = factor.multiply(out.letters.back().elem, cur.elem);
    out.letters.pop_back();
    if (!factor.is_identity(merged))
      out.letters.push_back(ProdLetter{cur.side, std::move(merged)});
  }
  return Element(std::move(out));
}

Element Group::inverse(const Element& a) const {
  check(a);
  if (const auto* ft = get_if<FiniteTable>())
    return Element(TableIndex{ft->inverses[a.get_if<TableIndex>()->idx]});
  if (const auto* ab = get_if<FgAbelian>()) {
    AbelianVec out = *a.get_if<AbelianVec>();
    for (auto& x : out.v) x = -x;
    out.t = ab->torsion == 0 ? 0 : mod_nonneg(-out.t, ab->torsion);
    return Element(std::move(out));
  }
  if (get_if<FreeGroup>()) {
    FreeWord out;
    const auto& in = a.get_if<FreeWord>()->letters;
    for (auto it = in.rbegin(); it != in.rend(); ++it)
      out.letters.emplace_back(it->first, -it->second);
    return Element(std::move(out));
  }
  const auto* fp = get_if<FreeProduct>();
  ProdWord out;
  const auto& in = a.get_if<ProdWord>()->letters;
  for (auto it = in.rbegin(); it != in.rend(); ++it) {
    const Group& factor = it->side == Side::Left ? *fp->left : *fp->right;
    out.letters.push_back(ProdLetter{it->side, factor.inverse(it->elem)});
  }
  return Element(std::move(out));
}

Element Group::power(const Element& a, long long n) const {
  if (n < 0) return power(inverse(a), -n);
  if (const auto* ab = get_if<FgAbelian>()) {
    const auto& va = *a.get_if<AbelianVec>();
    AbelianVec out;
    out.v.resize(ab->rank);
    for (int i = 0; i < ab->rank; ++i) out.v[i] = va.v[i] * n;
    out.t = ab->torsion == 0 ? 0 : mod_nonneg(va.t * n, ab->torsion);
    return Element(std::move(out));
  }
  Element acc = identity();
  Element base = a;
  while (n > 0) {
    if (n & 1) acc = multiply(acc, base);
    n >>= 1;
    if (n) base = multiply(base, base);
  }
  return acc;
}

Element Group::normalize(const Element& raw) const {
  if (const auto* ab = get_if<FgAbelian>()) {
    const auto* v = raw.get_if<AbelianVec>();
    if (!v || static_cast<int>(v->v.size()) != ab->rank)
      fail(ErrorKind::Mismatch, "normalize: wrong abelian shape");
    AbelianVec out = *v;
    out.t = ab->torsion == 0 ? 0 : mod_nonneg(out.t, ab->torsion);
    return Element(std::move(out));
  }
  if (get_if<FreeGroup>()) {
    const auto* w = raw.get_if<FreeWord>();
    if (!w) fail(ErrorKind::Mismatch, "normalize: wrong free-group shape");
    Element acc = identity();
    for (auto [g, x] : w->letters) {
      if (x == 0) continue;
      acc = multiply(acc, Element(FreeWord{{{g, x}}}));
    }
    return acc;
  }
  if (const auto* fp = get_if<FreeProduct>()) {
    const auto* w = raw.get_if<ProdWord>();
    if (!w) fail(ErrorKind::Mismatch, "normalize: wrong free-product shape");
    Element acc = identity();
    for (const auto& l : w->letters) {
      const Group& factor = l.side == Side::Left ? *fp->left : *fp->right;
      Element nl = factor.normalize(l.elem);
      if (factor.is_identity(nl)) continue;
      acc = multiply(acc, Element(ProdWord{{ProdLetter{l.side, std::move(nl)}}}));
    }
    return acc;
  }
  check(raw);
  return raw;
}

// ---------------------------------------------------------------------------
// Generators and balls

std::vector<Element> Group::generators() const {
  std::vector<Element> gens;
  if (const auto* ft = get_if<FiniteTable>()) {
    for (int i = 0; i < ft->size; ++i)
      if (i != ft->identity) gens.push_back(Element(TableIndex{i}));
    return gens;
  }
  if (const auto* ab = get_if<FgAbelian>()) {
    for (int i = 0; i < ab->rank; ++i) {
      AbelianVec e{std::vector<long long>(ab->rank, 0), 0};
      e.v[i] = 1;
      gens.push_back(Element(std::move(e)));
    }
    if (ab->torsion >= 2)
      gens.push_back(Element(AbelianVec{std::vector<long long>(ab->rank, 0), 1}));
    return gens;
  }
  if (const auto* fr = get_if<FreeGroup>()) {
    for (int i = 0; i < fr->rank; ++i)
      gens.push_back(Element(FreeWord{{{i, 1}}}));
    return gens;
  }
  const auto* fp = get_if<FreeProduct>();
  for (const auto& g : fp->left->generators())
    gens.push_back(Element(ProdWord{{ProdLetter{Side::Left, g}}}));
  for (const auto& g : fp->right->generators())
    gens.push_back(Element(ProdWord{{ProdLetter{Side::Right, g}}}));
  return gens;
}

std::vector<Element> Group::ball(int radius) const {
  if (radius < 0) fail(ErrorKind::BadInput, "ball: negative radius");
  std::vector<Element> steps;
  for (const auto& g : generators()) {
    steps.push_back(g);
    Element gi = inverse(g);
    steps.push_back(std::move(gi));
  }
  std::vector<Element> result{identity()};
  std::set<std::string> seen{element_key(result[0])};
  std::vector<Element> frontier = result;
  for (int r = 0; r < radius; ++r) {
    std::vector<Element> next;
    for (const auto& e : frontier) {
      for (const auto& s : steps) {
        Element p = multiply(e, s);
        std::string k = element_key(p);
        if (seen.insert(std::move(k)).second) next.push_back(std::move(p));
      }
    }
    std::sort(next.begin(), next.end(), [](const Element& a, const Element& b) {
      return compare_elements(a, b) < 0;
    });
    result.insert(result.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return result;
}

bool Group::torsion_free() const {
  if (const auto* ft = get_if<FiniteTable>()) return ft->size == 1;
  if (const auto* ab = get_if<FgAbelian>()) return ab->torsion <= 1;
  if (get_if<FreeGroup>()) return true;
  const auto* fp = get_if<FreeProduct>();
  return fp->left->torsion_free() && fp->right->torsion_free();
}

std::string Group::key() const {
  std::ostringstream os;
  if (const auto* ft = get_if<FiniteTable>()) {
    os << "T" << ft->size << "[";
    for (const auto& row : ft->table)
      for (int x : row) os << x << ",";
    os << "]";
  } else if (const auto* ab = get_if<FgAbelian>()) {
    os << "A(" << ab->rank << "," << ab->torsion << ")";
  } else if (const auto* fr = get_if<FreeGroup>()) {
    os << "F(" << fr->rank << ")";
  } else {
    const auto* fp = get_if<FreeProduct>();
    os << "P(" << fp->left->key() << "*" << fp->right->key() << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Torsion obstruction

namespace {

int table_element_order(const FiniteTable& ft, int x) {
  int acc = x, order = 1;
  while (acc != ft.identity) {
    acc = ft.table[acc][x];
    ++order;
  }
  return order;
}

std::vector<int> table_subgroup(const FiniteTable& ft, int a, int b) {
  std::set<int> sub{ft.identity, a, b};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(sub.begin(), sub.end());
    for (int x : cur)
      for (int y : cur)
        if (sub.insert(ft.table[x][y]).second) grew = true;
  }
  return std::vector<int>(sub.begin(), sub.end());
}

}  // namespace

TorsionResult torsion_cyclic_check(const Group& g) {
  if (const auto* ab = g.get_if<FgAbelian>())
    return CyclicTorsion{ab->torsion <= 1 ? 1 : ab->torsion};
  if (const auto* ft = g.get_if<FiniteTable>()) {
    for (int i = 0; i < ft->size; ++i)
      if (table_element_order(*ft, i) == ft->size)
        return CyclicTorsion{ft->size};
    for (int i = 0; i < ft->size; ++i) {
      if (i == ft->identity) continue;
      for (int j = i + 1; j < ft->size; ++j) {
        if (j == ft->identity) continue;
        auto sub = table_subgroup(*ft, i, j);
        bool cyclic = false;
        for (int x : sub)
          if (table_element_order(*ft, x) == static_cast<int>(sub.size())) {
            cyclic = true;
            break;
          }
        if (!cyclic)
          return NonCyclicWitness{Element(TableIndex{i}), Element(TableIndex{j})};
      }
    }
    // A finite group in which every 2-generated subgroup is cyclic is
    // cyclic, so this point is unreachable for valid tables.
    fail(ErrorKind::Internal, "torsion check: inconsistent table");
  }
  if (g.torsion_free()) return CyclicTorsion{1};
  fail(ErrorKind::Unsupported,
       "torsion subgroup not computable for this variant");
}

// ---------------------------------------------------------------------------
// Convenience constructors

GroupPtr fg_abelian(int rank, long torsion) {
  return Group::make(FgAbelian{rank, torsion});
}

GroupPtr free_group(int rank) { return Group::make(FreeGroup{rank}); }

GroupPtr free_product(GroupPtr left, GroupPtr right) {
  return Group::make(FreeProduct{std::move(left), std::move(right)});
}

GroupPtr finite_table(std::vector<std::vector<int>> table) {
  FiniteTable ft;
  ft.size = static_cast<int>(table.size());
  ft.table = std::move(table);
  // Derive identity and inverses before full validation.
  ft.identity = -1;
  for (int e = 0; e < ft.size; ++e) {
    bool ok = true;
    for (int j = 0; j < ft.size && ok; ++j)
      ok = static_cast<int>(ft.table[e].size()) == ft.size &&
           static_cast<int>(ft.table[j].size()) == ft.size &&
           ft.table[e][j] == j && ft.table[j][e] == j;
    if (ok) {
      ft.identity = e;
      break;
    }
  }
  if (ft.identity < 0)
    fail(ErrorKind::InvalidDescriptor, "finite table: no identity");
  ft.inverses.assign(ft.size, -1);
  for (int i = 0; i < ft.size; ++i)
    for (int j = 0; j < ft.size; ++j)
      if (ft.table[i][j] == ft.identity) ft.inverses[i] = j;
  return Group::make(std::move(ft));
}

GroupPtr cyclic_table(int m) {
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = (i + j) % m;
  return finite_table(std::move(t));
}

Element abelian_elem(std::vector<long long> v, long long t) {
  return Element(AbelianVec{std::move(v), t});
}

Element table_elem(int idx) { return Element(TableIndex{idx}); }

Element free_word(std::vector<std::pair<int, long long>> letters) {
  return Element(FreeWord{std::move(letters)});
}

Element prod_word(std::vector<ProdLetter> letters) {
  return Element(ProdWord{std::move(letters)});
}

}  // namespace corder
