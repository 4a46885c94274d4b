#ifndef CORDER_ORDER_HPP
#define CORDER_ORDER_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "corder/algebraic.hpp"
#include "corder/group.hpp"
#include "corder/intmat.hpp"

namespace corder {

// Order values are -1, 0, +1; 0 exactly on degenerate triples.
using OrderValue = int;

class CircularOrderSpec;
using OrderPtr = std::shared_ptr<const CircularOrderSpec>;

// ---------------------------------------------------------------------------
// Linear orders

struct Translation {
  std::vector<AlgebraicReal> x;
};

struct Lexicographic {
  int rank = 0;
  std::vector<int> signs;  // +-1 per coordinate
};

struct InducedCone {
  GroupPtr group;
  std::vector<Element> positives;
};

class LinearOrderSpec {
 public:
  using Data = std::variant<Translation, Lexicographic, InducedCone>;

  // Validates: entries nonzero and Q-linearly independent (which implies
  // the pairwise-irrational-ratio requirement and makes a . x injective).
  static LinearOrderSpec make_translation(std::vector<AlgebraicReal> x);
  static LinearOrderSpec make_lexicographic(int rank, std::vector<int> signs);
  static LinearOrderSpec make_induced_cone(GroupPtr g,
                                           std::vector<Element> positives);

  // Rank-0 lexicographic order (empty domain); placeholder value.
  LinearOrderSpec() : data_(Lexicographic{}) {}

  const Data& data() const { return data_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&data_);
  }

  int rank() const;
  bool less(const IntVec& a, const IntVec& b) const;
  bool less_elem(const Group& g, const Element& a, const Element& b) const;

 private:
  explicit LinearOrderSpec(Data d) : data_(std::move(d)) {}
  Data data_;
};

// ---------------------------------------------------------------------------
// Rotation orders: pos(a) = frac(sum a_i theta_i + a_t k / m).

struct RotationParams {
  int rank = 0;
  long m = 0;  // 0 = torsion-free
  std::vector<AlgebraicReal> theta;
  long k = 0;  // gcd(k, m) = 1 when m > 0
};

// ---------------------------------------------------------------------------
// Blowdown (intertwined) orders on Z^n x Z/m: a linear order on the kernel
// K intertwined with a circular order on the cyclic quotient.

struct BlowdownData {
  GroupPtr ambient;
  int n = 0;
  long m = 0;
  IntMat k_basis;  // n x r, full column rank
  int r = 0;
  LinearOrderSpec lin;
  OrderPtr quotient_order;
  GroupPtr quotient;  // FgAbelian(n - r, M)
  // Smith data for k_basis: s = u * k_basis * v.
  IntMat u, v, u_inv;
  IntVec s;
  // Torsion of the quotient, combined by CRT into Z/M.
  std::vector<long long> moduli;     // the s_i > 1, then ambient m if > 1
  std::vector<long long> crt_basis;  // e_i = 1 mod m_i, 0 mod others
  long long big_m = 1;
};

// ---------------------------------------------------------------------------
// Realization maps: elements pinned to exact dyadic circle positions.

struct RealizationMap {
  std::vector<std::pair<Element, mpq_class>> entries;
};

// ---------------------------------------------------------------------------
// Automorphisms

struct AbelianAut {
  IntMat u;            // rank x rank, det +-1
  long long unit = 1;  // unit mod m
  IntVec hom;          // Z^n -> Z/m twist
};

struct TableAut {
  std::vector<int> perm;
};

struct AutDescriptor {
  GroupPtr group;
  std::variant<AbelianAut, TableAut> data;
};

AutDescriptor make_abelian_aut(GroupPtr g, IntMat u, long long unit = 1,
                               IntVec hom = {});
AutDescriptor make_table_aut(GroupPtr g, std::vector<int> perm);
AutDescriptor aut_inverse(const AutDescriptor& rho);
AutDescriptor aut_compose(const AutDescriptor& rho, const AutDescriptor& sigma);
Element aut_apply(const AutDescriptor& rho, const Element& e);

// ---------------------------------------------------------------------------
// Circular order specifications

class CircularOrderSpec : public std::enable_shared_from_this<CircularOrderSpec> {
 public:
  struct FiniteRotationO {
    long m = 1;
    long k = 0;
  };
  struct RotationO {
    RotationParams params;
  };
  struct LinearWrapO {
    LinearOrderSpec lin;
  };
  struct IntertwinedO {
    std::shared_ptr<const BlowdownData> data;
  };
  struct LexFreeProductO {
    OrderPtr cg, ch;
  };
  struct ExplicitTableO {
    // pair_values["a|b"] = c(e, a, b) for nonidentity a != b.
    std::map<std::string, int> pair_values;
    // Fallback for sample-restricted tables: canonical triple -> value.
    std::map<std::string, int> triple_values;
  };
  struct PointRecoveredO {
    RealizationMap map;
    std::map<std::string, mpq_class> pos;
  };
  struct AutImageO {
    std::shared_ptr<const AutDescriptor> rho_inv;
    OrderPtr inner;
  };
  struct CosetWrapO {
    std::function<long long(const Element&)> coset_of;
    std::function<IntVec(const Element&)> k_coord;
    std::function<int(long long, long long, long long)> orbit_eval;
    LinearOrderSpec stab_lin;
  };

  using Data = std::variant<FiniteRotationO, RotationO, LinearWrapO,
                            IntertwinedO, LexFreeProductO, ExplicitTableO,
                            PointRecoveredO, AutImageO, CosetWrapO>;

  // Factories (validate their inputs; throw Error on violations).
  static OrderPtr finite_rotation(long m, long k);  // on FgAbelian(0, m)
  static OrderPtr finite_rotation_on(GroupPtr g, long m, long k);
  static OrderPtr rotation(GroupPtr g, RotationParams p);
  static OrderPtr linear_wrap(GroupPtr g, LinearOrderSpec lin);
  static OrderPtr intertwined(std::shared_ptr<const BlowdownData> d);
  static OrderPtr lex_free_product(GroupPtr prod, OrderPtr cg, OrderPtr ch);
  static OrderPtr explicit_table(GroupPtr g, ExplicitTableO t);
  static OrderPtr point_recovered(GroupPtr g, RealizationMap m);
  static OrderPtr aut_image(AutDescriptor rho_inv, OrderPtr inner);
  static OrderPtr coset_wrap(GroupPtr g, CosetWrapO w);

  GroupPtr group() const { return group_; }
  const Data& data() const { return data_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&data_);
  }

  // 0 iff two entries coincide; antisymmetric; cyclically invariant.
  OrderValue eval(const Element& a, const Element& b, const Element& c) const;

  // Exact circle position in [0, 1) when the variant pins one
  // (FiniteRotation, Rotation, PointRecovered).
  bool has_positions() const;
  AlgebraicReal position(const Element& e) const;

 private:
  CircularOrderSpec(GroupPtr g, Data d)
      : group_(std::move(g)), data_(std::move(d)) {}
  GroupPtr group_;
  Data data_;
};

OrderPtr aut_act(const AutDescriptor& rho, OrderPtr c);

// ---------------------------------------------------------------------------
// Validation

enum class AxiomKind { DV, C, H, IC, AT };

struct Violation {
  AxiomKind kind;
  std::vector<Element> witness;
};

struct ValidationReport {
  long long checked_triples = 0;
  long long checked_quadruples = 0;
  long long skipped_homogeneity = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the degenerate-vanishing, cocycle, homogeneity, cyclic-invariance
// and antisymmetry conditions exhaustively over the sample; homogeneity
// checks whose translates escape the sample are counted as skipped.
ValidationReport validate(const CircularOrderSpec& c,
                          const std::vector<Element>& sample,
                          size_t max_violations = 16);

// ---------------------------------------------------------------------------
// Cuts

struct CutOrder {
  OrderPtr c;
  Element p;
  // Strict total order on the complement of p.
  bool less(const Element& x, const Element& y) const;
};

CutOrder cut_order_at(OrderPtr c, Element p);

struct CutIncompatibility {
  // (x, y, p, q): the comparators based at p and q disagree inconsistently.
  std::vector<Element> witness;
};

// Rebuilds an explicit order from per-basepoint comparators on the sample:
// value(x, y, z) = +1 iff z precedes x in the cut at y.
std::variant<OrderPtr, CutIncompatibility> cocycle_from_cuts(
    GroupPtr g, const std::vector<Element>& sample,
    const std::function<bool(const Element& p, const Element& x,
                             const Element& y)>& less_at);

// ---------------------------------------------------------------------------
// Linearity, bi-invariance, agreement

struct LinearOnResult {
  bool linear = false;
  std::vector<Element> cone;  // when linear
  Element g, h;               // witness pair when genuine
  long long skipped = 0;      // cone products outside the sample
};

LinearOnResult is_linear_on(const CircularOrderSpec& c,
                            const std::vector<Element>& sample);

struct BiInvarianceWitness {
  Element g;
  std::array<Element, 3> triple;
};

std::optional<BiInvarianceWitness> bi_invariance_check(
    const CircularOrderSpec& c, const std::vector<Element>& sample);

// First triple (in deterministic sample order) where the two orders
// disagree; nullopt = agreement on every sampled triple.
std::optional<std::array<Element, 3>> agreement(
    const CircularOrderSpec& c1, const CircularOrderSpec& c2,
    const std::vector<Element>& sample);

}  // namespace corder

#endif
