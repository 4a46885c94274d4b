#ifndef CORDER_ABELIAN_HPP
#define CORDER_ABELIAN_HPP

#include <optional>
#include <vector>

#include "corder/order.hpp"

namespace corder {

// Validates theta (Q-linear independence together with 1) and gcd(k, m) = 1;
// the thrown message carries the vanishing rational combination on failure.
RotationParams make_rotation_params(int rank, long m,
                                    std::vector<AlgebraicReal> theta, long k);

OrderValue rotation_eval(const RotationParams& p, const Element& a,
                         const Element& b, const Element& c);

// Quotient data for Z^n x Z/m by the sublattice spanned by k_basis (full
// column rank). Rejects quotients with noncyclic torsion.
std::shared_ptr<const BlowdownData> make_blowdown(GroupPtr ambient,
                                                  IntMat k_basis,
                                                  LinearOrderSpec lin,
                                                  OrderPtr quotient_order);

OrderPtr intertwined_order(GroupPtr ambient, IntMat k_basis,
                           LinearOrderSpec lin, OrderPtr quotient_order);

// Projection to the quotient group and the kernel coordinate of an element
// relative to the canonical representative of its coset.
Element blowdown_sigma(const BlowdownData& d, const Element& a);
IntVec blowdown_k_coord(const BlowdownData& d, const Element& a);

OrderValue intertwined_eval(const BlowdownData& d, const Element& a,
                            const Element& b, const Element& c);

// All circular orders of Z/m: rotation by k/m for each k coprime to m
// (single vacuous order for m <= 2).
std::vector<OrderPtr> enumerate_cyclic_orders(long m);

// Rotation parameters agreeing with c (Rotation or Intertwined) on every
// sampled triple: perturb the rational quotient positions along the kernel
// direction and by fresh sqrt-prime terms, shrinking until exact agreement;
// nullopt after `budget` rounds.
std::optional<RotationParams> density_search(const CircularOrderSpec& c,
                                             const std::vector<Element>& sample,
                                             int budget);

// A rotation order distinct from p agreeing with it on the sample.
std::optional<RotationParams> distinct_agreeing_rotation(
    const RotationParams& p, GroupPtr g, const std::vector<Element>& sample,
    int budget);

// Smallest n <= N flipping the orientation of (e, g, h) under powers of g,
// or nullopt. Throws when g, h are powers of a common element.
std::optional<long> archimedean_witness(const CircularOrderSpec& c,
                                        const Element& g, const Element& h,
                                        long N);

enum class OrderClass { Min, Fin, Blowdown };

struct Classification {
  OrderClass kind = OrderClass::Min;
  IntMat kernel_hnf;  // empty for Min
};

Classification classify(const CircularOrderSpec& c);

}  // namespace corder

#endif
