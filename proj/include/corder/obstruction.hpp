#ifndef CORDER_OBSTRUCTION_HPP
#define CORDER_OBSTRUCTION_HPP

#include <string>
#include <vector>

#include "corder/order.hpp"

namespace corder {

enum class SolveMode { CO, LO };

struct Lit {
  int var = 0;
  int sign = 1;  // literal value = sign * assignment(var)
};

struct Clause {
  enum Kind { Cocycle, Cone, Conflict } kind = Cocycle;
  // Cocycle: exactly two of the four literal values are +1.
  // Cone: lits = {a, b, ab}; forbidden that a, b are +1 while ab is -1.
  // Conflict: a variable identified with its own negation; never satisfiable.
  std::vector<Lit> lits;
  std::vector<Element> origin;
};

// Partial-orderability constraints over a group ball.  CO variables are
// classes of pairs (a, b) standing for the value on (e, a, b); LO variables
// are classes of single elements standing for positive-cone membership.
struct ConstraintInstance {
  GroupPtr group;
  int radius = 1;
  SolveMode mode = SolveMode::CO;
  std::vector<Element> var_a, var_b;  // canonical representative per variable
  std::vector<Clause> clauses;
  long long skipped_identifications = 0;
  bool trivial = false;
  std::string note;
};

ConstraintInstance build_instance(GroupPtr g, int radius, SolveMode mode);

struct SolveResult {
  bool sat = false;
  std::vector<int> assignment;   // +-1 per variable when sat
  std::vector<size_t> touched;   // clauses involved in the refutation
};

// Deterministic backtracking with unit propagation: ascending variable
// order, +1 tried first.
SolveResult solve(const ConstraintInstance& inst);

struct Certificate {
  SolveMode mode = SolveMode::CO;
  std::string group_sha;
  int radius = 1;
  std::vector<Element> var_a, var_b;
  std::vector<Clause> clauses;
  bool minimized = false;
};

// Deletion-based minimization: drops every clause whose removal keeps the
// subset unsatisfiable, in clause order.
Certificate minimize_certificate(const ConstraintInstance& inst,
                                 std::vector<size_t> core);

struct SearchOutcome {
  bool no = false;
  int radius = 0;  // the radius that produced the certificate
  Certificate cert;
};

// Iterative deepening up to max_radius; a SAT result at every radius is
// inconclusive, not a proof of orderability.
SearchOutcome search(GroupPtr g, int max_radius, SolveMode mode);

// All circular orders of a finite-table group, as explicit-table specs in
// deterministic order (empty when the group is not circularly orderable).
std::vector<OrderPtr> enumerate_orders(GroupPtr g);

// Exhaustive replay over the certificate's variables (at most 20).
bool verify_certificate(const Certificate& cert);

std::string sha256_hex(const std::string& data);

}  // namespace corder

#endif
