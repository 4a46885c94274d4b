#ifndef CORDER_GROUP_HPP
#define CORDER_GROUP_HPP

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace corder {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Finite group given by its full multiplication table over indices
// 0..size-1.  Validated on construction: rows/columns are permutations,
// associativity holds, the identity index is unique, inverses match.
struct FiniteTable {
  int size = 0;
  std::vector<std::vector<int>> table;
  std::vector<int> inverses;
  int identity = 0;
};

// Z^rank x Z/torsion, torsion = 0 meaning torsion-free.
struct FgAbelian {
  int rank = 0;
  long torsion = 0;
};

struct FreeGroup {
  int rank = 1;
};

struct FreeProduct {
  GroupPtr left;
  GroupPtr right;
};

enum class Side { Left, Right };

struct TableIndex {
  int idx = 0;
};

struct AbelianVec {
  std::vector<long long> v;
  long long t = 0;
};

// Reduced word: adjacent letters have distinct generator indices,
// exponents nonzero.
struct FreeWord {
  std::vector<std::pair<int, long long>> letters;
};

struct ProdLetter;

// Reduced word in a free product: letters strictly alternate between the
// Left and Right factor and none is its factor's identity.  The empty
// word is the identity.
struct ProdWord {
  std::vector<ProdLetter> letters;
};

class Element {
 public:
  using Data = std::variant<TableIndex, AbelianVec, FreeWord, ProdWord>;

  Element() = default;
  explicit Element(Data d) : data_(std::move(d)) {}

  const Data& data() const { return data_; }
  Data& data() { return data_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&data_);
  }

 private:
  Data data_;
};

struct ProdLetter {
  Side side = Side::Left;
  Element elem;
};

// Deterministic total order on normal forms of matching variants; used for
// reproducible ball enumeration and solver tie-breaking.
int compare_elements(const Element& a, const Element& b);
inline bool element_eq(const Element& a, const Element& b) {
  return compare_elements(a, b) == 0;
}

// Compact canonical string, usable as a hash key.
std::string element_key(const Element& e);

class Group : public std::enable_shared_from_this<Group> {
 public:
  using Descriptor = std::variant<FiniteTable, FgAbelian, FreeGroup, FreeProduct>;

  // Validates the descriptor invariants; throws Error(InvalidDescriptor).
  static GroupPtr make(Descriptor d);

  const Descriptor& descriptor() const { return desc_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&desc_);
  }

  Element identity() const;
  bool is_identity(const Element& e) const;

  // Throws Error(Mismatch) if the element's variant or shape does not fit
  // this descriptor or the normal-form invariants are broken.
  void check(const Element& e) const;

  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, long long n) const;

  // Reduces a possibly non-normal-form element (unreduced words, torsion
  // residues out of range) to its normal form.
  Element normalize(const Element& raw) const;

  // The declared finite generating set: standard basis (plus the torsion
  // generator) for FgAbelian, all elements for FiniteTable, the free
  // generators for FreeGroup, embedded factor generators for FreeProduct.
  std::vector<Element> generators() const;

  // All normal forms of words of length <= radius in the generators and
  // their inverses.  Identity first, then by (word length, canonical
  // element order) so downstream artifacts are byte-for-byte reproducible.
  std::vector<Element> ball(int radius) const;

  bool torsion_free() const;

  std::string key() const;  // canonical serialization (see json_io)

 private:
  explicit Group(Descriptor d) : desc_(std::move(d)) {}
  Descriptor desc_;
};

struct CyclicTorsion {
  long order = 1;
};
struct NonCyclicWitness {
  Element a, b;
};
using TorsionResult = std::variant<CyclicTorsion, NonCyclicWitness>;

// Torsion-subgroup obstruction: a circularly orderable group has cyclic
// torsion.  Returns the torsion order, or two torsion elements generating
// a noncyclic subgroup.  Throws Error(Unsupported) when torsion is not
// computable for the variant.
TorsionResult torsion_cyclic_check(const Group& g);

// Convenience constructors.
GroupPtr fg_abelian(int rank, long torsion);
GroupPtr free_group(int rank);
GroupPtr free_product(GroupPtr left, GroupPtr right);
GroupPtr finite_table(std::vector<std::vector<int>> table);
GroupPtr cyclic_table(int m);  // Z/m as a FiniteTable (addition mod m)

Element abelian_elem(std::vector<long long> v, long long t = 0);
Element table_elem(int idx);
Element free_word(std::vector<std::pair<int, long long>> letters);
Element prod_word(std::vector<ProdLetter> letters);

}  // namespace corder

#endif
