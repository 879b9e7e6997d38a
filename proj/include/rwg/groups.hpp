#pragma once

// Concrete finitely generated groups with canonical normal forms.
//
// Every element is stored in a normal form that is unique per group element,
// so value equality is group equality and the canonical key is a stable
// identity usable for hashing, caching and on-disk storage.
//
// Canonical key layout (big-endian integers, two's complement for signed):
//   lattice:      'L' u32 k, then k x i64
//   free:         'F' u32 len, then len x i8 letter (+(i+1) generator, -(i+1) inverse)
//   heisenberg:   'H' i64 x, i64 y, i64 z
//   lamplighter:  'P' i64 cursor, u32 count, then count x i64 lit lamp (ascending)
//   bs12:         'B' i64 m, i64 exponent, u8 sign (0 zero, 1 positive, 2 negative),
//                 u32 nbytes, then magnitude bytes (most significant first)

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rwg {

class GroupError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Family { lattice, free, heisenberg, lamplighter, bs12 };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

using IntVector = std::vector<std::int64_t>;

struct LatticeElement {
  boost::container::small_vector<std::int64_t, 4> coords;
  friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
  friend auto operator<=>(const LatticeElement& a, const LatticeElement& b) {
    return std::lexicographical_compare_three_way(a.coords.begin(), a.coords.end(),
                                                  b.coords.begin(), b.coords.end());
  }
};

// Freely reduced word; letter +(i+1) is generator i, -(i+1) its inverse.
struct FreeElement {
  boost::container::small_vector<std::int8_t, 16> letters;
  friend bool operator==(const FreeElement&, const FreeElement&) = default;
  friend auto operator<=>(const FreeElement& a, const FreeElement& b) {
    if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                  b.letters.begin(), b.letters.end());
  }
};

// Upper unitriangular integer matrices: (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y').
struct HeisenbergElement {
  std::int64_t x = 0, y = 0, z = 0;
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
  friend auto operator<=>(const HeisenbergElement&, const HeisenbergElement&) = default;
};

// Z_2 wr Z: finite set of lit lamps (sorted, distinct) and cursor position.
struct LamplighterElement {
  boost::container::small_vector<std::int64_t, 8> lamps;
  std::int64_t cursor = 0;
  friend bool operator==(const LamplighterElement&, const LamplighterElement&) = default;
  friend auto operator<=>(const LamplighterElement& a, const LamplighterElement& b) {
    if (auto c = a.cursor <=> b.cursor; c != 0) return c;
    if (auto c = a.lamps.size() <=> b.lamps.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.lamps.begin(), a.lamps.end(),
                                                  b.lamps.begin(), b.lamps.end());
  }
};

// BS(1,2) = <a, b | a b a^-1 = b^2> realised as affine maps x -> 2^m x + q with
// q = numerator * 2^exponent a dyadic rational. numerator is odd, or the pair
// is (0, 0). Law: (q,m)(q',m') = (q + 2^m q', m + m').
struct DyadicElement {
  boost::multiprecision::cpp_int numerator;
  std::int64_t exponent = 0;
  std::int64_t m = 0;
  friend bool operator==(const DyadicElement& a, const DyadicElement& b) {
    return a.m == b.m && a.exponent == b.exponent && a.numerator == b.numerator;
  }
  friend std::strong_ordering operator<=>(const DyadicElement& a, const DyadicElement& b);
};

using GroupElement = std::variant<LatticeElement, FreeElement, HeisenbergElement,
                                  LamplighterElement, DyadicElement>;

Family family_of(const GroupElement& g);

std::string canonical_key(const GroupElement& g);
std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);

// Readable rendering, e.g. "(1,0,2)" or "a b- a".
std::string to_string(const GroupElement& g);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

// One formal alphabet letter; `inverse` marks the "x-" form.
struct Letter {
  char symbol = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct GroupDescriptor {
  Family family = Family::lattice;
  int param = 1;  // k for lattice, r for free; ignored otherwise

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

std::string to_string(const GroupDescriptor& d);

class Group {
public:
  explicit Group(GroupDescriptor desc);

  const GroupDescriptor& descriptor() const noexcept { return desc_; }
  Family family() const noexcept { return desc_.family; }

  // Rank k of the torsion-free abelianization Z^k.
  int abelian_rank() const noexcept;

  // Generator symbols in order; lamplighter 's' is an involution.
  const std::string& symbols() const noexcept { return symbols_; }
  bool is_involution(char symbol) const noexcept;

  // Standard generators followed by their inverses (involutions listed once).
  std::vector<GroupElement> generators_and_inverses() const;
  std::vector<GroupElement> generators() const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement generator(Letter letter) const;

  // Grammar: letters from symbols(), each optionally followed by '-' for the
  // inverse; whitespace is ignored. "a b a-" and "aba-" are the same word.
  std::vector<Letter> parse_word(std::string_view word) const;
  GroupElement evaluate_word(std::span<const Letter> letters) const;
  GroupElement evaluate_word(std::string_view word) const;

  // Torsion-free abelianization pi : G -> Z^k.
  IntVector project(const GroupElement& a) const;

  GroupElement decode_key(std::string_view key) const;
  bool contains(const GroupElement& a) const;

  friend bool operator==(const Group& a, const Group& b) { return a.desc_ == b.desc_; }

private:
  void require_member(const GroupElement& a) const;

  GroupDescriptor desc_;
  std::string symbols_;
};

}  // namespace rwg
