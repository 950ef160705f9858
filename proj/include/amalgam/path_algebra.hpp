#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amalgam/cyclo.hpp"

namespace amalgam {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

/// Finite quiver, optionally with a symplectic involution a <-> a*.
class Quiver {
public:
  Quiver(std::string name, int vertex_count, std::vector<Arrow> arrows);

  /// Pairs each `half[k]` with `starred[k]` (reverse orientation required);
  /// the arrows in `half` form L.
  Quiver& with_involution(const std::vector<std::pair<std::string, std::string>>& half_and_star);

  const std::string& name() const { return name_; }
  int vertex_count() const { return vertex_count_; }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const Arrow& arrow(int a) const { return arrows_[static_cast<std::size_t>(a)]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  /// Index of the arrow called `name`; throws std::out_of_range.
  int arrow_index(std::string_view name) const;

  bool has_involution() const { return has_involution_; }
  /// a* (throws std::logic_error without an involution).
  int star(int a) const;
  bool in_half(int a) const;
  std::vector<int> half() const;

  friend bool operator==(const Quiver& a, const Quiver& b);

private:
  std::string name_;
  int vertex_count_;
  std::vector<Arrow> arrows_;
  std::vector<int> star_;
  std::vector<bool> in_half_;
  bool has_involution_ = false;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

/// Oriented path read left to right: a_1 then a_2 ... Empty arrow list is the
/// vertex idempotent e_start.
struct Path {
  int start = 0;
  std::vector<int> arrows;

  bool is_idempotent() const { return arrows.empty(); }
  std::size_t length() const { return arrows.size(); }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

int path_end(const Quiver& q, const Path& p);

/// Finite linear combination of paths with cyclotomic coefficients.
class PathElement {
public:
  explicit PathElement(QuiverPtr quiver) : quiver_(std::move(quiver)) {}
  PathElement(QuiverPtr quiver, Path path, Cyclotomic coeff = 1);

  static PathElement idempotent(QuiverPtr quiver, int vertex);
  static PathElement arrow(QuiverPtr quiver, std::string_view name);
  /// Sum of all vertex idempotents.
  static PathElement one(QuiverPtr quiver);
  /// Path given by arrow names, e.g. {"s1", "s2"}.
  static PathElement word(QuiverPtr quiver, const std::vector<std::string>& names);

  const QuiverPtr& quiver() const { return quiver_; }
  const std::map<Path, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Cyclotomic coeff(const Path& p) const;

  void add_term(const Path& p, const Cyclotomic& c);

  PathElement& operator+=(const PathElement& other);
  PathElement& operator-=(const PathElement& other);
  PathElement& operator*=(const Cyclotomic& scalar);
  PathElement operator-() const;

  /// Part supported on paths from vertex u to vertex v: e_u x e_v.
  PathElement corner(int u, int v) const;

  friend bool operator==(const PathElement& a, const PathElement& b);

private:
  QuiverPtr quiver_;
  std::map<Path, Cyclotomic> terms_;
};

PathElement operator+(PathElement a, const PathElement& b);
PathElement operator-(PathElement a, const PathElement& b);
PathElement operator*(const Cyclotomic& c, PathElement x);
/// Concatenation product; non-composable pairs vanish. Throws on quiver mismatch.
PathElement operator*(const PathElement& x, const PathElement& y);
PathElement multiply(const PathElement& x, const PathElement& y);
PathElement power(const PathElement& x, unsigned exponent);

/// "(c) * e1 + (c) * s1.s2"; zero prints as "0".
std::string to_string(const PathElement& x);
PathElement parse_element(QuiverPtr quiver, std::string_view text);

/// Cyclic word of arrows; empty words stand for vertex idempotents (which can
/// appear in brackets) and remember their vertex.
struct Necklace {
  std::vector<int> word;
  int vertex = -1;  // used only when word is empty

  friend auto operator<=>(const Necklace&, const Necklace&) = default;
  friend bool operator==(const Necklace&, const Necklace&) = default;
};

/// Canonical representative (lexicographically least rotation). Throws if
/// the word is not a closed path.
Necklace make_necklace(const Quiver& q, std::vector<int> word);
Necklace necklace_from_names(const Quiver& q, const std::vector<std::string>& names);

/// Linear combination of necklaces.
using NecklaceSum = std::map<Necklace, Cyclotomic>;

NecklaceSum single(const Necklace& n, const Cyclotomic& c = 1);
void accumulate(NecklaceSum& into, const NecklaceSum& x, const Cyclotomic& scale = 1);
/// Sum of closed paths of x read as necklaces.
NecklaceSum close_up(const PathElement& x);
/// n1 * n2 as necklaces is not defined; this is n^k for a single cycle.
Necklace necklace_power(const Quiver& q, const Necklace& n, unsigned k);
std::string to_string(const Quiver& q, const NecklaceSum& x);

PathElement necklace_derivative(const QuiverPtr& q, const Necklace& n, int arrow);
PathElement necklace_derivative(const QuiverPtr& q, const NecklaceSum& n, int arrow);

/// sum_{a in L} (dn/da dm/da* - dn/da* dm/da), read as necklaces.
NecklaceSum necklace_bracket(const QuiverPtr& q, const NecklaceSum& n, const NecklaceSum& m);

/// sum_{a in L} (a a* - a* a).
PathElement moment_element(const QuiverPtr& q);

/// Values of a derivation on the arrows (idempotents are killed).
using Derivation = std::vector<PathElement>;

/// theta_n(a) = -dn/da*, theta_n(a*) = dn/da.
Derivation symplectic_derivation(const QuiverPtr& q, const NecklaceSum& n);
/// Extension to the whole path algebra by the Leibniz rule.
PathElement apply_derivation(const Derivation& d, const PathElement& x);
/// d1 o d2 - d2 o d1 on the arrows.
Derivation derivation_commutator(const Derivation& d1, const Derivation& d2);

/// The iterates x, theta(x), theta^2(x), ... up to the first zero; throws
/// std::runtime_error if theta^(nil_bound+1)(x) is still non-zero.
std::vector<PathElement> derivation_orbit(const Derivation& d, const PathElement& x, int nil_bound);

/// exp(t theta)(x) = sum_j t^j theta^j(x) / j!.
PathElement flow_automorphism(const Derivation& d, const Cyclotomic& t, const PathElement& x, int nil_bound);

// Standard quivers. Hexagon: vertices v1..v6 (indices 0..5), s_i: v_i -> v_{i+1},
// t_i: v_{i+1} -> v_i, L = {s_i}, s_i* = t_i.
QuiverPtr hexagon_quiver();
/// Two 2-cycles: s1: 1 -> 2, t1: 2 -> 1, s2: 3 -> 4, t2: 4 -> 3.
QuiverPtr dinfty_quiver();
/// a: 1 -> 2, a*: 2 -> 1, loops b, b* at 2; L = {a, b}.
QuiverPtr calogero_quiver();

/// Elementary hexagon necklaces C_i = s_i t_i (i = 1..6), S = s1...s6, T = t6...t1.
Necklace hexagon_c(const Quiver& hex, int i);
Necklace hexagon_s(const Quiver& hex);
Necklace hexagon_t(const Quiver& hex);

enum class GroupTag { Dinfty, ProjModular, Modular, Braid3 };

std::string to_string(GroupTag tag);
GroupTag group_tag_from_string(std::string_view text);

/// Images of the generators s, t of D_inf or PSL_2(Z) in the path algebra of
/// the matching quiver.
struct PhiMap {
  PathElement s;
  PathElement t;
};

PhiMap phi_map(GroupTag group);

}  // namespace amalgam
