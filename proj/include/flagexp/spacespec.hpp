#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagexp/ambient.hpp"
#include "flagexp/flags.hpp"
#include "flagexp/rational.hpp"
#include "flagexp/roots.hpp"

namespace flagexp {

inline constexpr std::string_view kSpaceGrammar =
    "projective:d | grassmannian:l,d | flag:FAMILYrank:theta=i,j,...:chi=n1,...,nr | quadric:n[,x0]";

enum class SpaceKind { Projective, Grassmannian, Flag, Quadric };

// Parsed space string. Simple-root indices in theta are 1-based, as written.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Projective;
  int d = 0;  // projective: R^d; grassmannian: l-planes in R^d; quadric: its dimension n
  int l = 0;
  Family family = Family::A;
  int rank = 0;
  std::vector<int> theta;
  std::vector<long> chi;
  bool x0 = false;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

// Throws Syntax with the 0-based offset of the first bad character.
SpaceSpec parse_space(std::string_view text);
// Canonical text; parse_space(to_string(s)) == s.
std::string to_string(const SpaceSpec& spec);

// Throws InvalidSpec for quadrics, which have no split root datum here.
FlagVarietySpec flag_variety(const SpaceSpec& spec);

// Lattice-side model with its flow. Projective and Grassmannian spaces keep the flow of
// their flag variety; a type-A full flag uses R^d with the product cone; quadric:n is
// 2 x_0 x_{n+1} - x_1^2 - ... - x_n^2 on R^{n+2} with Y = diag(-1, 0, ..., 0, 1).
struct LatticeModel {
  AmbientSpace space;
  RatVec y_diag;
  Rational chi_y;
};
LatticeModel lattice_model(const SpaceSpec& spec);

}  // namespace flagexp
