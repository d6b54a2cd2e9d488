#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "flagexp/ambient.hpp"
#include "flagexp/flags.hpp"
#include "flagexp/highprec.hpp"

namespace flagexp {

struct Height {
  mpz_class squared;  // exact H^2 of the primitive representative
  double value = 0;
  IntVec primitive;
};

// Euclidean norm of the primitive representative. Projective points are integer
// coordinates; Grassmannian points are Plucker vectors, which must be decomposable.
// Throws ZeroVector.
Height height(const IntVec& point, const AmbientSpace& space);
// Plane spanned by the given integer vectors, through its Plucker vector.
Height height_of_span(const std::vector<IntVec>& vectors);

// Rational points of height <= T, by primitive-vector enumeration.
// Projective: any d, T^d work. Grassmann(2,4): decomposable Plucker vectors, T^5 work.
std::uint64_t count_rational_points(const AmbientSpace& space, double T);

// psi(u) = c (log u)^-gamma (log log u)^-delta with both logarithms clamped to >= 1.
double psi_value(const PsiParams& psi, double u);

// d(x, v) = |u ^ v| / (|u| |v|) for the chordal metric on projective space.
double projective_distance(std::span<const HighFloat> x, const IntVec& v);

struct Approximation {
  IntVec v;  // primitive, first nonzero coordinate positive
  double height = 0;
  double distance = 0;
};

// Every primitive v with H(v) <= T and d(x, v) <= bound(H(v)), for a non-increasing bound.
// Candidates come from windows around the line through x, so the work is about T times
// the window volume rather than T^d.
void for_each_approximation(std::span<const HighFloat> x, double T, const std::function<double(double)>& bound,
                            const std::function<void(const Approximation&)>& visit);

// Primitive v with H(v) <= T and d(x, v) <= H^-beta psi(H), beta the almost-sure exponent
// of projective space. psi must be non-increasing (gamma, delta >= 0). One count per
// threshold in Ts, which must increase.
std::vector<std::uint64_t> count_solutions(std::span<const HighFloat> x, const PsiParams& psi,
                                           std::span<const double> Ts);
std::uint64_t count_solutions(std::span<const HighFloat> x, const PsiParams& psi, double T);

}  // namespace flagexp
