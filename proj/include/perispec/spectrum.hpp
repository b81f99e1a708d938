#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "perispec/fourier.hpp"
#include "perispec/kernels.hpp"
#include "perispec/operators.hpp"

namespace perispec {

struct EigenReport {
  BandWindow window;
  std::vector<double> eigenvalues;  // ascending, one per mode
  double ell = 1.0;
  int k = 0;
  int p = -1;
};

struct EigenPairs {
  EigenReport report;
  Eigen::MatrixXcd vectors;  // column i belongs to report.eigenvalues[i]
};

/// Eigen-decomposition of a Hermitian matrix whose diagonal dominates in a
/// graded way (differential symbols). A plain dense solve is accurate only
/// to eps * ||A||; eigenvalues near a real shift zeta are recomputed from
/// the well-scaled inverse W^{-1/2} B^{-1} W^{-1/2}, B = W^{-1/2}(A - zeta)W^{-1/2},
/// W = diag(1 + |a_ii - zeta|), which brings their error down to
/// O(eps (1 + |lambda - zeta|)^2).
struct HermitianEigen {
  std::vector<double> values;  // ascending
  Eigen::MatrixXcd vectors;    // empty unless requested
  double shift = 0.0;
  long refined = 0;  // how many values came from the shifted inverse
};
HermitianEigen regulated_hermitian_eigen(const Eigen::MatrixXcd& a, bool with_vectors);

/// Spectrum of the Hermitian finite-section matrix L0 + P_N L1 P_N.
EigenReport eigenvalues_self_adjoint(const DiffOpSpec& spec, const BandWindow& w, Exec exec = Exec::parallel);
EigenPairs eigenpairs_self_adjoint(const DiffOpSpec& spec, const BandWindow& w, Exec exec = Exec::parallel);

/// Plain dense eigenvalues of the (possibly non-normal) finite-section matrix,
/// sorted by real then imaginary part.
std::vector<cd> eigenvalues_general(const DiffOpSpec& spec, const BandWindow& w, Exec exec = Exec::parallel);

struct EigenDistance {
  double lambda = 0.0;  // test eigenvalue
  double d = 0.0;       // min_i |lambda - lambda_i^ref|
  double r = 0.0;       // d N^ell (2 + |lambda|)^{-ell/k}
  long ref_index = 0;   // nearest reference eigenvalue, ties to the smaller index
};
std::vector<EigenDistance> eigen_distances(const EigenReport& test, const EigenReport& reference);

/// Count of eigenvalues with |lambda - center| < delta, per center. Centers
/// must be pairwise more than 3 delta apart.
std::vector<int> cluster_multiplicities(const EigenReport& report, std::span<const double> centers, double delta);

/// 1 / sigma_min(W_{s-k} (z - A) W_s^{-1}) for each z: the H^{s-k} -> H^s norm
/// of the truncated resolvent. +inf where z - A is numerically singular.
std::vector<double> resolvent_norm_grid(const DiffOpSpec& spec, const BandWindow& w, std::span<const cd> z_grid,
                                        SobolevOrder s, Exec exec = Exec::parallel);

struct CoincidenceReport {
  double radius = 0.0;                // c N^{k-1}
  std::vector<double> finite_section;  // sigma(L0 + P_N L1; ran P_N) in the disk
  std::vector<double> l2_spectrum;     // sigma(L_N; L^2) in the disk
  double hausdorff = 0.0;
};
CoincidenceReport truncation_coincidence(const DiffOpSpec& spec, const BandWindow& w, double c);

/// Hausdorff distance of two finite real sets (0 if both empty, inf if one is).
double hausdorff_distance(std::span<const double> a, std::span<const double> b);

}  // namespace perispec
