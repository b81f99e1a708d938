#include "perispec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "perispec/error.hpp"

namespace perispec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_hermitian(const Eigen::MatrixXcd& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |A - A^H| = " << asym << " (scale " << scale << ")";
    throw InvalidArgument(msg.str());
  }
}

double distance_to(const std::vector<double>& sorted, double x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = *it - x;
  if (it != sorted.begin()) best = std::min(best, x - *std::prev(it));
  return best;
}

/// Real shift kept away from the computed spectrum and close to the origin,
/// where the eigenvalues of interest live.
double pick_shift(const std::vector<double>& sorted) {
  std::vector<double> candidates{sorted.front() - 1.0, sorted.back() + 1.0};
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double mid = 0.5 * (sorted[i] + sorted[i + 1]);
    if (std::abs(mid) <= 16.0) candidates.push_back(mid);
  }
  double best = candidates.front();
  double best_score = -1.0;
  for (double c : candidates) {
    const double score = distance_to(sorted, c) / (1.0 + std::abs(c));
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

EigenReport make_report(const DiffOpSpec& spec, const BandWindow& w, std::vector<double> values) {
  return EigenReport{w, std::move(values), spec.ell, spec.k, spec.p()};
}

Eigen::MatrixXcd self_adjoint_matrix(const DiffOpSpec& spec, const BandWindow& w, Exec exec) {
  if (!spec.is_self_adjoint())
    throw InvalidArgument("eigenvalues_self_adjoint: operator is not self-adjoint (complex symbol or L1 not Hermitian)");
  Eigen::MatrixXcd a = assemble_finite_section_ode(spec, w, exec).entries;
  require_hermitian(a);
  return a;
}

}  // namespace

HermitianEigen regulated_hermitian_eigen(const Eigen::MatrixXcd& a_in, bool with_vectors) {
  require_hermitian(a_in);
  const long n = a_in.rows();
  const Eigen::MatrixXcd a = 0.5 * (a_in + a_in.adjoint());

  Eigen::MatrixXcd off = a;
  off.diagonal().setZero();
  if (n <= 1 || off.cwiseAbs().maxCoeff() == 0.0) {
    // Diagonal: the eigenvalues are the entries, exactly.
    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(), [&](long x, long y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigen out;
    out.values.resize(n);
    if (with_vectors) out.vectors = Eigen::MatrixXcd::Zero(n, n);
    for (long i = 0; i < n; ++i) {
      out.values[i] = a(order[i], order[i]).real();
      if (with_vectors) out.vectors(order[i], i) = 1.0;
    }
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> plain(a, with_vectors ? Eigen::ComputeEigenvectors
                                                                         : Eigen::EigenvaluesOnly);
  if (plain.info() != Eigen::Success) throw SolverError("Hermitian eigensolver did not converge");

  HermitianEigen out;
  out.values.assign(plain.eigenvalues().data(), plain.eigenvalues().data() + n);
  if (with_vectors) {
    out.vectors = plain.eigenvectors();
    const double norm_a = std::max(std::abs(out.values.front()), std::abs(out.values.back()));
    for (long i = 0; i < n; ++i) {
      const double res = (a * out.vectors.col(i) - out.values[i] * out.vectors.col(i)).norm();
      if (res > 1e-10 * std::max(1.0, norm_a))
        throw SolverError("Hermitian eigenpair residual " + std::to_string(res) + " exceeds 1e-10 ||A||");
    }
  }

  const double zeta = pick_shift(out.values);
  out.shift = zeta;
  Eigen::VectorXd scale(n);
  for (long i = 0; i < n; ++i) scale(i) = 1.0 / std::sqrt(1.0 + std::abs(a(i, i).real() - zeta));
  Eigen::MatrixXcd b = scale.asDiagonal() * (a - zeta * Eigen::MatrixXcd::Identity(n, n)) * scale.asDiagonal();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(b);
  if (!(lu.rcond() > 1e-10)) return out;  // shift too close to the spectrum; keep the plain values
  Eigen::MatrixXcd inv = scale.asDiagonal() * lu.inverse() * scale.asDiagonal();
  inv = 0.5 * (inv + inv.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> shifted(inv, Eigen::EigenvaluesOnly);
  if (shifted.info() != Eigen::Success) return out;

  std::vector<double> refined(n);
  for (long i = 0; i < n; ++i) {
    const double mu = shifted.eigenvalues()(i);
    if (mu == 0.0) return out;
    refined[i] = zeta + 1.0 / mu;
  }
  std::sort(refined.begin(), refined.end());

  // Order statistics of both lists track the same eigenvalues (Weyl), so
  // the i-th entries correspond; take the more accurate one per rank.
  const double norm_a = std::max(std::abs(out.values.front()), std::abs(out.values.back()));
  const double crossover = std::sqrt(std::max(1.0, norm_a));
  for (long i = 0; i < n; ++i) {
    if (std::abs(refined[i] - zeta) <= crossover) {
      out.values[i] = refined[i];
      ++out.refined;
    }
  }
  std::vector<long> order(n);
  std::iota(order.begin(), order.end(), 0L);
  std::stable_sort(order.begin(), order.end(), [&](long x, long y) { return out.values[x] < out.values[y]; });
  if (!std::is_sorted(out.values.begin(), out.values.end())) {
    std::vector<double> values(n);
    Eigen::MatrixXcd vectors(with_vectors ? n : 0, with_vectors ? n : 0);
    for (long i = 0; i < n; ++i) {
      values[i] = out.values[order[i]];
      if (with_vectors) vectors.col(i) = out.vectors.col(order[i]);
    }
    out.values = std::move(values);
    if (with_vectors) out.vectors = std::move(vectors);
  }
  return out;
}

EigenReport eigenvalues_self_adjoint(const DiffOpSpec& spec, const BandWindow& w, Exec exec) {
  auto eig = regulated_hermitian_eigen(self_adjoint_matrix(spec, w, exec), false);
  return make_report(spec, w, std::move(eig.values));
}

EigenPairs eigenpairs_self_adjoint(const DiffOpSpec& spec, const BandWindow& w, Exec exec) {
  auto eig = regulated_hermitian_eigen(self_adjoint_matrix(spec, w, exec), true);
  return EigenPairs{make_report(spec, w, std::move(eig.values)), std::move(eig.vectors)};
}

std::vector<cd> eigenvalues_general(const DiffOpSpec& spec, const BandWindow& w, Exec exec) {
  const Eigen::MatrixXcd a = assemble_finite_section_ode(spec, w, exec).entries;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  if (solver.info() != Eigen::Success) throw SolverError("complex eigensolver did not converge");
  std::vector<cd> values(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  std::sort(values.begin(), values.end(), [](cd x, cd y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  return values;
}

std::vector<EigenDistance> eigen_distances(const EigenReport& test, const EigenReport& reference) {
  if (reference.window.size() < test.window.size())
    throw InvalidArgument("eigen_distances: reference window (" + std::to_string(reference.window.size()) +
                          ") is smaller than the test window (" + std::to_string(test.window.size()) + ")");
  const auto& ref = reference.eigenvalues;
  if (ref.empty()) throw InvalidArgument("eigen_distances: empty reference spectrum");
  const double n = static_cast<double>(test.window.size());
  const double ell = test.ell;
  const double k = std::max(1, test.k);

  std::vector<EigenDistance> out;
  out.reserve(test.eigenvalues.size());
  for (double lambda : test.eigenvalues) {
    const auto it = std::lower_bound(ref.begin(), ref.end(), lambda);
    long idx = std::min<long>(it - ref.begin(), static_cast<long>(ref.size()) - 1);
    double d = std::abs(ref[idx] - lambda);
    if (idx > 0 && std::abs(ref[idx - 1] - lambda) <= d) {
      --idx;
      d = std::abs(ref[idx] - lambda);
    }
    const double r = d * std::pow(n, ell) * std::pow(2.0 + std::abs(lambda), -ell / k);
    out.push_back({lambda, d, r, idx});
  }
  return out;
}

std::vector<int> cluster_multiplicities(const EigenReport& report, std::span<const double> centers, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("cluster_multiplicities: delta must be positive");
  std::vector<double> sorted(centers.begin(), centers.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (!(sorted[i + 1] - sorted[i] > 3.0 * delta))
      throw InvalidArgument("cluster_multiplicities: centers closer than 3 delta overlap");
  std::vector<int> counts;
  counts.reserve(centers.size());
  for (double c : centers) {
    int count = 0;
    for (double lambda : report.eigenvalues)
      if (std::abs(lambda - c) < delta) ++count;
    counts.push_back(count);
  }
  return counts;
}

std::vector<double> resolvent_norm_grid(const DiffOpSpec& spec, const BandWindow& w, std::span<const cd> z_grid,
                                        SobolevOrder s, Exec exec) {
  const Eigen::MatrixXcd a = assemble_finite_section_ode(spec, w, exec).entries;
  const long n = w.size();
  const SobolevOrder t{s.s - spec.k};
  Eigen::VectorXd left(n), right(n);
  for (long i = 0; i < n; ++i) {
    left(i) = t.weight(w.mode_at(i));
    right(i) = 1.0 / s.weight(w.mode_at(i));
  }
  const Eigen::MatrixXcd scaled_a = left.asDiagonal() * a * right.asDiagonal();
  Eigen::VectorXd scaled_id(n);
  for (long i = 0; i < n; ++i) scaled_id(i) = left(i) * right(i);

  std::vector<double> out(z_grid.size());
  auto one = [&](long i) {
    Eigen::MatrixXcd b = -scaled_a;
    b.diagonal() += z_grid[i] * scaled_id;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(b);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(n - 1);
    const bool singular = smin == 0.0 || smin <= kEps * static_cast<double>(n) * smax;
    out[i] = singular ? std::numeric_limits<double>::infinity() : 1.0 / smin;
  };
  const long count = static_cast<long>(z_grid.size());
  if (exec == Exec::serial) {
    for (long i = 0; i < count; ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) one(i);
  }
  return out;
}

double hausdorff_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double worst = 0.0;
  for (double x : sa) worst = std::max(worst, distance_to(sb, x));
  for (double x : sb) worst = std::max(worst, distance_to(sa, x));
  return worst;
}

CoincidenceReport truncation_coincidence(const DiffOpSpec& spec, const BandWindow& w, double c) {
  const EigenReport fs = eigenvalues_self_adjoint(spec, w);
  CoincidenceReport out;
  out.radius = c * std::pow(static_cast<double>(w.size()), spec.k - 1);
  for (double lambda : fs.eigenvalues)
    if (std::abs(lambda) <= out.radius) out.finite_section.push_back(lambda);

  // Off the window L_N acts as L0, so its L^2 spectrum adds the symbols of
  // every outside mode. Past `reach` those symbols exceed the radius.
  double lower = 0.0;
  for (std::size_t j = 0; j + 1 < spec.const_coeffs.size(); ++j) lower += std::abs(spec.const_coeffs[j]);
  const double ck = std::abs(spec.const_coeffs.back());
  const long reach = spec.k == 0 ? w.n_minus() + 1
                                 : static_cast<long>(std::ceil((out.radius + lower) / ck)) + 1;
  out.l2_spectrum = out.finite_section;
  auto add_tail = [&](long m) {
    const double sigma = spec.symbol(m).real();
    if (std::abs(sigma) <= out.radius) out.l2_spectrum.push_back(sigma);
  };
  for (long m = w.max_mode() + 1; m <= std::max(reach, w.max_mode() + 1); ++m) add_tail(m);
  for (long m = w.min_mode() - 1; m >= std::min(-reach, w.min_mode() - 1); --m) add_tail(m);
  std::sort(out.l2_spectrum.begin(), out.l2_spectrum.end());
  out.hausdorff = hausdorff_distance(out.finite_section, out.l2_spectrum);
  return out;
}

}  // namespace perispec
