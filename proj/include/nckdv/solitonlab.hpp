#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "nckdv/ncpoly.hpp"
#include "nckdv/report.hpp"

namespace nckdv {

// Parameters of the explicit matrix solution class: L = exp(sum A^{2k-1} t_{2k-1}) B.
// num_times is the hierarchy depth N; N = 1 is the single-equation case and
// still carries the coordinate pair (x, t) = (t_1, t_3).
struct SolitonParams {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  int num_times = 1;

  int dim() const { return (int)A.rows(); }
  // number of coordinates t_1, t_3, ..., actually carried
  int coords() const { return num_times < 2 ? 2 : num_times; }
};

// A invertible by construction (distinct diagonal in [0.5, 2], conjugated by a
// random orthogonal matrix); B rescaled so that L stays small at the origin.
SolitonParams random_params(int dim, int num_times, std::uint64_t seed);

using SamplePoint = std::vector<double>;  // coordinates t_1, t_3, ..., t_{2M-1}

// Random in-Omega points; resamples up to 100 times per point against the
// conditioning threshold, then fails loudly.
std::vector<SamplePoint> sample_points(const SolitonParams& params, int count,
                                       std::uint64_t seed);

// A matrix value with exact x-derivatives up to a requested order and the
// first derivative in each active hierarchy time.
struct MatrixJet {
  std::vector<Eigen::MatrixXd> x;   // x[k] = k-th x-derivative
  std::vector<Eigen::MatrixXd> dt;  // dt[k] = d/dt_{2k+1}

  int order() const { return (int)x.size() - 1; }
  const Eigen::MatrixXd& value() const { return x[0]; }
};

MatrixJet jet_const(const Eigen::MatrixXd& m, int order, int times);
MatrixJet jet_add(const MatrixJet& a, const MatrixJet& b);
MatrixJet jet_sub(const MatrixJet& a, const MatrixJet& b);
MatrixJet jet_mul(const MatrixJet& a, const MatrixJet& b);
// Inverse jets; throws OutsideOmegaError when the value is ill-conditioned.
MatrixJet jet_inv(const MatrixJet& a, double rcond_threshold = 1e-8);

// L with all its jets; d/dt_{2k-1} L = A^{2k-1} L exactly by construction.
MatrixJet exp_action(const SolitonParams& params, const SamplePoint& point, int order);

struct FieldJets {
  MatrixJet L, Q, tQ, V, tV, W;
};

// The explicit solution fields, by jet arithmetic from L. Throws
// OutsideOmegaError when I +- L fails the conditioning check.
FieldJets soliton_fields(const SolitonParams& params, const SamplePoint& point, int order);

// Numerically interprets a jet polynomial on a matrix jet: letters (var, k)
// map to x[k], the order-0 inverse to value()^{-1}.
Eigen::MatrixXd eval_on_jets(const Poly& p, const std::string& var, const MatrixJet& jets);

// || d/dt_{2*time_index+1} F  -  rhs(F-jets) ||_F / (1 + ||rhs||_F)
double pde_residual(const EvolutionRule& rule, const MatrixJet& field, int time_index);

// Residuals of the three auxiliary identities behind the soliton proof:
// tQ_xx = tQ tQ_x;  tQ = A - W;  tQ_t = tQ_xxx - 3 tQ_x^2.
struct LemmaResiduals {
  double riccati;
  double pkdv_shift;
  double pkdv_negative;
};
LemmaResiduals check_lemmas(const SolitonParams& params, const SamplePoint& point);

// Residual of the n-th meta-mKdV hierarchy member on Q's jets at one point,
// against the exact t_{2n-1}-derivative.
double hierarchy_residual_meta(const SolitonParams& params, const SamplePoint& point,
                               int n, const Poly& meta_rhs_n);

// Residual of the transferred alternative-mKdV hierarchy relation on tV:
// d/dt_{2n-1} tV must equal D_t(Q^{-1}Q_x) under Q_t = E_n, evaluated on Q-jets.
double hierarchy_residual_amkdv(const SolitonParams& params, const SamplePoint& point,
                                int n, const Poly& meta_rhs_n);

// CSV table of sampled fields and residuals; one row per point,
// locale-independent formatting.
std::string soliton_csv(const SolitonParams& params, const std::vector<SamplePoint>& points);

}  // namespace nckdv
