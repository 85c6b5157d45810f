#include "nckdv/solitonlab.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cstdio>
#include <random>

#include "nckdv/chart.hpp"
#include "nckdv/parser.hpp"

namespace nckdv {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double rcond(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  return smax == 0.0 ? 0.0 : smin / smax;
}

double rel_residual(const Eigen::MatrixXd& lhs, const Eigen::MatrixXd& rhs) {
  return (lhs - rhs).norm() / (1.0 + rhs.norm());
}

}  // namespace

SolitonParams random_params(int dim, int num_times, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // distinct eigenvalues in [0.5, 2], conjugated by a random orthogonal matrix
  Eigen::VectorXd diag(dim);
  for (int i = 0; i < dim; ++i)
    diag(i) = 0.5 + 1.5 * (i + 0.1 + 0.8 * unit(rng)) / dim;

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd O = qr.householderQ();

  SolitonParams p;
  p.A = O * diag.asDiagonal() * O.transpose();
  p.num_times = num_times;

  p.B = Eigen::MatrixXd(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) p.B(i, j) = 2.0 * unit(rng) - 1.0;
  double nb = p.B.operatorNorm();
  if (nb > 0.7) p.B *= 0.7 / nb;
  return p;
}

std::vector<SamplePoint> sample_points(const SolitonParams& params, int count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int m = params.coords();
  const int d = params.dim();
  const double na = params.A.operatorNorm();

  std::vector<double> box(m);
  double scale = 1.0;
  for (int k = 0; k < m; ++k) {
    scale *= (k == 0) ? na : na * na;
    box[k] = 0.3 / std::max(scale, 1.0);
  }

  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  std::vector<SamplePoint> out;
  for (int i = 0; i < count; ++i) {
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      SamplePoint pt(m);
      for (int k = 0; k < m; ++k) pt[k] = box[k] * unit(rng);
      Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(d, d);
      Eigen::MatrixXd ak = params.A;
      for (int k = 0; k < m; ++k) {
        phi += ak * pt[k];
        ak = ak * params.A * params.A;
      }
      Eigen::MatrixXd L = phi.exp() * params.B;
      if (rcond(id - L) >= 1e-3 && rcond(id + L) >= 1e-3 && rcond(id - L * L) >= 1e-3) {
        out.push_back(std::move(pt));
        found = true;
      }
    }
    if (!found)
      throw Error("sample_points: no in-Omega point found after 100 attempts");
  }
  return out;
}

MatrixJet jet_const(const Eigen::MatrixXd& m, int order, int times) {
  MatrixJet j;
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  j.x.assign(order + 1, zero);
  j.x[0] = m;
  j.dt.assign(times, zero);
  return j;
}

MatrixJet jet_add(const MatrixJet& a, const MatrixJet& b) {
  MatrixJet j = a;
  for (std::size_t k = 0; k < j.x.size(); ++k) j.x[k] += b.x[k];
  for (std::size_t k = 0; k < j.dt.size(); ++k) j.dt[k] += b.dt[k];
  return j;
}

MatrixJet jet_sub(const MatrixJet& a, const MatrixJet& b) {
  MatrixJet j = a;
  for (std::size_t k = 0; k < j.x.size(); ++k) j.x[k] -= b.x[k];
  for (std::size_t k = 0; k < j.dt.size(); ++k) j.dt[k] -= b.dt[k];
  return j;
}

MatrixJet jet_mul(const MatrixJet& a, const MatrixJet& b) {
  MatrixJet j;
  const int order = a.order();
  j.x.resize(order + 1);
  for (int k = 0; k <= order; ++k) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(a.x[0].rows(), b.x[0].cols());
    for (int i = 0; i <= k; ++i) acc += binom(k, i) * a.x[i] * b.x[k - i];
    j.x[k] = std::move(acc);
  }
  j.dt.resize(a.dt.size());
  for (std::size_t k = 0; k < a.dt.size(); ++k)
    j.dt[k] = a.dt[k] * b.x[0] + a.x[0] * b.dt[k];
  return j;
}

MatrixJet jet_inv(const MatrixJet& a, double rcond_threshold) {
  if (rcond(a.x[0]) < rcond_threshold)
    throw OutsideOmegaError("jet_inv: matrix below the conditioning threshold");
  MatrixJet j;
  const int order = a.order();
  Eigen::MatrixXd z0 = a.x[0].inverse();
  j.x.resize(order + 1);
  j.x[0] = z0;
  for (int k = 1; k <= order; ++k) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(z0.rows(), z0.cols());
    for (int i = 0; i < k; ++i) acc += binom(k, i) * j.x[i] * a.x[k - i];
    j.x[k] = -acc * z0;
  }
  j.dt.resize(a.dt.size());
  for (std::size_t k = 0; k < a.dt.size(); ++k) j.dt[k] = -z0 * a.dt[k] * z0;
  return j;
}

MatrixJet exp_action(const SolitonParams& params, const SamplePoint& point, int order) {
  const int d = params.dim();
  const int m = params.coords();
  if ((int)point.size() != m)
    throw Error("exp_action: point has wrong number of coordinates");

  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(d, d);
  std::vector<Eigen::MatrixXd> odd_powers(m);  // A, A^3, A^5, ...
  Eigen::MatrixXd ak = params.A;
  for (int k = 0; k < m; ++k) {
    odd_powers[k] = ak;
    phi += ak * point[k];
    ak = ak * params.A * params.A;
  }

  Eigen::MatrixXd L0 = phi.exp() * params.B;

  MatrixJet j;
  j.x.resize(order + 1);
  j.x[0] = L0;
  for (int k = 1; k <= order; ++k) j.x[k] = params.A * j.x[k - 1];
  j.dt.resize(m);
  for (int k = 0; k < m; ++k) j.dt[k] = odd_powers[k] * L0;
  return j;
}

FieldJets soliton_fields(const SolitonParams& params, const SamplePoint& point, int order) {
  const int d = params.dim();
  const int m = params.coords();

  FieldJets f;
  f.L = exp_action(params, point, order);

  MatrixJet id = jet_const(Eigen::MatrixXd::Identity(d, d), order, m);
  MatrixJet cA = jet_const(params.A, order, m);
  MatrixJet cAinv = jet_const(params.A.inverse(), order, m);

  MatrixJet ImL = jet_sub(id, f.L);
  MatrixJet IpL = jet_add(id, f.L);
  MatrixJet ImL_inv = jet_inv(ImL);
  MatrixJet IpL_inv = jet_inv(IpL);
  MatrixJet ALpLA = jet_add(jet_mul(cA, f.L), jet_mul(f.L, cA));

  f.Q = jet_mul(ImL_inv, jet_mul(cAinv, IpL));
  f.tQ = jet_mul(IpL_inv, jet_mul(cA, ImL));
  f.V = jet_mul(jet_inv(jet_sub(id, jet_mul(f.L, f.L))), ALpLA);
  f.W = jet_mul(IpL_inv, ALpLA);
  f.tV = jet_mul(IpL_inv,
                 jet_mul(cA, jet_mul(IpL_inv,
                                     jet_mul(ALpLA, jet_mul(ImL_inv, jet_mul(cAinv, IpL))))));
  return f;
}

Eigen::MatrixXd eval_on_jets(const Poly& p, const std::string& var, const MatrixJet& jets) {
  const auto d = jets.x[0].rows();
  Eigen::MatrixXd inv_value;
  bool have_inv = false;

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (const auto& [w, c] : p.terms()) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(d, d);
    for (const Letter& l : w) {
      if (l.var != var)
        throw UnknownVariableError("eval_on_jets: unexpected variable '" + l.var + "'");
      if (l.inverted) {
        if (!have_inv) {
          inv_value = jets.x[0].inverse();
          have_inv = true;
        }
        acc = acc * inv_value;
      } else {
        if (l.order > jets.order())
          throw InsufficientJetOrderError("eval_on_jets: jet order " +
                                          std::to_string(jets.order()) +
                                          " < required " + std::to_string(l.order));
        acc = acc * jets.x[l.order];
      }
    }
    out += to_double(c) * acc;
  }
  return out;
}

double pde_residual(const EvolutionRule& rule, const MatrixJet& field, int time_index) {
  if (time_index < 0 || time_index >= (int)field.dt.size())
    throw Error("pde_residual: no derivative carried for the requested time");
  Eigen::MatrixXd rhs = eval_on_jets(rule.rhs, rule.variable, field);
  return rel_residual(field.dt[time_index], rhs);
}

LemmaResiduals check_lemmas(const SolitonParams& params, const SamplePoint& point) {
  FieldJets f = soliton_fields(params, point, 3);
  const auto& tQ = f.tQ;

  LemmaResiduals r{};
  r.riccati = rel_residual(tQ.x[2], tQ.x[0] * tQ.x[1]);
  r.pkdv_shift = rel_residual(tQ.x[0], params.A - f.W.x[0]);
  r.pkdv_negative =
      rel_residual(tQ.dt[1], Eigen::MatrixXd(tQ.x[3] - 3.0 * tQ.x[1] * tQ.x[1]));
  return r;
}

double hierarchy_residual_meta(const SolitonParams& params, const SamplePoint& point,
                               int n, const Poly& meta_rhs_n) {
  if (n > params.num_times && !(n == 1 || (n == 2 && params.coords() >= 2)))
    throw Error("hierarchy_residual_meta: n exceeds the carried times");
  FieldJets f = soliton_fields(params, point, std::max(3, 2 * n - 1));
  Eigen::MatrixXd rhs = eval_on_jets(meta_rhs_n, "Q", f.Q);
  return rel_residual(f.Q.dt[n - 1], rhs);
}

double hierarchy_residual_amkdv(const SolitonParams& params, const SamplePoint& point,
                                int n, const Poly& meta_rhs_n) {
  // transferred flow: d/dt tV = D_t(Q^{-1} Q_x) under Q_t = E_n, as a
  // polynomial in Q-jets only
  Poly tv = parse_expr("inv(Q)*Q_x");
  Poly flow = t_derive(tv, EvolutionRule{"Q", meta_rhs_n});
  FieldJets f = soliton_fields(params, point, std::max(3, 2 * n));
  Eigen::MatrixXd rhs = eval_on_jets(flow, "Q", f.Q);
  return rel_residual(f.tV.dt[n - 1], rhs);
}

std::string soliton_csv(const SolitonParams& params, const std::vector<SamplePoint>& points) {
  const int m = params.coords();
  const bool scalar = params.dim() == 1;
  const Registry reg = Registry::standard();

  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };

  std::string out;
  for (int k = 0; k < m; ++k) out += (k ? "," : "") + ("t" + std::to_string(2 * k + 1));
  static const char* fields[] = {"L", "Q", "tQ", "V", "tV", "W"};
  for (const char* f : fields) {
    out += std::string(",") + f + "_fro";
    if (scalar) out += std::string(",") + f + "_val";
  }
  out += ",res_meta,res_mirror_meta,res_mkdv,res_amkdv,res_pkdv\n";

  for (const auto& pt : points) {
    FieldJets f = soliton_fields(params, pt, 3);
    std::string row;
    for (int k = 0; k < m; ++k) row += (k ? "," : "") + fmt(pt[k]);
    const MatrixJet* js[] = {&f.L, &f.Q, &f.tQ, &f.V, &f.tV, &f.W};
    for (const MatrixJet* j : js) {
      row += "," + fmt(j->value().norm());
      if (scalar) row += "," + fmt(j->value()(0, 0));
    }
    row += "," + fmt(pde_residual(reg.rule("meta"), f.Q, 1));
    row += "," + fmt(pde_residual(reg.rule("mirror_meta"), f.tQ, 1));
    row += "," + fmt(pde_residual(reg.rule("mkdv"), f.V, 1));
    row += "," + fmt(pde_residual(reg.rule("amkdv"), f.tV, 1));
    row += "," + fmt(pde_residual(reg.rule("pkdv"), f.W, 1));
    out += row + "\n";
  }
  return out;
}

}  // namespace nckdv
