// Copyright 2026 The bwbounds Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bwbounds/conic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>

#include "bwbounds/errors.h"

namespace bwbounds {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
// A run that breaks down numerically after reaching this accuracy returns
// its best iterate as max_iter instead of failing.
constexpr double kNearOptimal = 1e-6;

struct Entry {
  int r;
  int c;
  double v;
};

// One LMI block over the reduced variables. Coefficient entries are stored
// with both triangles expanded.
struct Block {
  int order = 0;
  MatrixXd f0;
  std::vector<int> vars;
  std::vector<std::vector<Entry>> entries;  // aligned with vars
  bool dense_schur = false;
};

struct Reduced {
  int m = 0;
  VectorXd c;
  double c0 = 0.0;
  MatrixXd a;  // independent equality rows only
  VectorXd b;
  std::vector<int> nonneg;
  std::vector<Block> blocks;
  std::vector<int> col_of;  // original variable -> reduced column
  bool inconsistent = false;
  // A' = Q1 R with Q1 orthonormal; the columns of Z span ker A.
  MatrixXd q1, r, z;
};

int Find(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

Reduced Preprocess(const ConicProblem& p) {
  Reduced red;
  std::vector<int> parent(p.num_vars);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [i, j] : p.var_links) {
    const int ri = Find(parent, i), rj = Find(parent, j);
    if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
  }
  red.col_of.assign(p.num_vars, -1);
  for (int v = 0; v < p.num_vars; ++v) {
    const int root = Find(parent, v);
    if (red.col_of[root] < 0) red.col_of[root] = red.m++;
    red.col_of[v] = red.col_of[root];
  }

  red.c = VectorXd::Zero(red.m);
  for (int v = 0; v < p.num_vars; ++v) red.c[red.col_of[v]] += p.c[v];
  red.c0 = p.c0;

  std::vector<char> is_nonneg(red.m, 0);
  for (int v : p.nonneg) is_nonneg[red.col_of[v]] = 1;
  for (int k = 0; k < red.m; ++k) {
    if (is_nonneg[k]) red.nonneg.push_back(k);
  }

  for (const LmiBlock& lb : p.blocks) {
    Block blk;
    blk.order = lb.order;
    blk.f0 = MatrixXd::Zero(lb.order, lb.order);
    std::map<int, std::map<std::pair<int, int>, double>> by_var;
    for (const LmiEntry& e : lb.entries) {
      if (e.var < 0) {
        blk.f0(e.row, e.col) += e.value;
        if (e.row != e.col) blk.f0(e.col, e.row) += e.value;
        continue;
      }
      auto& cell = by_var[red.col_of[e.var]];
      cell[{std::min(e.row, e.col), std::max(e.row, e.col)}] += e.value;
    }
    for (auto& [var, cells] : by_var) {
      std::vector<Entry> list;
      for (auto& [rc, value] : cells) {
        if (value == 0.0) continue;
        list.push_back({rc.first, rc.second, value});
        if (rc.first != rc.second) list.push_back({rc.second, rc.first, value});
      }
      if (list.empty()) continue;
      blk.vars.push_back(var);
      blk.entries.push_back(std::move(list));
    }
    // Pick the cheaper Schur-complement route for this block.
    double nnz = 0.0;
    for (const auto& list : blk.entries) nnz += static_cast<double>(list.size());
    const double n = lb.order, mb = static_cast<double>(blk.vars.size());
    const double sparse_cost = 0.5 * nnz * nnz;
    const double dense_cost = mb * n * n * n + mb * nnz + nnz * n;
    blk.dense_schur = dense_cost < sparse_cost;
    red.blocks.push_back(std::move(blk));
  }

  // Equalities: merge columns, drop empty rows, keep an independent subset.
  std::vector<VectorXd> rows;
  std::vector<double> rhs;
  for (const LinearRow& row : p.equalities) {
    VectorXd dense = VectorXd::Zero(red.m);
    for (auto [v, coef] : row.terms) dense[red.col_of[v]] += coef;
    const double scale = dense.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
      if (std::abs(row.rhs) > 1e-12) red.inconsistent = true;
      continue;
    }
    rows.push_back(dense);
    rhs.push_back(row.rhs);
  }
  const int num_rows = static_cast<int>(rows.size());
  if (num_rows == 0) {
    red.a.resize(0, red.m);
    red.b.resize(0);
    red.q1.resize(red.m, 0);
    red.r.resize(0, 0);
    red.z = MatrixXd::Identity(red.m, red.m);
    return red;
  }
  MatrixXd all(num_rows, red.m);
  VectorXd all_rhs(num_rows);
  for (int i = 0; i < num_rows; ++i) {
    all.row(i) = rows[i].transpose();
    all_rhs[i] = rhs[i];
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(all.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  std::vector<int> keep(rank);
  for (int i = 0; i < rank; ++i) keep[i] = qr.colsPermutation().indices()[i];
  std::sort(keep.begin(), keep.end());
  red.a.resize(rank, red.m);
  red.b.resize(rank);
  for (int i = 0; i < rank; ++i) {
    red.a.row(i) = all.row(keep[i]);
    red.b[i] = all_rhs[keep[i]];
  }
  if (rank < num_rows) {
    // Dependent rows must agree with the minimum-norm solution of the kept ones.
    const MatrixXd gram = red.a * red.a.transpose();
    const VectorXd x0 = red.a.transpose() * gram.ldlt().solve(red.b);
    const VectorXd resid = all * x0 - all_rhs;
    if (resid.cwiseAbs().maxCoeff() > 1e-8 * (1.0 + all_rhs.cwiseAbs().maxCoeff())) {
      red.inconsistent = true;
    }
  }
  Eigen::HouseholderQR<MatrixXd> hqr(red.a.transpose());
  const MatrixXd q = hqr.householderQ() * MatrixXd::Identity(red.m, red.m);
  red.q1 = q.leftCols(rank);
  red.z = q.rightCols(red.m - rank);
  red.r = hqr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
  return red;
}

// S = F0 + sum x_k F_k for one block.
MatrixXd Evaluate(const Block& blk, const VectorXd& x) {
  MatrixXd s = blk.f0;
  for (size_t k = 0; k < blk.vars.size(); ++k) {
    const double xv = x[blk.vars[k]];
    if (xv == 0.0) continue;
    for (const Entry& e : blk.entries[k]) s(e.r, e.c) += xv * e.v;
  }
  return s;
}

// Linear part only: sum dx_k F_k.
MatrixXd EvaluateLinear(const Block& blk, const VectorXd& dx) {
  MatrixXd s = MatrixXd::Zero(blk.order, blk.order);
  for (size_t k = 0; k < blk.vars.size(); ++k) {
    const double xv = dx[blk.vars[k]];
    if (xv == 0.0) continue;
    for (const Entry& e : blk.entries[k]) s(e.r, e.c) += xv * e.v;
  }
  return s;
}

// out[k] += <F_k, K> for every variable of the block.
void AddAdjoint(const Block& blk, const MatrixXd& kmat, VectorXd& out) {
  for (size_t k = 0; k < blk.vars.size(); ++k) {
    double sum = 0.0;
    for (const Entry& e : blk.entries[k]) sum += e.v * kmat(e.r, e.c);
    out[blk.vars[k]] += sum;
  }
}

// M_kl += tr(F_k S^-1 F_l Y).
void AddSchur(const Block& blk, const MatrixXd& sinv, const MatrixXd& y, MatrixXd& m) {
  const int nv = static_cast<int>(blk.vars.size());
  if (blk.dense_schur) {
    for (int l = 0; l < nv; ++l) {
      MatrixXd fy = MatrixXd::Zero(blk.order, blk.order);
      for (const Entry& e : blk.entries[l]) fy.row(e.r) += e.v * y.row(e.c);
      const MatrixXd g = sinv * fy;  // S^-1 F_l Y
      for (int k = 0; k <= l; ++k) {
        double sum = 0.0;
        for (const Entry& e : blk.entries[k]) sum += e.v * g(e.c, e.r);
        m(blk.vars[k], blk.vars[l]) += sum;
        if (k != l) m(blk.vars[l], blk.vars[k]) += sum;
      }
    }
    return;
  }
  for (int k = 0; k < nv; ++k) {
    const auto& ek = blk.entries[k];
    for (int l = k; l < nv; ++l) {
      double sum = 0.0;
      for (const Entry& f : blk.entries[l]) {
        for (const Entry& e : ek) sum += e.v * f.v * sinv(e.c, f.r) * y(f.c, e.r);
      }
      m(blk.vars[k], blk.vars[l]) += sum;
      if (k != l) m(blk.vars[l], blk.vars[k]) += sum;
    }
  }
}

// Largest step a (capped at kInf) keeping L L' + a D positive semidefinite.
double MaxStep(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& d) {
  if (d.rows() == 0) return kInf;
  MatrixXd t = chol.matrixL().solve(d);
  t = chol.matrixL().solve(t.transpose().eval());
  const MatrixXd sym = 0.5 * (t + t.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()[0];
  return lo >= 0.0 ? kInf : -1.0 / lo;
}

double MaxStepVec(const VectorXd& s, const VectorXd& ds) {
  double step = kInf;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (ds[i] < 0.0) step = std::min(step, -s[i] / ds[i]);
  }
  return step;
}

MatrixXd Symmetrize(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

bool AllFinite(const VectorXd& v) { return v.allFinite(); }

struct Iterate {
  VectorXd x, lambda, s, z;  // s, z: LP slack and dual over nonneg entries
  std::vector<MatrixXd> S, Y;
};

class InteriorPoint {
 public:
  InteriorPoint(const Reduced& red, const SolverOptions& opt) : red_(red), opt_(opt) {}

  Solution Run();

 private:
  void Initialize();
  // Right-hand sides and residuals at the current point.
  void ComputeResiduals();
  // Factors Z' H Z + reg I with every diagonal entry then scaled by
  // 1 + rel_reg.
  bool FactorSchur(double reg, double rel_reg);
  // Solves for the direction given complementarity targets. `corr_*` are
  // second-order terms (empty on the predictor pass).
  bool Direction(double sigma_mu, const std::vector<MatrixXd>* corr_sdp,
                 const VectorXd* corr_lp, VectorXd& dx, VectorXd& dl,
                 std::vector<MatrixXd>& dS, std::vector<MatrixXd>& dY, VectorXd& ds,
                 VectorXd& dz);
  void StepLengths(const std::vector<MatrixXd>& dS, const std::vector<MatrixXd>& dY,
                   const VectorXd& ds, const VectorXd& dz, double& ap, double& ad);

  double PrimalObj() const { return red_.c.dot(it_.x) + red_.c0; }
  double DualObj() const {
    double d = red_.b.dot(it_.lambda) + red_.c0;
    for (size_t k = 0; k < red_.blocks.size(); ++k) {
      d -= (red_.blocks[k].f0.cwiseProduct(it_.Y[k])).sum();
    }
    return d;
  }

  const Reduced& red_;
  const SolverOptions& opt_;
  Iterate it_;
  int nu_ = 0;

  // Residuals.
  VectorXd rp_, rd_, rs_;
  std::vector<MatrixXd> rS_;
  // Factorizations.
  std::vector<Eigen::LLT<MatrixXd>> sfac_, yfac_;
  std::vector<MatrixXd> sinv_;
  MatrixXd h_;    // Schur complement
  MatrixXd zhz_;  // Z' H Z before regularization
  Eigen::LLT<MatrixXd> gfac_;
  double pinf_ = 0.0, dinf_ = 0.0;
};

void InteriorPoint::Initialize() {
  const int m = red_.m;
  double fscale = 1.0;
  for (const Block& blk : red_.blocks) {
    fscale = std::max(fscale, blk.f0.cwiseAbs().maxCoeff());
  }
  const double cscale = 1.0 + (m > 0 ? red_.c.cwiseAbs().maxCoeff() : 0.0);
  const double xi_p = 10.0 * fscale;
  const double xi_d = 10.0 * cscale;
  it_.x = VectorXd::Zero(m);
  it_.lambda = VectorXd::Zero(red_.b.size());
  it_.s = VectorXd::Constant(static_cast<Eigen::Index>(red_.nonneg.size()), xi_p);
  it_.z = VectorXd::Constant(static_cast<Eigen::Index>(red_.nonneg.size()), xi_d);
  nu_ = static_cast<int>(red_.nonneg.size());
  for (const Block& blk : red_.blocks) {
    it_.S.push_back(xi_p * MatrixXd::Identity(blk.order, blk.order));
    it_.Y.push_back(xi_d * MatrixXd::Identity(blk.order, blk.order));
    nu_ += blk.order;
  }
}

void InteriorPoint::ComputeResiduals() {
  const int m = red_.m;
  rp_ = red_.b - red_.a * it_.x;
  rd_ = red_.c - red_.a.transpose() * it_.lambda;
  VectorXd ay = VectorXd::Zero(m);
  rS_.resize(red_.blocks.size());
  double rs_max = 0.0;
  for (size_t k = 0; k < red_.blocks.size(); ++k) {
    AddAdjoint(red_.blocks[k], it_.Y[k], ay);
    rS_[k] = Evaluate(red_.blocks[k], it_.x) - it_.S[k];
    if (rS_[k].size() > 0) rs_max = std::max(rs_max, rS_[k].cwiseAbs().maxCoeff());
  }
  rd_ -= ay;
  rs_.resize(static_cast<Eigen::Index>(red_.nonneg.size()));
  for (size_t i = 0; i < red_.nonneg.size(); ++i) {
    rd_[red_.nonneg[i]] -= it_.z[i];
    rs_[i] = it_.x[red_.nonneg[i]] - it_.s[i];
  }
  double bscale = 1.0 + (red_.b.size() ? red_.b.cwiseAbs().maxCoeff() : 0.0);
  double fscale = 1.0;
  for (const Block& blk : red_.blocks) {
    if (blk.order > 0) fscale = std::max(fscale, 1.0 + blk.f0.cwiseAbs().maxCoeff());
  }
  pinf_ = 0.0;
  if (rp_.size()) pinf_ = rp_.cwiseAbs().maxCoeff() / bscale;
  pinf_ = std::max(pinf_, rs_max / fscale);
  if (rs_.size()) pinf_ = std::max(pinf_, rs_.cwiseAbs().maxCoeff());
  const double cscale = 1.0 + (m ? red_.c.cwiseAbs().maxCoeff() : 0.0);
  dinf_ = m ? rd_.cwiseAbs().maxCoeff() / cscale : 0.0;
}

bool InteriorPoint::FactorSchur(double reg, double rel_reg) {
  const int m = red_.m;
  MatrixXd h = MatrixXd::Zero(m, m);
  for (size_t k = 0; k < red_.blocks.size(); ++k) {
    AddSchur(red_.blocks[k], sinv_[k], it_.Y[k], h);
  }
  for (size_t i = 0; i < red_.nonneg.size(); ++i) {
    h(red_.nonneg[i], red_.nonneg[i]) += it_.z[i] / it_.s[i];
  }
  h_ = std::move(h);
  if (red_.z.cols() == 0) return true;
  zhz_ = red_.z.transpose() * h_ * red_.z;
  zhz_ = Symmetrize(zhz_);
  MatrixXd g = zhz_;
  g.diagonal().array() += reg;
  g.diagonal() *= 1.0 + rel_reg;
  gfac_.compute(g);
  return gfac_.info() == Eigen::Success;
}

bool InteriorPoint::Direction(double sigma_mu, const std::vector<MatrixXd>* corr_sdp,
                              const VectorXd* corr_lp, VectorXd& dx, VectorXd& dl,
                              std::vector<MatrixXd>& dS, std::vector<MatrixXd>& dY,
                              VectorXd& ds, VectorXd& dz) {
  const int m = red_.m;
  const size_t nb = red_.blocks.size();
  // T_k = sigma mu S^-1 - Y - S^-1 R_S Y - corr, where R_S = F(x) - S.
  std::vector<MatrixXd> t(nb);
  VectorXd g = VectorXd::Zero(m);
  for (size_t k = 0; k < nb; ++k) {
    t[k] = sigma_mu * sinv_[k] - it_.Y[k] - sinv_[k] * rS_[k] * it_.Y[k];
    if (corr_sdp) t[k] -= (*corr_sdp)[k];
    AddAdjoint(red_.blocks[k], t[k], g);
  }
  const Eigen::Index nn = static_cast<Eigen::Index>(red_.nonneg.size());
  VectorXd tl(nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    tl[i] = sigma_mu / it_.s[i] - it_.z[i] - it_.z[i] / it_.s[i] * rs_[i];
    if (corr_lp) tl[i] -= (*corr_lp)[i];
    g[red_.nonneg[i]] += tl[i];
  }
  const VectorXd h = g - rd_;
  // [H -A'; A 0] [dx; dl] = [h; rp] through the null space of A:
  // dx = dx_p + Z dw with A dx_p = rp, and Z'(H dx - h) = 0.
  const VectorXd dx_p =
      red_.q1 * red_.r.transpose().triangularView<Eigen::Lower>().solve(rp_);
  dx = dx_p;
  if (red_.z.cols() > 0) {
    const VectorXd rhs = red_.z.transpose() * (h - h_ * dx_p);
    VectorXd dw = gfac_.solve(rhs);
    for (int round = 0; round < 2; ++round) {
      const VectorXd res = rhs - zhz_ * dw;
      if (!(res.cwiseAbs().maxCoeff() > 1e-15 * (1.0 + rhs.cwiseAbs().maxCoeff()))) break;
      dw += gfac_.solve(res);
    }
    dx += red_.z * dw;
  }
  if (!AllFinite(dx)) return false;

  // dS, dY, ds, dz follow from dx. The remaining dual-equation residual
  // rd - A'dl - A*(dY) - dz lies in the span of Z (dl absorbs the rest);
  // it is driven down by refining dx through the same operator that
  // produces dY, since H and that operator round differently when S is
  // nearly singular.
  dS.resize(nb);
  dY.resize(nb);
  ds.resize(nn);
  dz.resize(nn);
  VectorXd rhs_l(m);
  for (int round = 0;; ++round) {
    for (size_t k = 0; k < nb; ++k) {
      dS[k] = rS_[k] + EvaluateLinear(red_.blocks[k], dx);
      dY[k] = Symmetrize(t[k] - sinv_[k] * (dS[k] - rS_[k]) * it_.Y[k]);
    }
    for (Eigen::Index i = 0; i < nn; ++i) {
      const double dxi = dx[red_.nonneg[i]];
      ds[i] = rs_[i] + dxi;
      dz[i] = tl[i] - it_.z[i] / it_.s[i] * dxi;
    }
    rhs_l = rd_;
    for (size_t k = 0; k < nb; ++k) {
      VectorXd ay = VectorXd::Zero(m);
      AddAdjoint(red_.blocks[k], dY[k], ay);
      rhs_l -= ay;
    }
    for (Eigen::Index i = 0; i < nn; ++i) rhs_l[red_.nonneg[i]] -= dz[i];
    if (red_.z.cols() == 0 || round == 3) break;
    const VectorXd e = red_.z.transpose() * rhs_l;
    if (!(e.cwiseAbs().maxCoeff() > 1e-14 * (1.0 + rd_.cwiseAbs().maxCoeff()))) break;
    const VectorXd dw = gfac_.solve(e);
    if (!AllFinite(dw)) break;
    dx -= red_.z * dw;
  }
  dl = red_.r.triangularView<Eigen::Upper>().solve(red_.q1.transpose() * rhs_l);
  if (!AllFinite(dl)) return false;
  return true;
}

void InteriorPoint::StepLengths(const std::vector<MatrixXd>& dS,
                                const std::vector<MatrixXd>& dY, const VectorXd& ds,
                                const VectorXd& dz, double& ap, double& ad) {
  ap = MaxStepVec(it_.s, ds);
  ad = MaxStepVec(it_.z, dz);
  for (size_t k = 0; k < red_.blocks.size(); ++k) {
    ap = std::min(ap, MaxStep(sfac_[k], dS[k]));
    ad = std::min(ad, MaxStep(yfac_[k], dY[k]));
  }
}

Solution InteriorPoint::Run() {
  Solution sol;
  Initialize();
  const size_t nb = red_.blocks.size();
  sfac_.resize(nb);
  yfac_.resize(nb);
  sinv_.resize(nb);
  double best_merit = kInf;
  int stall = 0;
  sol.status = SolveStatus::kMaxIter;
  Iterate best_it;
  double best_seen = kInf;

  int iter = 0;
  for (; iter <= opt_.max_iters; ++iter) {
    ComputeResiduals();
    double comp = it_.s.dot(it_.z);
    for (size_t k = 0; k < nb; ++k) comp += it_.S[k].cwiseProduct(it_.Y[k]).sum();
    const double mu = nu_ > 0 ? comp / nu_ : 0.0;
    const double pobj = PrimalObj(), dobj = DualObj();
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    if (!std::isfinite(pobj) || !std::isfinite(dobj)) {
      sol.status = SolveStatus::kNumericFailure;
      break;
    }
    if (gap <= opt_.tol && pinf_ <= opt_.tol && dinf_ <= opt_.tol) {
      sol.status = SolveStatus::kOptimal;
      break;
    }
    // Divergence signals: a dual ray (primal infeasible) or a primal ray.
    if (dinf_ <= opt_.tol && dobj > 1e10 * (1.0 + std::abs(pobj)) && iter > 20) {
      sol.status = SolveStatus::kInfeasible;
      break;
    }
    if (pinf_ <= opt_.tol && pobj < -1e10 && iter > 20) {
      sol.status = SolveStatus::kUnboundedOrInfeasibleDual;
      break;
    }
    const double merit = std::max({gap, pinf_, dinf_});
    if (merit < best_seen) {
      best_seen = merit;
      best_it = it_;
    }
    if (iter == opt_.max_iters) break;

    if (merit < 0.9 * best_merit) {
      best_merit = merit;
      stall = 0;
    } else if (++stall > 30) {
      break;
    }

    bool factored = true;
    for (size_t k = 0; k < nb && factored; ++k) {
      sfac_[k].compute(it_.S[k]);
      yfac_[k].compute(it_.Y[k]);
      factored = sfac_[k].info() == Eigen::Success && yfac_[k].info() == Eigen::Success;
      if (factored) sinv_[k] = sfac_[k].solve(MatrixXd::Identity(it_.S[k].rows(), it_.S[k].rows()));
    }
    if (!factored) {
      sol.status = SolveStatus::kNumericFailure;
      break;
    }
    bool ok = FactorSchur(opt_.regularization, 0.0);
    // Retries shift each diagonal entry in proportion to itself. The entries
    // span many orders of magnitude near the optimum, and a uniform shift
    // large enough to matter for the big ones swamps the small ones.
    for (int attempt = 0; !ok && attempt < opt_.retries; ++attempt) {
      ok = FactorSchur(opt_.regularization, opt_.regularization * 1e-2 * std::pow(1e2, attempt));
    }
    if (!ok) {
      sol.status = SolveStatus::kNumericFailure;
      break;
    }

    VectorXd dx, dl, ds, dz;
    std::vector<MatrixXd> dS, dY;
    if (!Direction(0.0, nullptr, nullptr, dx, dl, dS, dY, ds, dz)) {
      sol.status = SolveStatus::kNumericFailure;
      break;
    }
    double ap, ad;
    StepLengths(dS, dY, ds, dz, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double comp_aff = (it_.s + ap * ds).dot(it_.z + ad * dz);
    for (size_t k = 0; k < nb; ++k) {
      comp_aff += (it_.S[k] + ap * dS[k]).cwiseProduct(it_.Y[k] + ad * dY[k]).sum();
    }
    const double mu_aff = nu_ > 0 ? comp_aff / nu_ : 0.0;
    double sigma = mu > 0 ? std::pow(std::max(0.0, mu_aff) / mu, 3) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    std::vector<MatrixXd> corr(nb);
    for (size_t k = 0; k < nb; ++k) corr[k] = sinv_[k] * dS[k] * dY[k];
    VectorXd corr_lp(ds.size());
    for (Eigen::Index i = 0; i < ds.size(); ++i) corr_lp[i] = ds[i] * dz[i] / it_.s[i];
    if (!Direction(sigma * mu, &corr, &corr_lp, dx, dl, dS, dY, ds, dz)) {
      sol.status = SolveStatus::kNumericFailure;
      break;
    }
    StepLengths(dS, dY, ds, dz, ap, ad);
    const double gamma = 0.9 + 0.09 * std::min({1.0, ap, ad});
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);

    it_.x += ap * dx;
    it_.s += ap * ds;
    it_.lambda += ad * dl;
    it_.z += ad * dz;
    for (size_t k = 0; k < nb; ++k) {
      it_.S[k] = Symmetrize(it_.S[k] + ap * dS[k]);
      it_.Y[k] = Symmetrize(it_.Y[k] + ad * dY[k]);
    }
  }
  sol.iterations = iter;
  if (sol.status == SolveStatus::kNumericFailure && best_seen <= kNearOptimal) {
    sol.status = SolveStatus::kMaxIter;
  }
  if (sol.status == SolveStatus::kMaxIter && best_seen < kInf) {
    it_ = std::move(best_it);
    ComputeResiduals();
  }
  sol.x.assign(it_.x.data(), it_.x.data() + it_.x.size());
  sol.primal_obj = PrimalObj();
  sol.dual_obj = DualObj();
  sol.gap = std::abs(sol.primal_obj - sol.dual_obj) / (1.0 + std::abs(sol.primal_obj));
  sol.dual_residual = dinf_;
  return sol;
}

}  // namespace

std::string_view ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnboundedOrInfeasibleDual:
      return "unbounded_or_infeasible_dual";
    case SolveStatus::kMaxIter:
      return "max_iter";
    case SolveStatus::kNumericFailure:
      return "numeric_failure";
  }
  return "unknown";
}

void ConicProblem::Validate() const {
  if (num_vars < 1) throw InputError("conic problem needs at least one variable");
  if (static_cast<int>(c.size()) != num_vars) throw InputError("objective size mismatch");
  auto check_var = [&](int v) {
    if (v < 0 || v >= num_vars) throw InputError("variable index out of range");
  };
  for (const LinearRow& row : equalities) {
    for (auto [v, coef] : row.terms) check_var(v);
  }
  for (int v : nonneg) check_var(v);
  for (auto [i, j] : var_links) {
    check_var(i);
    check_var(j);
  }
  for (const LmiBlock& blk : blocks) {
    if (blk.order < 1) throw InputError("LMI block order must be positive");
    for (const LmiEntry& e : blk.entries) {
      if (e.var < -1 || e.var >= num_vars) throw InputError("LMI variable out of range");
      if (e.row < 0 || e.col < 0 || e.row >= blk.order || e.col >= blk.order) {
        throw InputError("LMI entry out of range");
      }
      if (!std::isfinite(e.value)) throw InputError("LMI entry is not finite");
    }
  }
}

void ConicProblem::Dump(std::ostream& out) const {
  out.precision(17);
  out << "vars " << num_vars << "\n";
  out << "obj " << c0 << "\n";
  for (int v = 0; v < num_vars; ++v) {
    if (c[v] != 0.0) out << "c " << v << " " << c[v] << "\n";
  }
  for (size_t r = 0; r < equalities.size(); ++r) {
    for (auto [v, coef] : equalities[r].terms) out << "eq " << r << " " << v << " " << coef << "\n";
    out << "rhs " << r << " " << equalities[r].rhs << "\n";
  }
  for (int v : nonneg) out << "nonneg " << v << "\n";
  for (auto [i, j] : var_links) out << "link " << i << " " << j << "\n";
  for (size_t k = 0; k < blocks.size(); ++k) {
    out << "block " << k << " " << blocks[k].order << "\n";
    for (const LmiEntry& e : blocks[k].entries) {
      out << k << " " << e.var + 1 << " " << e.row << " " << e.col << " " << e.value << "\n";
    }
  }
}

double Solution::max_residual() const {
  return std::max({eq_residual, dual_residual, std::max(0.0, -min_lmi_eig),
                   std::max(0.0, -min_nonneg)});
}

Solution Solve(const ConicProblem& problem, const SolverOptions& options) {
  problem.Validate();
  const Reduced red = Preprocess(problem);
  Solution sol;
  if (red.inconsistent) {
    sol.status = SolveStatus::kInfeasible;
    sol.x.assign(problem.num_vars, 0.0);
    sol.primal_obj = kInf;
    sol.dual_obj = kInf;
    sol.gap = kInf;
    return sol;
  }
  InteriorPoint ipm(red, options);
  Solution reduced = ipm.Run();

  sol = reduced;
  sol.x.assign(problem.num_vars, 0.0);
  for (int v = 0; v < problem.num_vars; ++v) sol.x[v] = reduced.x[red.col_of[v]];

  // Residuals measured on the original problem.
  double bscale = 1.0;
  for (const LinearRow& row : problem.equalities) bscale = std::max(bscale, 1.0 + std::abs(row.rhs));
  double eq = 0.0;
  for (const LinearRow& row : problem.equalities) {
    double lhs = 0.0;
    for (auto [v, coef] : row.terms) lhs += coef * sol.x[v];
    eq = std::max(eq, std::abs(lhs - row.rhs));
  }
  sol.eq_residual = eq / bscale;
  double min_eig = kInf;
  for (const Block& blk : red.blocks) {
    if (blk.order == 0) continue;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(
        Evaluate(blk, Eigen::Map<const VectorXd>(reduced.x.data(), red.m)),
        Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues()[0]);
  }
  sol.min_lmi_eig = std::isfinite(min_eig) ? min_eig : 0.0;
  double min_nn = kInf;
  for (int v : problem.nonneg) min_nn = std::min(min_nn, sol.x[v]);
  sol.min_nonneg = std::isfinite(min_nn) ? min_nn : 0.0;

  if (sol.status == SolveStatus::kOptimal && sol.max_residual() > options.tol) {
    sol.status = SolveStatus::kMaxIter;
  }
  return sol;
}

double SafeLowerBound(const Solution& solution) {
  if (solution.status != SolveStatus::kOptimal && solution.status != SolveStatus::kMaxIter) {
    throw BoundError(std::string("no dual bound available: solver status ") +
                     std::string(ToString(solution.status)));
  }
  if (!std::isfinite(solution.dual_obj) || !std::isfinite(solution.gap)) {
    throw BoundError("dual objective is not finite");
  }
  return solution.dual_obj - 10.0 * (solution.gap + solution.max_residual()) - 1e-9;
}

}  // namespace bwbounds
