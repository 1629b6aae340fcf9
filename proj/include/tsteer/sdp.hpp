#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tsteer/qubit.hpp"

namespace tsteer {

// Dense primal-dual interior-point solver for small block-diagonal SDPs with
// Hermitian blocks of dimension 1 or 2:
//
//   maximize    sum_b <C_b, X_b>
//   subject to  sum_b <A_{j,b}, X_b> = rhs_j,   X_b >= 0,
//
// with <A, B> = Re tr(A^dag B). HKM search direction, Mehrotra
// predictor-corrector, infeasible start. Dimension-1 blocks are stored in the
// (0, 0) corner of a 2x2 matrix; products and traces then work unchanged and
// only inverses, step lengths and initial points special-case the dimension.

struct SdpTerm {
  int block = 0;
  Mat2 coeff;
};

struct SdpConstraint {
  std::vector<SdpTerm> terms;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<SdpTerm> objective;
  std::vector<SdpConstraint> constraints;

  void validate() const {
    if (block_dims.empty()) throw std::invalid_argument("SDP needs at least one block");
    for (int d : block_dims)
      if (d != 1 && d != 2) throw std::invalid_argument("SDP block dimensions must be 1 or 2");
    auto check_terms = [&](const std::vector<SdpTerm>& terms) {
      for (const SdpTerm& t : terms) {
        if (t.block < 0 || t.block >= static_cast<int>(block_dims.size()))
          throw std::invalid_argument("SDP term references a block out of range");
        if (!detail::hermitian_within(t.coeff, 1e-12))
          throw std::invalid_argument("SDP coefficients must be Hermitian");
      }
    };
    check_terms(objective);
    if (constraints.empty()) throw std::invalid_argument("SDP needs at least one constraint");
    for (const SdpConstraint& c : constraints) {
      check_terms(c.terms);
      if (!std::isfinite(c.rhs)) throw std::invalid_argument("SDP right-hand sides must be finite");
    }
  }
};

enum class SdpStatus { optimal, max_iterations, infeasible_input };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iterations: return "max-iterations";
    case SdpStatus::infeasible_input: return "infeasible-input";
  }
  return "unknown";
}

struct SdpResult {
  SdpStatus status = SdpStatus::max_iterations;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;  // |dual_objective - primal_objective|
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<Mat2> x;    // primal blocks
  std::vector<double> y;  // multipliers, dual-feasible side: sum_j y_j A_j >= C
};

namespace detail {

inline double block_ip(const Mat2& a, const Mat2& b) {
  double s = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) s += (std::conj(a(r, c)) * b(r, c)).real();
  return s;
}

inline Mat2 herm_part(const Mat2& m) { return (m + m.adjoint()) / 2.0; }

inline Mat2 inv_pd(const Mat2& s, int dim) {
  if (dim == 1) {
    Mat2 r = Mat2::Zero();
    r(0, 0) = 1.0 / s(0, 0).real();
    return r;
  }
  const double det = s(0, 0).real() * s(1, 1).real() - std::norm(s(0, 1));
  Mat2 r;
  r(0, 0) = s(1, 1) / det;
  r(1, 1) = s(0, 0) / det;
  r(0, 1) = -s(0, 1) / det;
  r(1, 0) = -s(1, 0) / det;
  return r;
}

// Largest alpha >= 0 with X + alpha*D >= 0, for X > 0.
inline double step_to_boundary(const Mat2& x, const Mat2& d, int dim) {
  const double inf = std::numeric_limits<double>::infinity();
  if (dim == 1) {
    const double dv = d(0, 0).real();
    return dv >= 0.0 ? inf : -x(0, 0).real() / dv;
  }
  // det(X + a D) = det(X) + a*mix + a^2*det(D); first positive root is the
  // boundary since both eigenvalues start positive.
  const double c = x(0, 0).real() * x(1, 1).real() - std::norm(x(0, 1));
  const double a = d(0, 0).real() * d(1, 1).real() - std::norm(d(0, 1));
  const double b = x(0, 0).real() * d(1, 1).real() + x(1, 1).real() * d(0, 0).real() -
                   2.0 * (std::conj(x(0, 1)) * d(0, 1)).real();
  const double scale = std::fabs(a) + std::fabs(b) + std::fabs(c);
  if (scale == 0.0) return inf;
  if (std::fabs(a) <= 1e-16 * scale) {
    return b >= 0.0 ? inf : -c / b;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return inf;
  const double sq = std::sqrt(disc);
  const double q = b >= 0.0 ? -(b + sq) / 2.0 : -(b - sq) / 2.0;
  const double r1 = q / a;
  const double r2 = q != 0.0 ? c / q : inf;
  double best = inf;
  if (r1 > 0.0) best = std::min(best, r1);
  if (r2 > 0.0) best = std::min(best, r2);
  return best;
}

}  // namespace detail

inline SdpResult solve_sdp(const SdpProblem& prob, double tol = 1e-8, int max_iterations = 200) {
  prob.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("SDP tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("SDP iteration cap must be >= 1");

  const int nb = static_cast<int>(prob.block_dims.size());
  const int m = static_cast<int>(prob.constraints.size());
  int nu = 0;
  for (int d : prob.block_dims) nu += d;

  // Internal minimization form: minimize <Cm, X> with Cm = -C.
  std::vector<Mat2> cm(nb, Mat2::Zero());
  for (const SdpTerm& t : prob.objective) cm[t.block] -= t.coeff;

  // Per-block list of touching constraints.
  std::vector<std::vector<std::pair<int, Mat2>>> touch(nb);
  Eigen::VectorXd b(m);
  for (int j = 0; j < m; ++j) {
    b(j) = prob.constraints[j].rhs;
    for (const SdpTerm& t : prob.constraints[j].terms) touch[t.block].emplace_back(j, t.coeff);
  }

  double cfrob = 0.0;
  for (int bk = 0; bk < nb; ++bk) cfrob += detail::block_ip(cm[bk], cm[bk]);
  cfrob = std::sqrt(cfrob);
  const double bnorm = b.norm();

  auto apply_a = [&](const std::vector<Mat2>& u, Eigen::VectorXd& out) {
    out.setZero();
    for (int bk = 0; bk < nb; ++bk)
      for (const auto& [j, coeff] : touch[bk]) out(j) += detail::block_ip(coeff, u[bk]);
  };
  auto apply_at = [&](const Eigen::VectorXd& yv, std::vector<Mat2>& out) {
    for (int bk = 0; bk < nb; ++bk) {
      out[bk].setZero();
      for (const auto& [j, coeff] : touch[bk]) out[bk] += yv(j) * coeff;
    }
  };

  double scale = 1.0;
  scale = std::max(scale, b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  for (int bk = 0; bk < nb; ++bk) scale = std::max(scale, cm[bk].cwiseAbs().maxCoeff());

  std::vector<Mat2> x(nb), s(nb), sinv(nb), rd(nb), work(nb), dx(nb), ds(nb), dxa(nb), dsa(nb),
      corr(nb);
  for (int bk = 0; bk < nb; ++bk) {
    x[bk] = Mat2::Zero();
    s[bk] = Mat2::Zero();
    for (int r = 0; r < prob.block_dims[bk]; ++r) {
      x[bk](r, r) = scale;
      s[bk](r, r) = scale;
    }
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd rp(m), ax(m), rhs(m), dy(m), dya(m), asinv(m), acorr(m), aw(m);
  Eigen::MatrixXd schur(m, m), schur0(m, m);

  const double feas_tol = 1e-9;
  // Degenerate optimal faces cap the attainable complementarity near sqrt(eps)
  // in double precision; below that the iterates grind along the boundary
  // without closing the gap. Solves that stall there are still accepted.
  const double accept_gap = std::max(tol, 6e-8);
  const double tau = 0.98;

  SdpResult res;
  res.x.resize(nb);
  res.y.assign(m, 0.0);

  auto finite = [](const Mat2& mm) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (!std::isfinite(mm(r, c).real()) || !std::isfinite(mm(r, c).imag())) return false;
    return true;
  };

  // Degenerate instances can stall or break down late; keep the best iterate
  // seen (by the worst of the three convergence measures) and report that.
  std::vector<Mat2> xb = x;
  Eigen::VectorXd yb = y;
  double best_score = std::numeric_limits<double>::infinity();
  double bp = 0.0, bd = 0.0, bpr = 0.0, bdr = 0.0, bgap = 0.0;
  int since_best = 0;

  // Gram matrix of the constraint map, for projecting a near-feasible iterate
  // exactly onto A(X) = b. Damped steps shrink the primal residual only by
  // (1 - alpha) per iteration, so near-degenerate instances otherwise spend
  // most of their iterations polishing feasibility.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  for (int bk = 0; bk < nb; ++bk) {
    const auto& tl = touch[bk];
    const int nt = static_cast<int>(tl.size());
    for (int p = 0; p < nt; ++p)
      for (int q = p; q < nt; ++q) {
        const double val = detail::block_ip(tl[p].second, tl[q].second);
        gram(tl[p].first, tl[q].first) += val;
        if (p != q) gram(tl[q].first, tl[p].first) += val;
      }
  }
  Eigen::LLT<Eigen::MatrixXd> gram_llt(gram);
  const bool can_project = gram_llt.info() == Eigen::Success;
  std::vector<Mat2> xp(nb);
  Eigen::VectorXd axp(m);

  // While the strict tolerances are still out of reach, bank the best exactly
  // feasible projection of the current iterate; if the iteration exhausts
  // itself at the degeneracy limit, that candidate is the answer.
  bool have_cand = false;
  std::vector<Mat2> xc = x;
  Eigen::VectorXd yc = y;
  double cp = 0.0, cd = 0.0, cpr = 0.0, cdr = 0.0;
  double cgap = std::numeric_limits<double>::infinity();

  auto bank_candidate = [&](double dobj, double rdn) {
    if (!can_project) return;
    apply_a(x, axp);
    Eigen::VectorXd u = gram_llt.solve(b - axp);
    for (int bk = 0; bk < nb; ++bk) {
      xp[bk] = x[bk];
      for (const auto& [j, coeff] : touch[bk]) xp[bk] += u(j) * coeff;
    }
    apply_a(xp, axp);
    const double rpn_p = (b - axp).norm() / (1.0 + bnorm);
    if (rpn_p > feas_tol) return;
    double pobj_p = 0.0, comp_p = 0.0;
    for (int bk = 0; bk < nb; ++bk) {
      // The projection ignores the cone; reject if it left a block indefinite
      // beyond roundoff (an infeasible problem projects to such a point).
      const Mat2& xb2 = xp[bk];
      const double tr = xb2.trace().real();
      const double mineig =
          prob.block_dims[bk] == 1
              ? xb2(0, 0).real()
              : tr / 2.0 - std::sqrt(std::norm(xb2(0, 1)) +
                                     std::pow((xb2(0, 0) - xb2(1, 1)).real() / 2.0, 2));
      if (mineig < -1e-7 * (1.0 + std::fabs(tr))) return;
      pobj_p += detail::block_ip(cm[bk], xp[bk]);
      comp_p += detail::block_ip(xp[bk], s[bk]);
    }
    const double relgap_p =
        std::fabs(comp_p) / (1.0 + std::fabs(pobj_p) + std::fabs(dobj));
    if (relgap_p > accept_gap || relgap_p >= cgap) return;
    have_cand = true;
    xc = xp;
    yc = y;
    cp = pobj_p;
    cd = dobj;
    cpr = rpn_p;
    cdr = rdn;
    cgap = relgap_p;
  };

  bool accepted = false;
  int it = 0;
  for (;; ++it) {
    apply_a(x, ax);
    rp = b - ax;
    apply_at(y, rd);
    for (int bk = 0; bk < nb; ++bk) rd[bk] = cm[bk] - s[bk] - rd[bk];

    double mu = 0.0;
    for (int bk = 0; bk < nb; ++bk) mu += detail::block_ip(x[bk], s[bk]);
    const double comp = mu;
    mu /= nu;

    double pobj = 0.0;
    for (int bk = 0; bk < nb; ++bk) pobj += detail::block_ip(cm[bk], x[bk]);
    const double dobj = b.dot(y);
    double rdn = 0.0;
    for (int bk = 0; bk < nb; ++bk) rdn += detail::block_ip(rd[bk], rd[bk]);
    rdn = std::sqrt(rdn) / (1.0 + cfrob);
    const double rpn = rp.norm() / (1.0 + bnorm);
    const double relgap = comp / (1.0 + std::fabs(pobj) + std::fabs(dobj));

    res.iterations = it;
    const double score = std::max({rpn, rdn, relgap});
    if (score < best_score) {
      best_score = score;
      xb = x;
      yb = y;
      bp = pobj;
      bd = dobj;
      bpr = rpn;
      bdr = rdn;
      bgap = relgap;
      since_best = 0;
    } else {
      ++since_best;
    }

    if (bgap <= tol && bpr <= feas_tol && bdr <= feas_tol) {
      accepted = true;
      break;
    }
    if (relgap <= accept_gap && rdn <= feas_tol) bank_candidate(dobj, rdn);
    if (it >= max_iterations || since_best > 100 || (have_cand && since_best >= 25)) break;

    for (int bk = 0; bk < nb; ++bk) sinv[bk] = detail::inv_pd(s[bk], prob.block_dims[bk]);

    // Schur complement M_jk = sum_b Re tr(A_j X A_k S^-1) over shared blocks.
    schur0.setZero();
    for (int bk = 0; bk < nb; ++bk) {
      const auto& tl = touch[bk];
      const int nt = static_cast<int>(tl.size());
      for (int p = 0; p < nt; ++p) {
        const Mat2 u = tl[p].second * x[bk];
        for (int q = p; q < nt; ++q) {
          const Mat2 v = tl[q].second * sinv[bk];
          const double val = (u(0, 0) * v(0, 0) + u(0, 1) * v(1, 0) + u(1, 0) * v(0, 1) +
                              u(1, 1) * v(1, 1))
                                 .real();
          schur0(tl[p].first, tl[q].first) += val;
          if (p != q) schur0(tl[q].first, tl[p].first) += val;
        }
      }
    }
    schur = schur0;
    Eigen::LLT<Eigen::MatrixXd> llt(schur);
    double ridge = 1e-14 * (1.0 + schur0.diagonal().cwiseAbs().maxCoeff());
    bool factored = llt.info() == Eigen::Success;
    for (int tries = 0; !factored && tries < 5; ++tries, ridge *= 100.0) {
      schur = schur0;
      schur.diagonal().array() += ridge;
      llt.compute(schur);
      factored = llt.info() == Eigen::Success;
    }
    if (!factored) break;

    // Refine against the unridged matrix: recovers the digits lost to the
    // ill-conditioned factorization near the boundary (and the ridge bias).
    auto solve_refined = [&](const Eigen::VectorXd& r) {
      Eigen::VectorXd v = llt.solve(r);
      for (int pass = 0; pass < 2; ++pass) v += llt.solve(r - schur0 * v);
      return v;
    };

    for (int bk = 0; bk < nb; ++bk)
      work[bk] = detail::herm_part(x[bk] * rd[bk] * sinv[bk]);
    apply_a(work, aw);
    apply_a(sinv, asinv);

    // Predictor: affine direction.
    rhs = rp + ax + aw;
    dya = solve_refined(rhs);
    apply_at(dya, dsa);
    for (int bk = 0; bk < nb; ++bk) {
      dsa[bk] = rd[bk] - dsa[bk];
      dxa[bk] = -x[bk] - detail::herm_part(x[bk] * dsa[bk] * sinv[bk]);
    }
    double ap = 1.0, ad = 1.0;
    for (int bk = 0; bk < nb; ++bk) {
      ap = std::min(ap, tau * detail::step_to_boundary(x[bk], dxa[bk], prob.block_dims[bk]));
      ad = std::min(ad, tau * detail::step_to_boundary(s[bk], dsa[bk], prob.block_dims[bk]));
    }
    double mu_aff = 0.0;
    for (int bk = 0; bk < nb; ++bk)
      mu_aff += detail::block_ip(x[bk] + ap * dxa[bk], s[bk] + ad * dsa[bk]);
    mu_aff /= nu;
    double sigma = mu > 0.0 ? std::pow(std::max(0.0, mu_aff / mu), 3) : 0.0;
    sigma = std::min(1.0, sigma);

    // Corrector with centering and Mehrotra cross term.
    for (int bk = 0; bk < nb; ++bk)
      corr[bk] = detail::herm_part(dxa[bk] * dsa[bk] * sinv[bk]);
    apply_a(corr, acorr);
    rhs = rp + ax + aw - sigma * mu * asinv + acorr;
    dy = solve_refined(rhs);
    apply_at(dy, ds);
    for (int bk = 0; bk < nb; ++bk) {
      ds[bk] = rd[bk] - ds[bk];
      dx[bk] = sigma * mu * sinv[bk] - x[bk] - detail::herm_part(x[bk] * ds[bk] * sinv[bk]) -
               corr[bk];
    }

    ap = 1.0;
    ad = 1.0;
    for (int bk = 0; bk < nb; ++bk) {
      ap = std::min(ap, tau * detail::step_to_boundary(x[bk], dx[bk], prob.block_dims[bk]));
      ad = std::min(ad, tau * detail::step_to_boundary(s[bk], ds[bk], prob.block_dims[bk]));
    }
    if (!std::isfinite(ap) || !std::isfinite(ad) || ap <= 0.0 || ad <= 0.0) break;
    bool ok = true;
    for (int bk = 0; bk < nb; ++bk) {
      x[bk] += ap * dx[bk];
      s[bk] += ad * ds[bk];
      ok = ok && finite(x[bk]) && finite(s[bk]);
    }
    y += ad * dy;
    if (!ok || !y.allFinite()) break;
  }

  if (!accepted && have_cand) {
    accepted = true;
    xb = xc;
    yb = yc;
    bp = cp;
    bd = cd;
    bpr = cpr;
    bdr = cdr;
    bgap = cgap;
  }

  res.primal_objective = -bp;
  res.dual_objective = -bd;
  res.gap = std::fabs(res.dual_objective - res.primal_objective);
  res.primal_residual = bpr;
  res.dual_residual = bdr;
  res.status = accepted ? SdpStatus::optimal : SdpStatus::max_iterations;
  for (int bk = 0; bk < nb; ++bk) res.x[bk] = xb[bk];
  // Max-form multipliers: flip the minimization-form sign so that
  // sum_j y_j A_j - C = S >= 0 holds for the reported y.
  for (int j = 0; j < m; ++j) res.y[j] = -yb(j);
  return res;
}

}  // namespace tsteer
