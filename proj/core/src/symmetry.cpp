#include "engel/symmetry.hpp"

#include "engel/elliptic.hpp"
#include "engel/errors.hpp"
#include "engel/expmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace engel {

namespace {

constexpr double kFixedBand = 1e-10;

void check_index(int i) {
  if (i < 0 || i > 3) throw DomainError("symmetry index must be 0..3, got " + std::to_string(i));
}

bool near0(double v) { return std::abs(v) < kFixedBand; }

Covector with(const Covector& l, double theta, double c, double alpha) {
  Covector out = l;
  out.theta = theta;
  out.c = c;
  out.alpha = alpha;
  return out;
}

}  // namespace

bool time_reversing(int i, Family causal) {
  check_index(i);
  if (i == 0) return false;
  return causal == Family::Timelike ? i != 1 : i != 3;
}

SymmetricPair apply_preimage(int i, const Covector& lambda, double t, SymConvention conv) {
  check_index(i);
  if (lambda.causal == Family::Lightlike) throw StratumError("apply_preimage: lightlike covector");
  if (i == 0) {
    Covector out = lambda;
    out.branch = lambda.branch < 0 ? 1 : -1;
    out.c = -lambda.c;
    if (lambda.causal == Family::Spacelike) out.alpha = -lambda.alpha;
    return {out, t};
  }
  const Covector l = time_reversing(i, lambda.causal) ? vertical_flow(lambda, t) : lambda;
  const bool printed = conv == SymConvention::Printed;
  if (lambda.causal == Family::Timelike) {
    switch (i) {
      case 1: return {with(l, -l.theta, -l.c, -l.alpha), t};
      case 2: return {with(l, l.theta, -l.c, l.alpha), t};
      default: return {with(l, -l.theta, l.c, -l.alpha), t};
    }
  }
  switch (i) {
    case 1: return {with(l, l.theta, -l.c, printed ? -l.alpha : l.alpha), t};
    case 2: return {with(l, -l.theta, l.c, l.alpha), t};
    default: return {with(l, -l.theta, -l.c, printed ? -l.alpha : l.alpha), t};
  }
}

GroupPoint apply_image(int i, const GroupPoint& q, Family causal) {
  check_index(i);
  const double x1 = q.x1, x2 = q.x2, y = q.y, z = q.z;
  if (causal == Family::Timelike) {
    switch (i) {
      case 0: return {-x1, x2, -y, z};
      case 1: return {x1, -x2, -y, -z};
      case 2: return {x1, x2, -y, z - x1 * y};
      default: return {x1, -x2, y, x1 * y - z};
    }
  }
  if (causal == Family::Spacelike) {
    switch (i) {
      case 0: return {x1, -x2, -y, -z};
      case 1: return {x1, x2, -y, z - x1 * y};
      case 2: return {-x1, x2, y, z - x1 * y};
      default: return {-x1, x2, -y, z};
    }
  }
  throw StratumError("apply_image: no symmetry action on lightlike points");
}

double check_commutation(int i, const Covector& lambda, double t, SymConvention conv) {
  const SymmetricPair p = apply_preimage(i, lambda, t, conv);
  const GroupPoint lhs = exp_map(p.lambda, p.t);
  const GroupPoint rhs = apply_image(i, exp_map(lambda, t), lambda.causal);
  return (lhs.vec() - rhs.vec()).norm() / std::max(1.0, rhs.vec().norm());
}

bool fixed_image(int i, const GroupPoint& q, Family causal) {
  check_index(i);
  if (i == 0) {
    return causal == Family::Timelike ? near0(q.x1) && near0(q.y) : near0(q.x2) && near0(q.y) && near0(q.z);
  }
  if (causal == Family::Timelike) {
    switch (i) {
      case 1: return near0(q.x2) && near0(q.y) && near0(q.z);
      case 2: return near0(q.y);
      default: return near0(q.x2) && near0(q.z - 0.5 * q.x1 * q.y);
    }
  }
  switch (i) {
    case 1: return near0(q.y);
    case 2: return near0(q.x1);
    default: return near0(q.x1) && near0(q.y);
  }
}

bool fixed_preimage(int i, const Covector& lambda, double t) {
  check_index(i);
  const Stratum s = classify(lambda);
  if (s == Stratum::LIGHT_plus || s == Stratum::LIGHT_minus || s == Stratum::UNRESOLVED_BOUNDARY) {
    throw StratumError(std::string("fixed_preimage: no condition list for ") + to_string(s));
  }
  if (i == 0) return false;  // epsilon^0 changes the branch

  double sn_tau = 0.0, cn_tau = 1.0, tau = 0.0;
  if (is_rectifiable(s) && s != Stratum::SL_C4) {
    const RectifiedCoords rc = rectify(lambda);
    tau = rc.psi0 + 0.5 * rc.ae * t;
    const JacobiBundle j = jacobi(tau, rc.k2);
    sn_tau = j.sn;
    cn_tau = j.cn;
  }
  const Covector r = reduce_branch(lambda);

  if (is_timelike(s)) {
    switch (i) {
      case 1: return s == Stratum::TL_C00 && near0(r.theta);
      case 2: return s == Stratum::TL_C00 || ((s == Stratum::TL_Cplus || s == Stratum::TL_Cminus) && near0(tau));
      default: return (s == Stratum::TL_C0 || s == Stratum::TL_C00) && near0(r.theta - 0.5 * r.c * t);
    }
  }
  switch (i) {
    case 1:
      if (s == Stratum::SL_C1 || s == Stratum::SL_C2) return near0(sn_tau);
      if (s == Stratum::SL_C5 || s == Stratum::SL_C7) return near0(r.c);
      return false;
    case 2:
      if (s == Stratum::SL_C1) return near0(cn_tau);
      if (s == Stratum::SL_C3) return near0(sn_tau);
      if (s == Stratum::SL_C5 || s == Stratum::SL_C6 || s == Stratum::SL_C7) return near0(r.theta - 0.5 * r.c * t);
      return false;
    default:
      if (s == Stratum::SL_C5 || s == Stratum::SL_C7) return near0(r.theta) && near0(r.c);
      return false;
  }
}

}  // namespace engel
