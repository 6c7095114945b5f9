// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/closed_forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace clusterfusion {

namespace {

void check_strength(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(p) + " outside [0, 1]");
}

// Damping factor a single dephasing pass of strength p puts on a one-bit
// off-diagonal; fidelities below are averages of products of these.
inline double damp(double p) { return std::sqrt(1.0 - p); }

}  // namespace

double chain_fidelity(int q, double p) {
  if (q < 2 || q > 10) throw std::invalid_argument("chain_fidelity: q outside 2..10");
  check_strength(p, "p");
  const double s = damp(p);
  return std::abs((2.0 + 2.0 * s - p) * std::pow(p - 2.0, q - 2)) / std::pow(2.0, q);
}

PrimitiveMetrics primitive_metrics(double p) {
  check_strength(p, "p");
  const double s = damp(p);
  return {0.25 * (2.0 + 2.0 * s - p), 0.25 * (p - 2.0) * (p - 2.0), 0.25 * (p - 2.0 * s)};
}

ThreeChainMetrics three_chain_metrics(double p) {
  check_strength(p, "p");
  const double s = damp(p);
  ThreeChainMetrics out;
  out.fidelity = chain_fidelity(3, p);
  out.negativity_edge = (-2.0 * (1.0 + s * s * s) + p * (4.0 - p)) / 8.0;
  out.negativity_middle = (2.0 - p) * (p - 2.0 * s) / 8.0;
  return out;
}

double edge_negativity_death() {
  return bisect_root([](double p) { return three_chain_metrics(p).negativity_edge; }, 0.0, 1.0);
}

double middle_negativity_death() {
  return bisect_root([](double p) { return three_chain_metrics(p).negativity_middle; }, 0.0, 1.0);
}

double fidelity_m33(double p1, double p2) {
  check_strength(p1, "p1");
  check_strength(p2, "p2");
  const double s1 = damp(p1), s2 = damp(p2);
  const double e = 1.0 + s1 * s2;            // end qubits: one pass each interval
  const double f = 1.0 + s1 * s1 * s2;       // once-fused qubits
  const double c = 1.0 + s1 * s1 * s2 * s2;  // center qubit, fused twice
  return e * e * f * f * c / 32.0;
}

double fidelity_m33_expanded(double p1, double p2) {
  check_strength(p1, "p1");
  check_strength(p2, "p2");
  const double P = 1.0 - p1, Q = 1.0 - p2;
  return (1.0 + 2.0 * std::pow(P, 3.5) * std::pow(Q, 2.5) + std::pow(P, 4.0) * std::pow(Q, 3.0) +
          2.0 * std::sqrt(P * Q) + 2.0 * std::pow(P, 2.5) * (std::pow(Q, 1.5) + Q * Q) +
          2.0 * P * P * P * (Q * Q + std::pow(Q, 2.5)) +
          2.0 * P * (std::sqrt(Q) + Q) * (1.0 + std::sqrt(P * Q)) +
          P * P * Q * (1.0 + Q + 2.0 * std::sqrt(P) * Q) +
          2.0 * std::pow(P, 1.5) * (Q + 2.0 * std::sqrt(P) * std::pow(Q, 1.5))) /
         32.0;
}

double fidelity_m24(double p1, double p2, double p3) {
  check_strength(p1, "p1");
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  const double s1 = damp(p1), s2 = damp(p2), s3 = damp(p3);
  return (1.0 + s1) * (1.0 + s1 * s2 * s3) * (1.0 + s1 * s1 * s2 * s3) *
         (1.0 + s1 * s1 * s2 * s3) * (1.0 + s1 * s1 * s3) / 32.0;
}

double fidelity_m24_expanded(double p1, double p2, double p3) {
  check_strength(p1, "p1");
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  const double P = 1.0 - p1, Q = 1.0 - p2, R = 1.0 - p3;
  const double g = std::pow(P, 1.5) * (std::sqrt(Q) + Q) * R +
                   P * (2.0 * Q + std::sqrt(P * Q)) * R +
                   P * P * P * std::pow(Q, 1.5) * R * R + std::sqrt(P * R) + std::sqrt(P * Q * R) +
                   std::sqrt(P) * (std::sqrt(P * Q) * R + std::sqrt(Q * R)) +
                   P * P * Q * R * (2.0 * std::sqrt(R) + std::sqrt(P * R) + std::sqrt(Q * R));
  return (1.0 + std::sqrt(P)) * (1.0 + std::sqrt(P * Q * R) + std::sqrt(P) * g) / 32.0;
}

double fidelity_wait33(double p2, double p_wait) {
  check_strength(p2, "p2");
  check_strength(p_wait, "p_wait");
  const double t = damp(p2), w = damp(p_wait);
  return (1.0 + t) * (1.0 + t) * (1.0 + w * t) * (1.0 + w * t) * (1.0 + w * t * t) / 32.0;
}

double fidelity_wait33_expanded(double p2, double p_wait) {
  check_strength(p2, "p2");
  check_strength(p_wait, "p_wait");
  const double T = 1.0 - p2, W = 1.0 - p_wait;
  const double sT = std::sqrt(T);
  return (1.0 + sT) * (1.0 + sT) *
         (1.0 + T * W + 2.0 * std::sqrt(T * W) + T * std::sqrt(W) +
          std::pow(T, 1.5) * W * (2.0 + std::sqrt(T * W))) /
         32.0;
}

double fidelity_fail_fresh(double p2, double p3, double p4, double p_wait) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p_wait, "p_wait");
  const double t = damp(p2), u = damp(p3), v = damp(p4), w = damp(p_wait);
  // Recycled chain: ends t*u, center (t*u)^2, then one p4 pass. Fresh partner
  // waited p_wait and took the same p4 pass.
  return (1.0 + t * u * v) * (1.0 + t * t * u * u * v) * (1.0 + t * u * v * v * w) *
         (1.0 + w * v) * (1.0 + w * v) / 32.0;
}

double fidelity_fail_fresh_variant(double p2, double p3, double p4, double p_wait) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p_wait, "p_wait");
  const double X = (1.0 - p2) * (1.0 - p3), V = 1.0 - p4, W = 1.0 - p_wait;
  const double sV = std::sqrt(V);
  return (1.0 + sV) * (1.0 + sV) *
         (1.0 + std::sqrt(X) * V + std::pow(X, 1.5) * V * W + X * X * V * V * W +
          (X + std::sqrt(X)) * std::sqrt(X * W) * std::pow(V, 1.5) + X * std::sqrt(V * W) +
          std::sqrt(X * V * W)) /
         32.0;
}

double fidelity_fail_fail(double p2, double p3, double p4, double p_wait) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p_wait, "p_wait");
  const double tu = damp(p2) * damp(p3), v = damp(p4), w = damp(p_wait);
  // Two recycled chains; the second one waited p_wait before the common p4.
  return (1.0 + tu * v) * (1.0 + tu * tu * v) * (1.0 + tu * tu * w * v * v) *
         (1.0 + tu * tu * w * v) * (1.0 + tu * w * v) / 32.0;
}

double fidelity_fail_fail_variant(double p2, double p3, double p4, double p_wait) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p_wait, "p_wait");
  const double X = (1.0 - p2) * (1.0 - p3), V = 1.0 - p4, W = 1.0 - p_wait;
  const double sX = std::sqrt(X), sV = std::sqrt(V), sW = std::sqrt(W);
  const double t1 = X * X * X * X * (1.0 + std::sqrt(X * V)) * std::pow(V, 2.5) * W * W;
  const double t2 = X * X * X * V * V * W *
                    (1.0 + 2.0 * std::sqrt(X * W) + (2.0 + sX) * std::sqrt(X * V * W));
  const double t3 =
      X * X * V * sW * (2.0 + sV + std::sqrt(V * W) + 2.0 * std::sqrt(X * V * W));
  const double g = 1.0 + sX + 2.0 * std::sqrt(X * V) + sX * V * (1.0 + std::sqrt(X * W)) +
                   X * sV * (1.0 + sW) + X * V * (1.0 + sW);
  const double t4 = sX * (1.0 + std::sqrt(X * V) + 2.0 * X * std::sqrt(V * W) +
                          std::sqrt(X * V * W) + 2.0 * X * V * sW + std::pow(X, 1.5) * V * W +
                          X * X * V * W * g);
  if (sX == 0.0) {
    // The 1/sqrt(X) prefactor cancels against t4's leading sX; at X = 0 only
    // the constant term of t4 survives.
    return 1.0 / 32.0;
  }
  return (t1 + t2 + t3 + t4) / (32.0 * sX);
}

double fidelity_fail3(double p2, double p3, double p4, double p5) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p5, "p5");
  const double a = damp(p2), b = damp(p3), c = damp(p4), e = damp(p5);
  return (1.0 + a * b * c * e) * (1.0 + a * b * c * e) * (1.0 + c * e) * (1.0 + e) / 16.0;
}

double fidelity_fail3_expanded(double p2, double p3, double p4, double p5) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p5, "p5");
  const double A = 1.0 - p2, B = 1.0 - p3, C = 1.0 - p4, E = 1.0 - p5;
  const double t1 = (16.0 * A * B + 5.0 * std::sqrt(A * B)) * C * std::pow(E, 1.5);
  const double t2 = 8.0 * A * B * std::pow(C, 1.5) * E * E;
  const double t3 = 2.0 * std::sqrt(E) * (8.0 + C * std::sqrt(A * B * E));
  const double t4 = 2.0 * (8.0 + 8.0 * std::sqrt(C * E) + 16.0 * std::sqrt(A * B * C * E) +
                           std::sqrt(A * B * C) * E + std::sqrt(A * B) * C * E);
  const double t5 =
      E * (16.0 * std::sqrt(C) +
           2.0 * (15.0 * std::sqrt(A * B * C) + std::sqrt(A * B) * C +
                  2.0 * std::sqrt(A * B * E) * C) +
           C * (26.0 * std::sqrt(A * B) + 23.0 * std::sqrt(A * B * E) +
                8.0 * A * B * (2.0 + 2.0 * std::sqrt(C * E) + std::sqrt(C) * E)));
  return (t1 + t2 + t3 + t4 + t5) / 256.0;
}

double fidelity_fail4(double p2, double p3, double p4, double p5) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p5, "p5");
  const double a = damp(p2), b = damp(p3), c = damp(p4), e = damp(p5);
  // The failed third fusion consumes the oldest end of the chain, leaving a
  // heterogeneously damped remnant; see the Method2Fail4 storyline.
  return (1.0 + a * b * c * e) * (1.0 + a * b * c * e) * (1.0 + b * c * e) * (1.0 + e) / 16.0;
}

double fidelity_fail4_expanded(double p2, double p3, double p4, double p5) {
  check_strength(p2, "p2");
  check_strength(p3, "p3");
  check_strength(p4, "p4");
  check_strength(p5, "p5");
  const double A = 1.0 - p2, B = 1.0 - p3, C = 1.0 - p4, E = 1.0 - p5;
  return (8.0 + 8.0 * std::sqrt(E) + (3.0 * std::sqrt(A) + 8.0 * A) * B * C * std::pow(E, 1.5) +
          4.0 * A * std::pow(B * C, 1.5) * E * E + 8.0 * std::sqrt(B * C * E) +
          16.0 * std::sqrt(A * B * C * E) + std::sqrt(A * B * C) * E +
          E * (8.0 * std::sqrt(B * C) + 15.0 * std::sqrt(A * B * C) +
               B * C * (16.0 * std::sqrt(A) + 13.0 * std::sqrt(A * E) +
                        4.0 * A * (2.0 + 2.0 * std::sqrt(B * C * E) + std::sqrt(B * C) * E)))) /
         128.0;
}

double all_success_fidelity(AllSuccessMethod method, double p1, double p2, double p3) {
  switch (method) {
    case AllSuccessMethod::M33:
      return fidelity_m33(p1, p2);
    case AllSuccessMethod::M24:
      return fidelity_m24(p1, p2, p3);
  }
  throw std::invalid_argument("all_success_fidelity: bad method");
}

double failure_scenario_fidelity(FailureScenario scenario, double p2, double p3, double p4,
                                 double p5, double p_wait) {
  switch (scenario) {
    case FailureScenario::Wait33:
      return fidelity_wait33(p2, p_wait);
    case FailureScenario::FailFresh:
      return fidelity_fail_fresh(p2, p3, p4, p_wait);
    case FailureScenario::FailFail:
      return fidelity_fail_fail(p2, p3, p4, p_wait);
    case FailureScenario::Fail3:
      return fidelity_fail3(p2, p3, p4, p5);
    case FailureScenario::Fail4:
      return fidelity_fail4(p2, p3, p4, p5);
  }
  throw std::invalid_argument("failure_scenario_fidelity: bad scenario");
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::invalid_argument("bisect_root: no sign change on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace clusterfusion
