// SPDX-License-Identifier: Apache-2.0
#include "clusterfusion/loss.hpp"

#include <stdexcept>

namespace clusterfusion {

LossEventOutcome classify_fusion_with_loss(const LossScenario& s, double fusion_draw,
                                           double detector_draw) {
  if (s.m < 1 || s.n < 1) throw std::invalid_argument("LossScenario: chain lengths must be >= 1");
  if (!(s.detector_efficiency >= 0.0 && s.detector_efficiency <= 1.0))
    throw std::invalid_argument("LossScenario: detector efficiency outside [0, 1]");

  LossEventOutcome out;
  if (s.lost != LostPhoton::None) {
    // One partner photon is absent. At least half the time nothing is
    // detected and the attempt is written off as an ordinary failure.
    const double p_nothing = 1.0 - 0.5 * s.detector_efficiency;
    if (detector_draw < p_nothing) {
      out.perceived = Perceived::Failure;
      out.actual = Actual::Connected;
      out.resulting_lengths = {s.m - 1, s.n - 1};
    } else {
      out.perceived = Perceived::Success;
      out.actual = Actual::Disconnected;
      out.resulting_lengths = {s.m - 1, s.n - 1};
    }
    return out;
  }

  // Both photons present: the fusion itself is a fair coin.
  const bool fusion_success = fusion_draw < 0.5;
  if (fusion_success) {
    if (detector_draw < s.detector_efficiency) {
      out.perceived = Perceived::Success;
      out.actual = Actual::Connected;
      out.resulting_lengths = {s.m + s.n - 1};
    } else {
      // Genuine success, detection missed: believed failed, actually one
      // chain of length m+n-1.
      out.perceived = Perceived::Failure;
      out.actual = Actual::SilentlyMerged;
      out.resulting_lengths = {s.m + s.n - 1};
    }
  } else {
    out.perceived = Perceived::Failure;
    out.actual = Actual::Connected;
    out.resulting_lengths = {s.m - 1, s.n - 1};
  }
  return out;
}

LossEventOutcome retry_after_false_failure(int m, int n, bool second_success) {
  if (m < 2 || n < 2)
    throw std::invalid_argument("retry_after_false_failure: lengths must be >= 2");
  LossEventOutcome out;
  if (second_success) {
    out.perceived = Perceived::Success;
    out.actual = Actual::Connected;
    out.resulting_lengths = {m + n - 3};
    out.doubled_node = m - 1;
  } else {
    out.perceived = Perceived::Failure;
    out.actual = Actual::Connected;
    out.resulting_lengths = {m - 2, n - 2};
  }
  return out;
}

}  // namespace clusterfusion
