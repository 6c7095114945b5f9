// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

namespace clusterfusion {

// Discrete-event bookkeeping of photon loss around a fusion attempt between
// chains of length m and n. Topology level only; no density matrices here.

enum class LostPhoton { None, EdgeA, EdgeB };

struct LossScenario {
  int m = 2;
  int n = 2;
  LostPhoton lost = LostPhoton::None;
  double detector_efficiency = 1.0;  // in [0, 1]
};

enum class Perceived { Success, Failure };

enum class Actual {
  Connected,       // bookkeeping matches reality (includes ordinary outcomes)
  Disconnected,    // believed merged, actually two separate chains
  SilentlyMerged,  // believed failed, actually one chain of length m+n-1
};

struct LossEventOutcome {
  Perceived perceived = Perceived::Failure;
  Actual actual = Actual::Connected;
  std::vector<int> resulting_lengths;     // actual chain lengths
  std::optional<int> doubled_node;        // position holding two photons
};

/// Classifies one fusion attempt under the loss catalog. `fusion_draw` and
/// `detector_draw` are uniform [0,1) numbers supplied by the caller, so the
/// function itself is pure.
///
/// With a lost partner photon (EdgeA or EdgeB): probability 1 - eff/2 of
/// detecting nothing, a perceived failure with no lasting damage; otherwise
/// the surviving photon fires the detector and the fusion is believed
/// successful while the chains are actually disconnected.
/// With both photons present: the fusion resolves as a fair coin; a genuine
/// success whose detected photon is missed (probability 1 - eff) is
/// perceived as failure while the chains are silently merged.
LossEventOutcome classify_fusion_with_loss(const LossScenario& s, double fusion_draw,
                                           double detector_draw);

/// Retrying a fusion after a silently merged false failure: the photons at
/// actual positions m-1 and m+1 are fused. On success the chain has length
/// m+n-3 with a doubled node at position m-1; on failure those two photons
/// are lost together with the hidden m-th photon, leaving lengths m-2 and
/// n-2. Requires m, n >= 2.
LossEventOutcome retry_after_false_failure(int m, int n, bool second_success);

}  // namespace clusterfusion
