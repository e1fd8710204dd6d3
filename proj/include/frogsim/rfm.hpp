#pragma once

// Recursive frog model RFM(d, q, p) with sleeping frogs up to depth t,
// simulated in global lockstep rounds.
//
// Each round every live frog first survives with probability frak_q. A
// leftward frog then steps to its parent with probability rho, otherwise it
// turns rightward and steps to a uniform child. A rightward frog steps to a
// uniform child. Arriving at the root counts a visit and kills the frog.
// A rightward step into an already visited vertex kills the frog; when
// several rightward frogs enter the same fresh vertex in one round a uniform
// one survives. Entering a fresh vertex of depth <= t wakes its frog, which
// starts moving the following round.

#include <cstdint>
#include <functional>

#include "frogsim/analysis.hpp"
#include "frogsim/tree.hpp"

namespace frogsim {

enum class Phase : std::uint8_t { Leftward, Rightward };

inline constexpr std::int64_t kDefaultRoundCap = 1'000'000;

struct RfmMove {
  std::int64_t round = 0;
  VertexId from = 0;
  VertexId to = 0;
  int to_depth = 0;
  Phase phase = Phase::Leftward;  // phase the step was taken in
  bool to_visited = false;        // destination visited before this round
};

struct RfmOptions {
  std::int64_t round_cap = kDefaultRoundCap;
  // Drop rightward frogs as soon as they pass depth t. They can neither wake
  // a frog nor return, so this changes no reported quantity.
  bool prune_beyond_depth = true;
  // Called for every step taken by a surviving frog. Test instrumentation.
  std::function<void(const RfmMove&)> on_move;
};

struct RfmOutcome {
  std::int64_t v_t = 0;      // root visits
  bool a_rootchild = false;  // the root frog reached its first ray vertex
  bool a_x = false;          // the root frog jumped on to x
  bool a_y = false;          // the sibling y of x was visited (needs a_x)
  std::int64_t awakened = 0;
  std::int64_t rounds = 0;
  bool capped = false;
  // Unpruned mode only: a frog went deeper than ids can address.
  bool depth_truncated = false;

  bool operator==(const RfmOutcome&) const = default;
};

// Simulates RFM(d, q, p) truncated at depth t. Frogs use the per-step
// survival effective_survival(q, p).
RfmOutcome run_rfm(const ModelParams& params, int t, std::uint64_t seed,
                   const RfmOptions& options = {});

// Same, with the per-step survival supplied directly.
RfmOutcome run_rfm_with_survival(int d, double p, double frak_q, int t,
                                 std::uint64_t seed,
                                 const RfmOptions& options = {});

}  // namespace frogsim
