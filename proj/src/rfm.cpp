#include "frogsim/rfm.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "frogsim/rng.hpp"

namespace frogsim {
namespace {

constexpr std::uint64_t kTieSalt = 0x71e5a17c0ffee5ULL;

struct Frog {
  VertexId vertex = kRoot;
  VertexId birth = kRoot;  // wake vertex; unique per frog, keys its stream
  int depth = 0;
  Phase phase = Phase::Rightward;
  bool root_frog = false;
  SplitMix64 rng;
};

struct Arrival {
  VertexId dest;
  VertexId birth;
  std::uint32_t frog;
};

}  // namespace

RfmOutcome run_rfm(const ModelParams& params, int t, std::uint64_t seed,
                   const RfmOptions& options) {
  params.validate_recursive();
  return run_rfm_with_survival(params.d, params.p,
                               effective_survival(params.q, params.p), t, seed,
                               options);
}

RfmOutcome run_rfm_with_survival(int d, double p, double frak_q, int t,
                                 std::uint64_t seed,
                                 const RfmOptions& options) {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("recursive model needs 0 < p < 1/2");
  }
  if (!(frak_q >= 0.0 && frak_q <= 1.0)) {
    throw std::invalid_argument("survival must lie in [0, 1]");
  }
  const int id_depth = max_indexable_depth(d);
  if (t < 1 || t >= id_depth) {
    throw std::invalid_argument("t out of range for this branching factor");
  }
  const double step_left = p / (1.0 - p);
  const bool prune = options.prune_beyond_depth;

  RfmOutcome out;
  VisitedSet visited(vertices_up_to(d, t));
  visited.insert(kRoot);

  std::vector<Frog> frogs;
  std::vector<Frog> next;
  std::vector<Arrival> arrivals;
  frogs.push_back({kRoot, kRoot, 0, Phase::Rightward, true,
                   SplitMix64(derive_seed(seed, kRoot))});

  VertexId root_child = kRoot;
  VertexId x = kRoot;

  std::int64_t round = 0;
  while (!frogs.empty()) {
    if (round >= options.round_cap) {
      out.capped = true;
      break;
    }
    ++round;
    next.clear();
    arrivals.clear();

    for (std::uint32_t i = 0; i < frogs.size(); ++i) {
      Frog& f = frogs[i];
      if (!f.rng.bernoulli(frak_q)) continue;

      if (f.phase == Phase::Leftward && f.rng.bernoulli(step_left)) {
        const VertexId parent = parent_of(f.vertex, d);
        if (!visited.contains(parent)) {
          throw std::logic_error("leftward frog entered an unvisited vertex");
        }
        if (options.on_move) {
          options.on_move({round, f.vertex, parent, f.depth - 1, f.phase, true});
        }
        if (parent == kRoot) {
          ++out.v_t;
          continue;
        }
        f.vertex = parent;
        --f.depth;
        next.push_back(f);
        continue;
      }

      f.phase = Phase::Rightward;
      const int child_depth = f.depth + 1;
      if (child_depth >= id_depth) {
        out.depth_truncated = true;
        continue;
      }
      const VertexId child = child_of(f.vertex, d, f.rng.below(d));
      if (f.root_frog) {
        if (round == 1) root_child = child;
        if (round == 2) {
          x = child;
          out.a_x = true;
        }
      }
      if (prune && child_depth > t) continue;
      const bool seen = visited.contains(child);
      if (options.on_move) {
        options.on_move({round, f.vertex, child, child_depth, f.phase, seen});
      }
      if (seen) continue;
      arrivals.push_back({child, f.birth, i});
    }

    std::sort(arrivals.begin(), arrivals.end(),
              [](const Arrival& a, const Arrival& b) {
                return a.dest != b.dest ? a.dest < b.dest : a.birth < b.birth;
              });
    for (std::size_t a = 0; a < arrivals.size();) {
      std::size_t b = a + 1;
      while (b < arrivals.size() && arrivals[b].dest == arrivals[a].dest) ++b;
      std::size_t winner = a;
      if (b - a > 1) {
        SplitMix64 tie(derive_seed(derive_seed(seed ^ kTieSalt, round),
                                   arrivals[a].dest));
        winner = a + tie.below(b - a);
      }
      Frog w = frogs[arrivals[winner].frog];
      w.vertex = arrivals[winner].dest;
      ++w.depth;
      visited.insert(w.vertex);
      const int depth = w.depth;
      const VertexId dest = w.vertex;
      next.push_back(w);
      if (depth <= t) {
        next.push_back({dest, dest, depth, Phase::Leftward, false,
                        SplitMix64(derive_seed(seed, dest))});
        ++out.awakened;
      }
      a = b;
    }
    if (round == 1) out.a_rootchild = root_child != kRoot;
    frogs.swap(next);
  }

  out.rounds = round;
  // y lies at depth 2; it only counts inside the truncated tree.
  if (out.a_x && t >= 2) {
    const VertexId y = child_of(root_child, d, (child_index(x, d) + 1) % d);
    out.a_y = visited.contains(y);
  }
  return out;
}

}  // namespace frogsim
