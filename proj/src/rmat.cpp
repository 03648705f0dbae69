#include "graphwave/rmat.hpp"

#include "graphwave/rng.hpp"

namespace graphwave {

EdgeList rmat_generate(const RmatParams& params, u64 seed) {
  if (!params.valid_probabilities()) {
    throw ConfigError("rmat: quadrant probabilities must be nonnegative and sum to 1 (5% slop allowed)");
  }
  // Ids stay under the 2^48 sanity bound used by the loaders, and
  // edgefactor << scale must not overflow 64 bits.
  if (params.scale >= 48) {
    throw ConfigError("rmat: scale " + std::to_string(params.scale) + " overflows the vertex id width");
  }
  const u64 n = u64{1} << params.scale;
  if (params.edgefactor != 0 && params.edgefactor > (std::numeric_limits<u64>::max() >> params.scale)) {
    throw ConfigError("rmat: edge count overflows");
  }
  const u64 m = params.edgefactor << params.scale;

  const double t_ab = params.a + params.b;
  const double t_abc = params.a + params.b + params.c;

  EdgeList out;
  out.n = n;
  out.directed = true;
  out.edges.resize(m);
  for (u64 e = 0; e < m; ++e) {
    SplitMix64 rng = stream_for(seed, e);
    u64 u = 0;
    u64 v = 0;
    for (u64 level = 0; level < params.scale; ++level) {
      const u64 bit = u64{1} << (params.scale - 1 - level);
      const double r = rng.next_double();
      if (r < params.a) {
        // top-left: both bits stay 0
      } else if (r < t_ab) {
        v |= bit;
      } else if (r < t_abc) {
        u |= bit;
      } else {
        u |= bit;
        v |= bit;
      }
    }
    out.edges[e] = Edge{u, v};
  }
  return out;
}

}  // namespace graphwave
