// Flows a smoothed gauge ball and reports the shrinking sublevel set.
#include <cstdio>
#include <cstdlib>

#include "hflow/gameflow.hpp"
#include "hflow/hull_init.hpp"

int main(int argc, char **argv)
{
  using namespace hflow;
  const int j = argc > 1 ? std::atoi(argv[1]) : 16;
  const auto g = gauge_ball_gj(j);
  const StarShapedSet E = profile_set(g);
  const InitialData init = build_initial(E);
  std::printf("g_%d: z in [%.4f, %.4f], r = %.4f, R = %.4f, c = %g, rho = %.4f, C = %.4f\n", j, g.a, g.b, E.r, E.R,
              init.c, init.rho, init.C);

  GameParams params;
  params.epsilon = 0.1;
  params.horizon = 0.1;
  params.C = init.C;
  params.grid = GridSpec::with_spacing({-1.4, -1.4, -0.8}, {1.4, 1.4, 0.8}, 0.05);
  const FlowResult res = solve(initial_slice(init.u0, params), params);

  const GridSpec &gs = params.grid;
  const double cell = gs.spacing(0) * gs.spacing(1) * gs.spacing(2);
  std::printf("%5s %8s %12s %12s %12s\n", "step", "t", "min u", "volume", "x-extent");
  for (std::size_t n = 0; n < res.slices.size(); ++n) {
    const auto mask = sublevel_nodes(res.slices[n]);
    double vol = 0.0, xmax = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) { continue; }
      vol += cell;
      xmax = std::max(xmax, gs.node(i).x);
    }
    std::printf("%5zu %8.3f %12.5f %12.5f %12.4f\n", n, n * params.epsilon * params.epsilon, res.diagnostics[n].min,
                vol, xmax);
  }
  std::printf("nested: %s\n", sublevel_sets_nested(res) ? "yes" : "no");
}
