// Prints grad_H f, L and L* for the named fields at a few points.
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "hflow/fields.hpp"
#include "hflow/hcalc.hpp"

int main()
{
  using namespace hflow;
  const std::vector<std::pair<std::string, ScalarField>> fields{
    {"neg-z4", field_neg_z4()},
    {"positive-example", field_positive_example()},
    {"quartic-profile", field_rot_profile(quartic_profile())},
  };
  const std::vector<Point> pts{{0, 0, 0}, {0.5, 0, 0}, {0, 1, 1}, {-0.1, 1, 1}, {0.3, -0.4, 0.2}};

  std::printf("%-18s %-22s %12s %12s %12s %12s %s\n", "field", "point", "X1 f", "X2 f", "L", "L*", "char");
  for (const auto &[name, f] : fields) {
    for (const Point &p : pts) {
      const auto v = evaluate_operators(f, p);
      char where[64];
      std::snprintf(where, sizeof where, "(%.2f, %.2f, %.2f)", p.x, p.y, p.z);
      std::printf("%-18s %-22s %12.5g %12.5g %12.5g %12.5g %s\n", name.c_str(), where, v.grad.x, v.grad.y, v.L,
                  v.L_star, v.characteristic ? "yes" : "");
    }
  }

  // the same field without closed-form derivatives
  const ScalarField numeric = field_rot_profile(quartic_profile()).numeric_only();
  const Point p{0.3, -0.4, 0.2};
  std::printf("\nquartic-profile at (0.3, -0.4, 0.2), finite differences: L = %.6f, L_bar = %.6f\n",
              op_L(numeric, p), op_L_bar(numeric, p).value);
  std::printf("closed form: %.6f\n", op_L_rotsym(quartic_profile(), 0.5, 0.2));
}
