#pragma once

#include "ribbonlink/closure.hpp"
#include "ribbonlink/homotopy.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ribbonlink {

// fig1 family rod: leads along e3 with two loops whose tangents tilt to theta and circle once
// clockwise about e3. Stage a is straight and untwisted, b straight with d1 turned -2 turns,
// c looped with the same end directors as b.
struct Fig1Options {
  double theta_deg = 89.0;
  double samples_per_unit = 100.0;
  std::size_t slices = 33;
};

FramedCurve fig1_rod(char stage, const Fig1Options& opt = {});
ClosureSpec fig1_closure();
// Homotopy between stages: "ab", "bc" or "ac" (twist first, then the loops).
Homotopy fig1_homotopy(const std::string& path, const Fig1Options& opt = {});
// Deliberately invalid path from c back to a: loop A is flipped through the horizontal, where the
// rod passes through itself, unfolded in its plane, then loop B and the twist are removed.
Homotopy fig1_looping_path(const Fig1Options& opt = {});

// fig3 family: one rod with a helical loop whose tantrix circles e3 at angular radius 1.5.
//   a  reference: straight rod with a rectangular planar closure
//   b  the loop formed continuously from a (valid, Wr about -1)
//   c  b, then the closure grows n planar curls that cross the rod end while the whole slice
//      turns n times about e_y, so the end tangents vary (not valid)
//   d  b, then the closure grows one curl of the other sense, end tangents fixed (not valid)
struct Fig3Options {
  int n = 1;
  double samples_per_unit = 60.0;
  std::size_t slices = 33;
};
Homotopy fig3_homotopy(char variant, const Fig3Options& opt = {});

// fig4 family: one looped rod reached by two valid homotopies, the second turned upside down about e_y.
//   a  from the straight rod with a rectangular closure (Wr about 1)
//   b  from the planar curl with a short closure threaded between the leads (Wr about 0)
struct Fig4Options {
  double samples_per_unit = 80.0;
  std::size_t slices = 33;
};
Homotopy fig4_homotopy(char variant, const Fig4Options& opt = {});

// Random rod of class A2 with a valid homotopy from the straight untwisted reference. The
// schedule orders the twist and the bending; all schedules end at the same rod.
enum class RandomSchedule { Joint, TwistFirst, BendFirst };
struct RandomA2Options {
  double length = 8.0;
  double samples_per_unit = 120.0;
  std::size_t slices = 33;
  double max_theta = 1.8;
  RandomSchedule schedule = RandomSchedule::Joint;
  std::optional<double> closure_rho;  // detour fillet radius; unset keeps the first-figure closure
  std::optional<double> closure_w;    // detour clearance; unset keeps the first-figure closure
};
Homotopy random_a2_homotopy(std::uint64_t seed, const RandomA2Options& opt = {});

}  // namespace ribbonlink
