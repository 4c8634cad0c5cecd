#pragma once

// Generated by tests/oracles/xy_residual.py: residual of the x,y form of the
// governing equation for each figure preset, evaluated with sympy.

namespace gradeflow::oracle {

struct ResidualSample {
  int figure;
  double x;
  double y;
  long double value;
};

inline constexpr ResidualSample kPresetResiduals[] = {
    {1, 1.25, 1.5, 11855.0000000000000000000000000L},
    {1, 1.5, 1.75, 2911.00000000000000000000000000L},
    {1, 1.8, 1.1, 7956.35200000000000000000000000L},
    {2, 1.25, 1.5, -168.000000000000000000000000000L},
    {2, 1.5, 1.75, -192.000000000000000000000000000L},
    {2, 1.8, 1.1, -38.4000000000000000000000000000L},
    {3, 1.25, 1.5, 640.000000000000000000000000000L},
    {3, 1.5, 1.75, 1024.00000000000000000000000000L},
    {3, 1.8, 1.1, 1484.80000000000000000000000000L},
    {4, 1.25, 1.5, 224.000000000000000000000000000L},
    {4, 1.5, 1.75, 256.000000000000000000000000000L},
    {4, 1.8, 1.1, 294.400000000000000000000000000L},
    {5, 1.25, 1.5, -932666116500.000000000000000000L},
    {5, 1.5, 1.75, -1088110390500.00000000000000000L},
    {5, 1.8, 1.1, -683955043200.000000000000000000L},
    {6, 1.25, 1.5, -171.760629636004053491586390455L},
    {6, 1.5, 1.75, -51.3434514625064355072377006980L},
    {6, 1.8, 1.1, -97.5327610628380328334144137440L},
    {7, 1.25, 1.5, -174.421875000000000000000000000L},
    {7, 1.5, 1.75, -338.671875000000000000000000000L},
    {7, 1.8, 1.1, -237.630000000000000000000000000L},
};

}  // namespace gradeflow::oracle
