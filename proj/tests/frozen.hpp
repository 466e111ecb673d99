#pragma once

// Reference numbers computed once with 30-digit arithmetic from the closed
// forms and frozen here.

namespace frozen {

constexpr double kPi2 = 9.8696044010893586188;

// min over y of 1/y - psi_f(y) for the holomorphic catalog (minimiser, value).
struct GapMin {
  const char* spec;
  double argmin;
  double value;
};
inline constexpr GapMin kReciprocalProfileGaps[] = {
    {"exp_iaz:a=1", 1.0, 2.0},
    {"exp_iaz:a=2", 0.70710678118654752440, 2.8284271247461900976},
    {"cayley_pow:n=1", 1.6180339887498948482, 1.5804576388691017432},
    {"cayley_pow:n=3", 0.76759187924399821552, 3.0116299378420724960},
    {"product:a=1,n=1", 0.80193773580483825247, 2.6377799452839850454},
};

// Chord of 1/x^2 + 1/x over [x_{k+1}, x_k] minus psi at x~_k, k = 1, 2, 3.
inline constexpr double kProp41ChordGap[] = {30.306944904065807687, 30.092135149974197893,
                                             29.978412338984522120};

// min{x,1} + 1 - x/(x+1) at x = 1e-3.
constexpr double kEx31RawGapAtLeftEdge = 1.000000999000999001;

}  // namespace frozen
