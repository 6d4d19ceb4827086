#pragma once

// Wigner 3j / 6j symbols via the Racah formulas, accumulated in log space.
// The *_2 variants take twice the angular-momentum values as integers.
namespace raimsim {

double wigner3j_2(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);
double wigner6j_2(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);
double clebsch_gordan_2(int tj1, int tm1, int tj2, int tm2, int tj, int tm);

// Half-integer arguments; non half-integral values throw DomainError.
double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3);
double wigner6j(double j1, double j2, double j3, double j4, double j5, double j6);
double clebsch_gordan(double j1, double m1, double j2, double m2, double j, double m);

} // namespace raimsim
