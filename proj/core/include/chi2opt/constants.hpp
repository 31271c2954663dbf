#pragma once

namespace chi2opt::constants {

// CODATA 2018. hbar is set to 1 throughout the cross-section formulas;
// this convention is recorded in every output manifest.
inline constexpr double c0 = 299792458.0;          // m/s
inline constexpr double eps0 = 8.8541878128e-12;   // F/m
inline constexpr double mu0 = 1.25663706212e-6;    // H/m
inline constexpr double pi = 3.14159265358979323846;

}  // namespace chi2opt::constants
