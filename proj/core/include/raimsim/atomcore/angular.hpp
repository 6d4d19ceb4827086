#pragma once

#include "raimsim/atomcore/rydberg.hpp"

namespace raimsim {

// <l, j, m_j| C^k_q |l~, j~, m~_j> for the normalised spherical harmonic
// C^k_q = sqrt(4 pi/(2k+1)) Y_kq, coupled with the electron spin.
// Requires m_j = m~_j + q; returns 0 when any selection rule fails.
double angular_element_2(int la, int two_ja, int two_mja, int lb, int two_jb, int two_mjb, int k, int q);

double angular_matrix_element(const RydbergLevel& a, const RydbergLevel& b, int k, int q);

} // namespace raimsim
