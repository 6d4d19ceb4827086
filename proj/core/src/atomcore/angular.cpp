#include "raimsim/atomcore/angular.hpp"
#include "raimsim/atomcore/wigner.hpp"

#include <cmath>
#include <cstdlib>

namespace raimsim {

double angular_element_2(int la, int two_ja, int two_mja, int lb, int two_jb, int two_mjb, int k, int q)
{
    if (k < 0 || std::abs(q) > k)
        return 0.0;
    if (two_mja != two_mjb + 2 * q)
        return 0.0;
    if ((la + lb + k) % 2 != 0 || k < std::abs(la - lb) || k > la + lb)
        return 0.0;
    double w1 = wigner3j_2(2 * la, 2 * k, 2 * lb, 0, 0, 0);
    if (w1 == 0.0)
        return 0.0;
    double w2 = wigner3j_2(two_ja, 2 * k, two_jb, -two_mja, 2 * q, two_mjb);
    if (w2 == 0.0)
        return 0.0;
    double w3 = wigner6j_2(2 * la, two_ja, 1, two_jb, 2 * lb, 2 * k);
    if (w3 == 0.0)
        return 0.0;
    // (-1)^(2l + 1/2 + k + j + j~ - m_j); the exponent is an integer
    int twice_phase = 4 * la + 1 + 2 * k + two_ja + two_jb - two_mja;
    double sign = ((twice_phase / 2) % 2 == 0) ? 1.0 : -1.0;
    double pre = std::sqrt((2.0 * la + 1) * (2.0 * lb + 1) * (two_ja + 1.0) * (two_jb + 1.0));
    return sign * pre * w1 * w2 * w3;
}

double angular_matrix_element(const RydbergLevel& a, const RydbergLevel& b, int k, int q)
{
    return angular_element_2(a.l, a.two_j, a.two_mj, b.l, b.two_j, b.two_mj, k, q);
}

} // namespace raimsim
