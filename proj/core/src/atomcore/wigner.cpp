#include "raimsim/atomcore/wigner.hpp"
#include "raimsim/error.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

namespace raimsim {

namespace {

constexpr int kMaxFactorial = 1024;

const std::array<long double, kMaxFactorial>& log_factorials()
{
    static const std::array<long double, kMaxFactorial> table = [] {
        std::array<long double, kMaxFactorial> t{};
        t[0] = 0.0L;
        for (int i = 1; i < kMaxFactorial; ++i)
            t[i] = t[i - 1] + std::log(static_cast<long double>(i));
        return t;
    }();
    return table;
}

long double lf(int n)
{
    if (n < 0 || n >= kMaxFactorial)
        throw DomainError("factorial argument out of range: " + std::to_string(n));
    return log_factorials()[n];
}

// triangle condition on doubled values, including integer perimeter
bool triangle(int a, int b, int c)
{
    if (a < 0 || b < 0 || c < 0)
        return false;
    if (c < std::abs(a - b) || c > a + b)
        return false;
    return (a + b + c) % 2 == 0;
}

// log of the triangle coefficient Delta(abc), doubled arguments
long double log_delta(int a, int b, int c)
{
    return 0.5L * (lf((a + b - c) / 2) + lf((a - b + c) / 2) + lf((-a + b + c) / 2) - lf((a + b + c) / 2 + 1));
}

int twice(double x)
{
    double t = 2.0 * x;
    long r = std::lround(t);
    if (std::abs(t - static_cast<double>(r)) > 1e-9)
        throw DomainError("angular momentum argument is not a half-integer: " + std::to_string(x));
    return static_cast<int>(r);
}

} // namespace

double wigner3j_2(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3)
{
    if (tm1 + tm2 + tm3 != 0)
        return 0.0;
    if (!triangle(tj1, tj2, tj3))
        return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3)
        return 0.0;
    if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0)
        return 0.0;

    // integer combinations (all halves of doubled quantities)
    const int a1 = (tj3 - tj2 + tm1) / 2;
    const int a2 = (tj3 - tj1 - tm2) / 2;
    const int b1 = (tj1 + tj2 - tj3) / 2;
    const int b2 = (tj1 - tm1) / 2;
    const int b3 = (tj2 + tm2) / 2;
    const int kmin = std::max({0, -a1, -a2});
    const int kmax = std::min({b1, b2, b3});
    if (kmin > kmax)
        return 0.0;

    const long double pre = log_delta(tj1, tj2, tj3)
        + 0.5L * (lf((tj1 + tm1) / 2) + lf((tj1 - tm1) / 2) + lf((tj2 + tm2) / 2) + lf((tj2 - tm2) / 2)
                  + lf((tj3 + tm3) / 2) + lf((tj3 - tm3) / 2));

    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        long double den = lf(k) + lf(a1 + k) + lf(a2 + k) + lf(b1 - k) + lf(b2 - k) + lf(b3 - k);
        long double term = std::exp(pre - den);
        sum += (k % 2 == 0) ? term : -term;
    }
    const int phase = (tj1 - tj2 - tm3) / 2;
    if (phase % 2 != 0)
        sum = -sum;
    return static_cast<double>(sum);
}

double wigner6j_2(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6)
{
    if (!triangle(tj1, tj2, tj3) || !triangle(tj1, tj5, tj6) || !triangle(tj4, tj2, tj6) || !triangle(tj4, tj5, tj3))
        return 0.0;

    const int s1 = (tj1 + tj2 + tj3) / 2;
    const int s2 = (tj1 + tj5 + tj6) / 2;
    const int s3 = (tj4 + tj2 + tj6) / 2;
    const int s4 = (tj4 + tj5 + tj3) / 2;
    const int p1 = (tj1 + tj2 + tj4 + tj5) / 2;
    const int p2 = (tj2 + tj3 + tj5 + tj6) / 2;
    const int p3 = (tj3 + tj1 + tj6 + tj4) / 2;
    const int tmin = std::max({s1, s2, s3, s4});
    const int tmax = std::min({p1, p2, p3});
    if (tmin > tmax)
        return 0.0;

    const long double pre = log_delta(tj1, tj2, tj3) + log_delta(tj1, tj5, tj6) + log_delta(tj4, tj2, tj6)
        + log_delta(tj4, tj5, tj3);
    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        long double den = lf(t - s1) + lf(t - s2) + lf(t - s3) + lf(t - s4) + lf(p1 - t) + lf(p2 - t) + lf(p3 - t);
        long double term = std::exp(pre + lf(t + 1) - den);
        sum += (t % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

double clebsch_gordan_2(int tj1, int tm1, int tj2, int tm2, int tj, int tm)
{
    double w = wigner3j_2(tj1, tj2, tj, tm1, tm2, -tm);
    if (w == 0.0)
        return 0.0;
    int phase = (tj1 - tj2 + tm) / 2;
    double s = (phase % 2 == 0) ? 1.0 : -1.0;
    return s * std::sqrt(tj + 1.0) * w;
}

double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3)
{
    return wigner3j_2(twice(j1), twice(j2), twice(j3), twice(m1), twice(m2), twice(m3));
}

double wigner6j(double j1, double j2, double j3, double j4, double j5, double j6)
{
    return wigner6j_2(twice(j1), twice(j2), twice(j3), twice(j4), twice(j5), twice(j6));
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double j, double m)
{
    return clebsch_gordan_2(twice(j1), twice(m1), twice(j2), twice(m2), twice(j), twice(m));
}

} // namespace raimsim
