#include "raimsim/atomcore/radial.hpp"
#include "raimsim/error.hpp"
#include "raimsim/parallel.hpp"
#include "raimsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace raimsim {

namespace {

struct RadialShape {
    double n_star, l_star, alpha, log_norm;
    int k;
};

RadialShape shape_of(const RydbergLevel& lv, const QuantumDefectTable& defects)
{
    EffectiveNumbers e = effective_numbers(lv, defects);
    RadialShape s;
    s.n_star = e.n_star;
    s.l_star = e.l_star;
    s.k = e.k;
    s.alpha = 2.0 * e.l_star + 1.0;
    // N^2 = (2/n*)^3 k! / (2 n* Gamma(n* + l* + 1)); since k is an integer the
    // hydrogenic normalisation integral holds exactly for non-integer alpha
    s.log_norm = 0.5 * (3.0 * std::log(2.0 / s.n_star) + std::lgamma(s.k + 1.0)
                        - std::lgamma(s.n_star + s.l_star + 1.0) - std::log(2.0 * s.n_star));
    return s;
}

double evaluate(const RadialShape& s, double r)
{
    const long double x = 2.0L * r / s.n_star;
    const long double a = s.alpha;
    long double l0 = 1.0L, l1 = 1.0L + a - x;
    long double lag = s.k == 0 ? l0 : l1;
    for (int i = 1; i < s.k; ++i) {
        long double l2 = ((2.0L * i + 1.0L + a - x) * l1 - (i + a) * l0) / (i + 1.0L);
        l0 = l1;
        l1 = l2;
        lag = l1;
    }
    long double log_env = s.log_norm - 0.5L * x + s.l_star * std::log(x);
    return static_cast<double>(std::exp(log_env) * lag);
}

double r_max_for(double n_star) { return 2.0 * n_star * (n_star + 15.0); }

int panels_for(double n_star, const RadialOptions& opt)
{
    return static_cast<int>(std::ceil(n_star + opt.extra_panels));
}

} // namespace

double radial_wavefunction(const RydbergLevel& lv, const QuantumDefectTable& defects, double r)
{
    if (!(r > 0.0))
        throw DomainError("radial_wavefunction requires r > 0");
    return evaluate(shape_of(lv, defects), r);
}

RadialGrid::RadialGrid(double r_min, double r_max, int panels, int order) : panels_(panels)
{
    if (!(r_min > 0.0) || !(r_max > r_min) || panels < 1)
        throw DomainError("invalid radial grid");
    QuadratureRule gl = gauss_legendre(order);
    const double x0 = std::sqrt(r_min), x1 = std::sqrt(r_max);
    const double h = (x1 - x0) / panels;
    r_.resize(static_cast<Eigen::Index>(panels) * order);
    w_.resize(r_.size());
    Eigen::Index idx = 0;
    for (int p = 0; p < panels; ++p) {
        double a = x0 + p * h;
        for (int i = 0; i < order; ++i, ++idx) {
            double x = a + 0.5 * h * (gl.x[i] + 1.0);
            r_[idx] = x * x;
            // dr = 2 x dx
            w_[idx] = 0.5 * h * gl.w[i] * 2.0 * x;
        }
    }
}

double radial_integral(const RydbergLevel& a, const RydbergLevel& b, int p, const QuantumDefectTable& defects,
                       const RadialOptions& opt)
{
    if (p < 0 || p > 12)
        throw DomainError("radial_integral power out of range");
    RadialShape sa = shape_of(a, defects), sb = shape_of(b, defects);
    double ns = std::max(sa.n_star, sb.n_star);
    int panels = panels_for(ns, opt);
    double values[2], scale = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        RadialGrid g(opt.r_core, r_max_for(ns), panels << pass, opt.order);
        double s = 0.0, saa = 0.0, sbb = 0.0;
        for (Eigen::Index i = 0; i < g.r().size(); ++i) {
            double r = g.r()[i];
            double ra = evaluate(sa, r), rb = evaluate(sb, r);
            double wr = g.w()[i] * std::pow(r, p + 2);
            s += ra * rb * wr;
            saa += ra * ra * wr;
            sbb += rb * rb * wr;
        }
        values[pass] = s;
        scale = std::sqrt(saa * sbb);
    }
    double err = std::abs(values[1] - values[0]) / scale;
    if (err > opt.tolerance) {
        std::ostringstream msg;
        msg << "radial integral <" << a.label() << "|r^" << p << "|" << b.label()
            << "> did not converge (relative change " << err << ")";
        throw NumericalError(msg.str());
    }
    return values[1];
}

RadialMatrixCache::RadialMatrixCache(std::vector<RadialKey> keys, const QuantumDefectTable& defects,
                                     std::vector<int> powers, const RadialOptions& opt, unsigned workers)
    : keys_(std::move(keys))
{
    const Eigen::Index nk = static_cast<Eigen::Index>(keys_.size());
    std::vector<RadialShape> shapes;
    double ns_max = 1.0;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        index_[keys_[i]] = static_cast<int>(i);
        RydbergLevel lv{keys_[i].n, keys_[i].l, keys_[i].two_j, keys_[i].two_j};
        shapes.push_back(shape_of(lv, defects));
        ns_max = std::max(ns_max, shapes.back().n_star);
    }
    if (nk == 0)
        return;

    const int panels = panels_for(ns_max, opt);
    std::map<int, MatrixXd> coarse;
    for (int pass = 0; pass < 2; ++pass) {
        RadialGrid g(opt.r_core, r_max_for(ns_max), panels << pass, opt.order);
        const Eigen::Index np = g.r().size();
        MatrixXd rv(nk, np);
        parallel_for(static_cast<std::size_t>(nk), [&](std::size_t i) {
            for (Eigen::Index j = 0; j < np; ++j)
                rv(static_cast<Eigen::Index>(i), j) = evaluate(shapes[i], g.r()[j]);
        }, workers);
        for (int p : powers) {
            VectorXd wp = g.w().array() * g.r().array().pow(p + 2);
            MatrixXd m = (rv * wp.asDiagonal()) * rv.transpose();
            m = 0.5 * (m + m.transpose()).eval();
            if (pass == 0)
                coarse[p] = std::move(m);
            else
                mats_[p] = std::move(m);
        }
    }

    for (int p : powers) {
        const MatrixXd& fine = mats_[p];
        const MatrixXd& c = coarse[p];
        VectorXd d = fine.diagonal().cwiseAbs().cwiseSqrt();
        double worst = 0.0;
        for (Eigen::Index j = 0; j < nk; ++j)
            for (Eigen::Index i = 0; i < nk; ++i)
                worst = std::max(worst, std::abs(fine(i, j) - c(i, j)) / (d[i] * d[j]));
        errors_[p] = worst;
        if (worst > opt.tolerance) {
            std::ostringstream msg;
            msg << "radial matrix for r^" << p << " did not converge (relative change " << worst << ")";
            throw NumericalError(msg.str());
        }
    }
}

int RadialMatrixCache::index(const RadialKey& k) const
{
    auto it = index_.find(k);
    if (it == index_.end())
        throw DomainError("radial channel not in cache");
    return it->second;
}

const MatrixXd& RadialMatrixCache::matrix(int p) const
{
    auto it = mats_.find(p);
    if (it == mats_.end())
        throw DomainError("radial power " + std::to_string(p) + " not in cache");
    return it->second;
}

double RadialMatrixCache::value(int p, const RadialKey& a, const RadialKey& b) const
{
    return matrix(p)(index(a), index(b));
}

} // namespace raimsim
