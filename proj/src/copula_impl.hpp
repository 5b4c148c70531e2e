#pragma once

#include "copord/copula.hpp"

#include <algorithm>
#include <cmath>

namespace copord::detail {

class CopulaImpl {
public:
    virtual ~CopulaImpl() = default;

    virtual double cdf(double u, double v) const = 0;

    virtual bool has_analytic_partial2() const { return false; }
    virtual double partial2(double u, double v) const { return fd_partial2(u, v, 1e-5); }
    virtual bool has_analytic_partial1() const { return false; }
    virtual double partial1(double u, double v) const { return fd_partial1(u, v, 1e-5); }

    virtual bool has_density() const { return false; }
    virtual double density(double, double) const {
        throw std::logic_error("copula '" + family_ + "' has no density");
    }

    virtual std::vector<double> breakpoints_u() const { return {}; }
    virtual std::vector<double> breakpoints_v() const { return {}; }
    // false for quadrature- or interpolation-backed evaluators
    virtual bool closed_form() const { return true; }

    const std::string& family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

    double fd_partial2(double u, double v, double h) const;
    double fd_partial1(double u, double v, double h) const;

protected:
    CopulaImpl(std::string family, std::vector<double> params)
        : family_(std::move(family)), params_(std::move(params)) {}

    std::string family_;
    std::vector<double> params_;
};

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

inline double CopulaImpl::fd_partial2(double u, double v, double h) const {
    if (v >= h && v <= 1.0 - h)
        return (cdf(u, v + h) - cdf(u, v - h)) / (2.0 * h);
    if (v < h) // one-sided, second order
        return (-3.0 * cdf(u, v) + 4.0 * cdf(u, v + h) - cdf(u, v + 2.0 * h)) / (2.0 * h);
    return (3.0 * cdf(u, v) - 4.0 * cdf(u, v - h) + cdf(u, v - 2.0 * h)) / (2.0 * h);
}

inline double CopulaImpl::fd_partial1(double u, double v, double h) const {
    if (u >= h && u <= 1.0 - h)
        return (cdf(u + h, v) - cdf(u - h, v)) / (2.0 * h);
    if (u < h)
        return (-3.0 * cdf(u, v) + 4.0 * cdf(u + h, v) - cdf(u + 2.0 * h, v)) / (2.0 * h);
    return (3.0 * cdf(u, v) - 4.0 * cdf(u - h, v) + cdf(u - 2.0 * h, v)) / (2.0 * h);
}

} // namespace copord::detail
