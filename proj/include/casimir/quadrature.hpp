#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir
{
    /// Raised when adaptive subdivision cannot reach the requested tolerance.
    class QuadratureError : public std::runtime_error
    {
      public:
        QuadratureError(const std::string &what, double achieved)
            : std::runtime_error(what), achieved_(achieved)
        {
        }

        double achieved() const { return achieved_; }

      private:
        double achieved_;
    };

    struct Estimate
    {
        double value = 0.0;
        double abs_error = 0.0;
    };

    namespace detail
    {
        // 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
        inline constexpr std::array<double, 11> kKronrodNodes = {
            0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
            0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
            0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
            0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
            0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
            0.000000000000000000000000000000000};

        inline constexpr std::array<double, 11> kKronrodWeights = {
            0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
            0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
            0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
            0.123491976262065851077208980292036, 0.134709217311473325928054001771707,
            0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
            0.149445554002916905664936468389821};

        // Gauss weights for the odd Kronrod nodes 1, 3, 5, 7, 9.
        inline constexpr std::array<double, 5> kGaussWeights = {
            0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
            0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
            0.295524224714752870173892994651338};

        struct Panel
        {
            double lo, hi, value, error;
            bool operator<(const Panel &o) const { return error < o.error; }
        };

        template <class Func> Panel gauss_kronrod21(const Func &f, double lo, double hi)
        {
            const double center = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            const double fc = f(center);
            double kronrod = kKronrodWeights[10] * fc;
            double gauss = 0.0;
            double abs_sum = std::abs(kronrod);
            std::array<double, 21> fv{};
            fv[20] = fc;
            for (int i = 0; i < 10; ++i) {
                const double dx = half * kKronrodNodes[i];
                const double f1 = f(center - dx);
                const double f2 = f(center + dx);
                fv[2 * i] = f1;
                fv[2 * i + 1] = f2;
                kronrod += kKronrodWeights[i] * (f1 + f2);
                abs_sum += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
                if (i % 2 == 1)
                    gauss += kGaussWeights[i / 2] * (f1 + f2);
            }
            const double mean = 0.5 * kronrod;
            double asc = kKronrodWeights[10] * std::abs(fc - mean);
            for (int i = 0; i < 10; ++i)
                asc += kKronrodWeights[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));

            kronrod *= half;
            gauss *= half;
            asc *= std::abs(half);
            abs_sum *= std::abs(half);

            double err = std::abs(kronrod - gauss);
            if (asc != 0.0 && err != 0.0)
                err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
            const double round_off = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
            if (abs_sum > std::numeric_limits<double>::min() / round_off)
                err = std::max(err, round_off);
            return {lo, hi, kronrod, err};
        }
    } // namespace detail

    /// Globally adaptive Gauss-Kronrod integration of f over the panels
    /// delimited by `breakpoints` (ascending, at least two entries).
    /// Bisects the panel with the largest error estimate until the summed
    /// estimate drops below abs_tol. Throws QuadratureError otherwise.
    template <class Func>
    Estimate integrate_adaptive(const Func &f, std::span<const double> breakpoints, double abs_tol,
                                int max_subdivisions = 4000)
    {
        if (!(abs_tol > 0.0))
            throw std::invalid_argument("integrate_adaptive: abs_tol must be positive");
        if (breakpoints.size() < 2)
            throw std::invalid_argument("integrate_adaptive: need at least two breakpoints");
        for (double b : breakpoints)
            if (!std::isfinite(b))
                throw std::invalid_argument("integrate_adaptive: finite limits required");

        std::priority_queue<detail::Panel> panels;
        double error = 0.0;
        for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
            if (!(breakpoints[i] < breakpoints[i + 1]))
                throw std::invalid_argument("integrate_adaptive: breakpoints must be strictly ascending");
            auto p = detail::gauss_kronrod21(f, breakpoints[i], breakpoints[i + 1]);
            error += p.error;
            panels.push(p);
        }

        std::vector<detail::Panel> frozen;

        int subdivisions = static_cast<int>(panels.size());
        while (error > abs_tol && !panels.empty() && subdivisions < max_subdivisions) {
            auto worst = panels.top();
            panels.pop();
            const double mid = 0.5 * (worst.lo + worst.hi);
            // Panels at the resolution of double are accepted as-is.
            const double min_width = 64.0 * std::numeric_limits<double>::epsilon() *
                                     std::max(std::abs(worst.lo), std::abs(worst.hi));
            if (worst.hi - worst.lo <= min_width || mid <= worst.lo || mid >= worst.hi) {
                frozen.push_back(worst);
                continue;
            }
            auto left = detail::gauss_kronrod21(f, worst.lo, mid);
            auto right = detail::gauss_kronrod21(f, mid, worst.hi);
            error += left.error + right.error - worst.error;
            panels.push(left);
            panels.push(right);
            ++subdivisions;
        }

        double total = 0.0;
        error = 0.0;
        while (!panels.empty()) {
            total += panels.top().value;
            error += panels.top().error;
            panels.pop();
        }
        for (const auto &p : frozen) {
            total += p.value;
            error += p.error;
        }

        if (!std::isfinite(total))
            throw QuadratureError("integrate_adaptive: non-finite integrand", error);
        if (error > abs_tol)
            throw QuadratureError("integrate_adaptive: tolerance " + std::to_string(abs_tol) +
                                      " not reached, achieved " + std::to_string(error),
                                  error);
        return {total, error};
    }

    template <class Func>
    Estimate integrate_adaptive(const Func &f, double lo, double hi, double abs_tol, int max_subdivisions = 4000)
    {
        if (lo == hi)
            return {};
        const std::array<double, 2> ends = {lo, hi};
        return integrate_adaptive(f, std::span<const double>(ends), abs_tol, max_subdivisions);
    }
} // namespace casimir
