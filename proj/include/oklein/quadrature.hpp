#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oklein {

//---------------------------------------------------------------------------//
/*!
 * Gauss-Legendre rule on [-1, 1].
 *
 * Nodes are the roots of P_n found by Newton iteration from the Chebyshev
 * initial guess; weights follow from P_n'. Accurate to a few ulp for the
 * orders used here (n <= 200).
 */
class GaussLegendre
{
  public:
    explicit GaussLegendre(int n)
    {
        if (n < 1)
            throw std::invalid_argument("GaussLegendre: order must be >= 1");
        nodes_.resize(n);
        weights_.resize(n);
        // Returns {P_n(x), P_n'(x)} by the three-term recurrence
        auto legendre = [n](double x) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
        };
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i)
        {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int iter = 0; iter < 100; ++iter)
            {
                const auto [p, dp] = legendre(x);
                const double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            const double dp = legendre(x).second;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes_[i] = -x;
            nodes_[n - 1 - i] = x;
            weights_[i] = w;
            weights_[n - 1 - i] = w;
        }
        if (n % 2 == 1)
            nodes_[n / 2] = 0.0;
    }

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // Integrate f over [a, b]; works for any f whose result supports
    // operator+ and scalar multiplication (double, std::complex<double>).
    template<class F>
    auto integrate(F&& f, double a, double b) const
    {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (b + a);
        decltype(f(mid)) sum{};
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            sum += weights_[i] * f(mid + half * nodes_[i]);
        return half * sum;
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace oklein
