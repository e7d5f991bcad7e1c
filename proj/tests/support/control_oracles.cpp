#include "support/control_oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

std::complex<double> eval(const std::vector<double>& c, std::complex<double> s)
{
    std::complex<double> v = 0.0;
    for (double a : c) v = v * s + a;
    return v;
}

std::vector<double> derivative(const std::vector<double>& c)
{
    std::vector<double> d;
    const int n = static_cast<int>(c.size()) - 1;
    for (int i = 0; i < n; ++i) d.push_back(c[i] * (n - i));
    return d;
}

std::vector<double> add(std::vector<double> a, std::vector<double> b)
{
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] += b[i];
    return a;
}

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

std::vector<std::complex<double>> poly_roots(std::vector<double> c)
{
    while (!c.empty() && c.front() == 0.0) c.erase(c.begin());
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) comp(0, j) = -c[j + 1] / c[0];
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> r;
    for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()[i]);
    return r;
}

bool hurwitz_by_roots(const std::vector<double>& coeffs)
{
    for (const auto& r : poly_roots(coeffs))
        if (!(r.real() < 0.0)) return false;
    return true;
}

StepResponse::StepResponse(std::vector<double> num, std::vector<double> den)
{
    dc_ = num.back() / den.back();
    poles_ = poly_roots(den);
    const auto dden = derivative(den);
    for (const auto& p : poles_) residues_.push_back(eval(num, p) / (p * eval(dden, p)));
}

double StepResponse::operator()(double t) const
{
    std::complex<double> y = dc_;
    for (std::size_t i = 0; i < poles_.size(); ++i) y += residues_[i] * std::exp(poles_[i] * t);
    return y.real();
}

StepResponse lead_loop_transfer(double beta, double Omega, int order, boomfleet::LeadTopology topology)
{
    // loop: L = (Omega^order / sqrt(beta)) / s^order; H = (beta s + sqrt(beta) Omega) / (s + sqrt(beta) Omega)
    const double sb = std::sqrt(beta);
    const double g = std::pow(Omega, order) / sb;
    std::vector<double> s_order(order + 1, 0.0);
    s_order[0] = 1.0;
    const std::vector<double> hn{beta, sb * Omega};
    const std::vector<double> hd{1.0, sb * Omega};
    // normalized: T = g hd / (s^n hd + g hn); standard: T = g hn / (same)
    const auto den = add(mul(s_order, hd), mul({g}, hn));
    const auto num = topology == boomfleet::LeadTopology::normalized ? mul({g}, hd) : mul({g}, hn);
    return StepResponse(num, den);
}

std::vector<double> simulate_lead_loop(double beta, double Omega, int order, boomfleet::LeadTopology topology,
                                       double T, double dt)
{
    const double gamma = 0.37;  // arbitrary plant gain; K compensates
    boomfleet::LeadLoop loop({std::pow(Omega, order) / gamma, beta, Omega, 0.0, topology});
    double y = 0.0, ydot = 0.0;
    std::vector<double> out{y};
    const int n = static_cast<int>(std::lround(T / dt));
    for (int k = 0; k < n; ++k) {
        const double a = gamma * loop.step(1.0, y, dt);
        if (order == 1) {
            y += a * dt;
        } else {
            y += ydot * dt + 0.5 * a * dt * dt;
            ydot += a * dt;
        }
        out.push_back(y);
    }
    return out;
}

std::vector<std::complex<double>> ar_poles(const std::vector<double>& x, int order, std::size_t from)
{
    const std::size_t rows = x.size() - from - order;
    if (x.size() < from + order + 1) throw std::invalid_argument("series too short");
    Eigen::MatrixXd A(rows, order);
    Eigen::VectorXd b(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t k = from + order + r;
        b(r) = x[k];
        for (int j = 0; j < order; ++j) A(r, j) = x[k - 1 - j];
    }
    const Eigen::VectorXd a = A.colPivHouseholderQr().solve(b);
    std::vector<double> poly{1.0};
    for (int j = 0; j < order; ++j) poly.push_back(-a(j));
    return poly_roots(poly);
}

}  // namespace oracle
