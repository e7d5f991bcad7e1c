#include "boomfleet/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "boomfleet/format.hpp"

namespace boomfleet {

namespace {

std::string fx(double v) { return format_fixed(v, 2); }

// blue -> yellow -> red
std::string colour(double t)
{
    t = std::clamp(std::isfinite(t) ? t : 1.0, 0.0, 1.0);
    const std::array<std::array<double, 3>, 3> stops{{{49, 54, 149}, {254, 224, 144}, {165, 0, 38}}};
    const double x = t * 2.0;
    const int i = std::min(1, static_cast<int>(x));
    const double f = x - i;
    std::ostringstream os;
    os << "rgb(";
    for (int c = 0; c < 3; ++c) {
        os << static_cast<int>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
        os << (c < 2 ? "," : ")");
    }
    return os.str();
}

double metric(const SweepCell& c, int m)
{
    const auto& v = c.result.vessel;
    switch (m) {
        case 0: return v[0].cross_track_rmse;
        case 1: return v[1].cross_track_rmse;
        case 2: return v[0].heading_rmse;
        default: return v[1].heading_rmse;
    }
}

const char* metric_name(int m)
{
    static const char* names[] = {"cross-track RMSE vessel 1 (m)", "cross-track RMSE vessel 2 (m)",
                                  "heading RMSE vessel 1 (deg)", "heading RMSE vessel 2 (deg)"};
    return names[m];
}

}  // namespace

std::string rmse_tsv(const RmseMap& map)
{
    std::ostringstream os;
    os << "# controller " << to_string(map.controller) << "\n# rho v_ref ct1 hd1 ct2 hd2 complete\n";
    for (std::size_t i = 0; i < map.rho.size(); ++i) {
        for (std::size_t j = 0; j < map.v_ref.size(); ++j) {
            const SweepCell& c = map.at(i, j);
            os << format_double(c.rho) << '\t' << format_double(c.v_ref) << '\t'
               << format_double(metric(c, 0)) << '\t' << format_double(metric(c, 2)) << '\t'
               << format_double(metric(c, 1)) << '\t' << format_double(metric(c, 3)) << '\t'
               << (c.result.complete ? 1 : 0) << '\n';
        }
        os << '\n';
    }
    return os.str();
}

std::string rmse_svg(const std::vector<RmseMap>& maps)
{
    const double pw = 220, ph = 180, left = 60, top = 40, gap_x = 50, gap_y = 70;
    const double width = left + 4 * (pw + gap_x);
    const double height = top + maps.size() * (ph + gap_y) + 20;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fx(width) << "\" height=\"" << fx(height)
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t r = 0; r < maps.size(); ++r) {
        const RmseMap& map = maps[r];
        const double y0 = top + r * (ph + gap_y);
        for (int m = 0; m < 4; ++m) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& c : map.cells) {
                lo = std::min(lo, metric(c, m));
                hi = std::max(hi, metric(c, m));
            }
            const double span = hi > lo ? hi - lo : 1.0;
            const double x0 = left + m * (pw + gap_x);
            const double cw = pw / map.v_ref.size(), ch = ph / map.rho.size();
            os << "<text x=\"" << fx(x0) << "\" y=\"" << fx(y0 - 8) << "\">" << to_string(map.controller) << ": "
               << metric_name(m) << "</text>\n";
            for (std::size_t i = 0; i < map.rho.size(); ++i) {
                for (std::size_t j = 0; j < map.v_ref.size(); ++j) {
                    const SweepCell& c = map.at(i, j);
                    const double v = metric(c, m);
                    // rho grows upwards
                    const double y = y0 + ph - (i + 1) * ch;
                    os << "<rect x=\"" << fx(x0 + j * cw) << "\" y=\"" << fx(y) << "\" width=\"" << fx(cw)
                       << "\" height=\"" << fx(ch) << "\" fill=\"" << colour((v - lo) / span) << "\""
                       << (c.result.complete ? "" : " stroke=\"black\" stroke-dasharray=\"2,2\"") << "><title>rho="
                       << format_double(c.rho) << " v=" << format_double(c.v_ref) << ": " << format_double(v)
                       << "</title></rect>\n";
                }
            }
            os << "<text x=\"" << fx(x0) << "\" y=\"" << fx(y0 + ph + 14) << "\">v_ref " << fx(map.v_ref.front())
               << " .. " << fx(map.v_ref.back()) << " m/s; range " << fx(lo) << " .. " << fx(hi) << "</text>\n";
            os << "<text x=\"" << fx(x0 - 6) << "\" y=\"" << fx(y0 + ph / 2) << "\" text-anchor=\"end\">rho "
               << fx(map.rho.front()) << ".." << fx(map.rho.back()) << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

using Curve = std::map<int, double>;  // agents -> mean objective

std::map<int, std::map<std::string, Curve>> curves(const std::vector<BenchmarkRow>& rows)
{
    std::map<int, std::map<std::string, std::map<int, std::pair<double, int>>>> acc;
    for (const auto& r : rows) {
        const std::array<std::pair<const char*, double>, 4> stages{
            {{"greedy", r.greedy}, {"heuristic", r.heuristic}, {"bnb_cold", r.cold.objective}, {"bnb_warm", r.warm.objective}}};
        for (const auto& [name, obj] : stages) {
            auto& cell = acc[r.spills][name][r.agents];
            cell.first += obj;
            cell.second += 1;
        }
    }
    std::map<int, std::map<std::string, Curve>> out;
    for (const auto& [p, by_stage] : acc) {
        for (const auto& [stage, pts] : by_stage) {
            for (const auto& [k, sum] : pts) out[p][stage][k] = sum.first / sum.second;
        }
    }
    return out;
}

}  // namespace

std::string objective_tsv(const std::vector<BenchmarkRow>& rows)
{
    std::ostringstream os;
    os << "# spills agents stage objective\n";
    for (const auto& [p, by_stage] : curves(rows)) {
        for (const auto& [stage, curve] : by_stage) {
            for (const auto& [k, v] : curve) os << p << '\t' << k << '\t' << stage << '\t' << format_double(v) << '\n';
            os << "\n\n";
        }
    }
    return os.str();
}

std::string objective_svg(const std::vector<BenchmarkRow>& rows)
{
    const auto all = curves(rows);
    const double pw = 300, ph = 200, left = 70, top = 40, gap = 90;
    const std::map<std::string, std::string> stroke{
        {"greedy", "#d62728"}, {"heuristic", "#1f77b4"}, {"bnb_cold", "#7f7f7f"}, {"bnb_warm", "#2ca02c"}};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fx(left + all.size() * (pw + gap))
       << "\" height=\"" << fx(top + ph + 80) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    double x0 = left;
    for (const auto& [p, by_stage] : all) {
        double kmin = 1e300, kmax = -1e300, lo = 1e300, hi = -1e300;
        for (const auto& [stage, curve] : by_stage) {
            for (const auto& [k, v] : curve) {
                kmin = std::min<double>(kmin, k);
                kmax = std::max<double>(kmax, k);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        const double kspan = kmax > kmin ? kmax - kmin : 1.0;
        const double span = hi > lo ? hi - lo : 1.0;
        os << "<text x=\"" << fx(x0) << "\" y=\"" << fx(top - 10) << "\">p = " << p << " spills</text>\n";
        os << "<rect x=\"" << fx(x0) << "\" y=\"" << fx(top) << "\" width=\"" << fx(pw) << "\" height=\"" << fx(ph)
           << "\" fill=\"none\" stroke=\"black\"/>\n";
        int legend = 0;
        for (const auto& [stage, curve] : by_stage) {
            os << "<polyline fill=\"none\" stroke=\"" << stroke.at(stage) << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [k, v] : curve) {
                os << fx(x0 + (k - kmin) / kspan * pw) << ',' << fx(top + ph - (v - lo) / span * ph) << ' ';
            }
            os << "\"/>\n";
            os << "<text x=\"" << fx(x0 + 4) << "\" y=\"" << fx(top + ph + 30 + 12 * legend++) << "\" fill=\""
               << stroke.at(stage) << "\">" << stage << "</text>\n";
        }
        os << "<text x=\"" << fx(x0 + pw) << "\" y=\"" << fx(top + ph + 14) << "\" text-anchor=\"end\">agents "
           << fx(kmin) << " .. " << fx(kmax) << "; objective " << fx(lo) << " .. " << fx(hi) << "</text>\n";
        x0 += pw + gap;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace boomfleet
